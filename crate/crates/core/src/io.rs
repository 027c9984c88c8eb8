//! Text formats: cover files, edge lists and evaluation records.
//!
//! A cover file holds one community per line as whitespace-separated node
//! labels. Blank lines and lines starting with `#` are ignored.

use std::collections::HashMap;
use std::io::{BufRead, Write};

use crate::error::Result;
use crate::graph::{Graph, NodeSet};
use crate::metrics::EvaluationReport;

/// Interns string labels to dense ids in first-appearance order.
#[derive(Debug, Clone, Default)]
pub struct LabelMap {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl LabelMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Starts from a graph's labels so cover ids line up with node ids.
    pub fn from_graph(graph: &Graph) -> Self {
        let mut map = Self::new();
        for label in graph.labels() {
            map.intern(label);
        }
        map
    }

    pub fn intern(&mut self, label: &str) -> usize {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        id
    }

    pub fn get(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

/// Reads a cover file, interning unseen labels into `labels`.
pub fn read_cover<R: BufRead>(reader: R, labels: &mut LabelMap) -> Result<Vec<NodeSet>> {
    let mut cover = Vec::new();
    for line in reader.lines() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let set: NodeSet = trimmed
            .split_whitespace()
            .map(|l| labels.intern(l))
            .collect();
        cover.push(set);
    }
    Ok(cover)
}

/// Writes one community per line, members in ascending id order.
pub fn write_cover<'a, W, I>(mut writer: W, communities: I, labels: &[String]) -> Result<()>
where
    W: Write,
    I: IntoIterator<Item = &'a NodeSet>,
{
    for set in communities {
        let line: Vec<&str> = set.iter().map(|v| labels[v].as_str()).collect();
        writeln!(writer, "{}", line.join(" "))?;
    }
    writer.flush()?;
    Ok(())
}

/// Writes each undirected edge once, using the graph's labels.
pub fn write_edge_list<W: Write>(mut writer: W, graph: &Graph) -> Result<()> {
    for (u, v) in graph.edges() {
        writeln!(writer, "{} {}", graph.label(u), graph.label(v))?;
    }
    writer.flush()?;
    Ok(())
}

/// Human-readable `key=value` block.
pub fn format_scores(report: &EvaluationReport) -> String {
    let mut out = format!(
        "nmi={}\nomega={}\navg_f1={}\n",
        report.nmi, report.omega, report.avg_f1
    );
    if report.matched {
        out.push_str(&format!("matched_size={}\n", report.matched_cover_size));
    }
    out
}

/// One line-delimited record per metric:
/// `metric=<name> value=<v> detected=<path> truth=<path> matched=<bool>`.
pub fn format_records(report: &EvaluationReport, detected_path: &str, truth_path: &str) -> String {
    let mut metrics = vec![
        ("nmi", report.nmi),
        ("omega", report.omega),
        ("avg_f1", report.avg_f1),
    ];
    if report.matched {
        metrics.push(("matched_size", report.matched_cover_size as f64));
    }
    metrics
        .into_iter()
        .map(|(name, value)| {
            format!(
                "metric={name} value={value} detected={detected_path} truth={truth_path} matched={}\n",
                report.matched
            )
        })
        .collect()
}

/// Parses records written by [`format_records`] into `(field, value)` lists.
pub fn parse_records(text: &str) -> Vec<Vec<(String, String)>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            line.split_whitespace()
                .filter_map(|kv| kv.split_once('='))
                .map(|(k, v)| (k.to_owned(), v.to_owned()))
                .collect()
        })
        .collect()
}
