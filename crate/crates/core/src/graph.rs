//! Immutable undirected simple graph with per-node triangle caches.
//!
//! Nodes are dense ids `0..n`. Arbitrary string labels from an edge list are
//! interned in first-appearance order and kept for output.

use std::collections::HashMap;
use std::io::BufRead;

use crate::error::{NectarError, Result};

/// A sorted, duplicate-free set of node ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeSet(Vec<usize>);

impl NodeSet {
    pub fn new() -> Self {
        Self(Vec::new())
    }

    pub fn from_sorted_unchecked(nodes: Vec<usize>) -> Self {
        debug_assert!(nodes.windows(2).all(|w| w[0] < w[1]));
        Self(nodes)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn insert(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }

    pub fn remove(&mut self, v: usize) -> bool {
        match self.0.binary_search(&v) {
            Ok(pos) => {
                self.0.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn intersection_len(&self, other: &NodeSet) -> usize {
        sorted_intersection_count(&self.0, &other.0)
    }

    pub fn union(&self, other: &NodeSet) -> NodeSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        NodeSet(out)
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        NodeSet(v)
    }
}

impl<const N: usize> From<[usize; N]> for NodeSet {
    fn from(nodes: [usize; N]) -> Self {
        nodes.into_iter().collect()
    }
}

impl From<Vec<usize>> for NodeSet {
    fn from(nodes: Vec<usize>) -> Self {
        nodes.into_iter().collect()
    }
}

impl<'a> IntoIterator for &'a NodeSet {
    type Item = &'a usize;
    type IntoIter = std::slice::Iter<'a, usize>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

pub(crate) fn sorted_intersection_count(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Undirected simple graph. Immutable once built.
#[derive(Debug, Clone)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
    labels: Vec<String>,
    label_index: HashMap<String, usize>,
    skipped_self_loops: usize,
    // t(v, V)
    triangles: Vec<usize>,
    // nodes forming at least one triangle with v, sorted
    partners: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph on nodes `0..n` labelled by their decimal id.
    ///
    /// Self-loops are skipped and duplicate edges collapse. Panics if an
    /// endpoint is `>= n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::build(n, edges.iter().copied(), labels)
    }

    fn build(n: usize, edges: impl Iterator<Item = (usize, usize)>, labels: Vec<String>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        let mut skipped_self_loops = 0;
        for (u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) outside 0..{n}");
            if u == v {
                skipped_self_loops += 1;
                continue;
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        let label_index = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), i))
            .collect();

        let mut triangles = vec![0; n];
        let mut partners = vec![Vec::new(); n];
        for v in 0..n {
            let mut closed_pairs = 0;
            for &x in &adjacency[v] {
                let common = sorted_intersection_count(&adjacency[v], &adjacency[x]);
                if common > 0 {
                    partners[v].push(x);
                }
                closed_pairs += common;
            }
            // every triangle (v, x, y) was seen from both x and y
            triangles[v] = closed_pairs / 2;
        }

        Self {
            adjacency,
            edge_count,
            labels,
            label_index,
            skipped_self_loops,
            triangles,
            partners,
        }
    }

    /// Parses a whitespace-separated edge list. Lines that are blank or start
    /// with `#` are ignored.
    pub fn load_edge_list<R: BufRead>(reader: R) -> Result<Self> {
        let mut labels: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut edges = Vec::new();
        let mut intern = |label: &str, labels: &mut Vec<String>| -> usize {
            if let Some(&id) = index.get(label) {
                return id;
            }
            let id = labels.len();
            labels.push(label.to_owned());
            index.insert(label.to_owned(), id);
            id
        };
        for (lineno, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(NectarError::Parse {
                    line: lineno + 1,
                    found: tokens.len(),
                });
            }
            let u = intern(tokens[0], &mut labels);
            let v = intern(tokens[1], &mut labels);
            edges.push((u, v));
        }
        let graph = Self::build(labels.len(), edges.into_iter(), labels);
        if graph.skipped_self_loops > 0 {
            log::warn!("skipped {} self-loop(s)", graph.skipped_self_loops);
        }
        Ok(graph)
    }

    pub fn load_edge_list_str(text: &str) -> Result<Self> {
        Self::load_edge_list(text.as_bytes())
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn nodes(&self) -> std::ops::Range<usize> {
        0..self.adjacency.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn node_of_label(&self, label: &str) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    pub fn skipped_self_loops(&self) -> usize {
        self.skipped_self_loops
    }

    /// Undirected edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, adj)| adj.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// `t(v, V)`: triangles closed by `v` anywhere in the graph.
    pub fn triangles_of_node(&self, v: usize) -> usize {
        self.triangles[v]
    }

    /// `vt(v, V)`: neighbors of `v` that close at least one triangle with it.
    pub fn triangle_partner_count(&self, v: usize) -> usize {
        self.partners[v].len()
    }

    pub fn triangle_partners(&self, v: usize) -> &[usize] {
        &self.partners[v]
    }

    /// `t(v, S)`: triangles `{v, x, y}` with `x, y` in `S \ {v}`.
    pub fn triangles_of_node_in_set(&self, v: usize, set: &NodeSet) -> usize {
        self.triangles_in(v, |x| set.contains(x))
    }

    /// `vt(v, S)`: members of `S \ {v}` that close at least one triangle with `v`.
    pub fn triangle_partners_in_set(&self, v: usize, set: &NodeSet) -> usize {
        sorted_intersection_count(&self.partners[v], set.as_slice())
    }

    pub(crate) fn triangles_in(&self, v: usize, member: impl Fn(usize) -> bool) -> usize {
        let inside: Vec<usize> = self.adjacency[v]
            .iter()
            .copied()
            .filter(|&x| member(x))
            .collect();
        inside
            .iter()
            .map(|&x| {
                let adj = &self.adjacency[x];
                let start = adj.partition_point(|&y| y <= x);
                sorted_intersection_count(&adj[start..], &inside)
            })
            .sum()
    }

    pub(crate) fn partners_in(&self, v: usize, member: impl Fn(usize) -> bool) -> usize {
        self.partners[v].iter().filter(|&&x| member(x)).count()
    }

    /// Average per-node triangle incidence, `Σ_v t(v, V) / |V|`.
    pub fn triangle_rate(&self) -> Result<f64> {
        if self.node_count() == 0 {
            return Err(NectarError::EmptyGraph);
        }
        let total: usize = self.triangles.iter().sum();
        Ok(total as f64 / self.node_count() as f64)
    }

    /// Local clustering coefficient; 0 for nodes of degree below 2.
    pub fn clustering_coefficient(&self, v: usize) -> f64 {
        let k = self.degree(v);
        if k < 2 {
            return 0.0;
        }
        let pairs = (k * (k - 1) / 2) as f64;
        self.triangles[v] as f64 / pairs
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Graph;

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Graph::from_edges(leaves + 1, &edges)
    }

    /// K4 on {0,1,2,3} with edge (2,3) removed.
    pub fn k4_minus_edge() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    }

    /// Two triangles {0,1,2} and {0,3,4} sharing node 0.
    pub fn bowtie() -> Graph {
        Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])
    }
}
