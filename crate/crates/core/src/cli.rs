//! Command-line front end shared by the `nectar` binary and the tests.
//!
//! Exit codes: 0 on success, 2 when an input or output file cannot be read,
//! parsed or written, 64 for invalid flags.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::engine::{
    self, AlgorithmConfig, ObjectiveChoice, SearchMode, DEFAULT_ALPHA, DEFAULT_MAX_ITER,
};
use crate::error::NectarError;
use crate::graph::Graph;
use crate::io::{self as formats, LabelMap};
use crate::metrics;
use crate::objectives::DEFAULT_TR_RATE;
use crate::planted::{generate_planted, PlantedPartitionSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "nectar", version, about = "Overlapping community detection")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Detect communities in an edge list and write a cover file.
    Detect(DetectArgs),
    /// Score a detected cover against a ground-truth cover.
    Evaluate(EvaluateArgs),
    /// Write a planted-partition edge list and its ground-truth cover.
    Generate(GenerateArgs),
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
    /// Single β value; without it (or with --beta-sweep) the default grid
    /// for the selected objective is swept.
    #[arg(long, conflicts_with = "beta_sweep")]
    pub beta: Option<f64>,
    #[arg(long)]
    pub beta_sweep: bool,
    #[arg(long, default_value_t = DEFAULT_ALPHA)]
    pub alpha: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_ITER)]
    pub max_iter: usize,
    #[arg(long, default_value_t = DEFAULT_TR_RATE)]
    pub tr_rate: f64,
    /// auto, qext or wocc.
    #[arg(long, default_value = "auto")]
    pub objective: ObjectiveChoice,
    /// node or community.
    #[arg(long, default_value = "node")]
    pub mode: SearchMode,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long)]
    pub detected: PathBuf,
    #[arg(long)]
    pub truth: PathBuf,
    /// Reduce the detected cover to the best match of each truth community.
    #[arg(long = "match")]
    pub match_truth: bool,
    /// Universe size; defaults to the number of distinct labels in both files.
    #[arg(long)]
    pub n: Option<usize>,
    /// Also write the structured records to this file.
    #[arg(long)]
    pub records: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, default_value_t = 4)]
    pub communities: usize,
    #[arg(long, default_value_t = 32)]
    pub community_size: usize,
    #[arg(long, default_value_t = 0.3)]
    pub p_in: f64,
    #[arg(long, default_value_t = 0.02)]
    pub p_out: f64,
    #[arg(long, default_value_t = 0)]
    pub overlap_nodes: usize,
    #[arg(long, default_value_t = 2)]
    pub memberships: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub edges: PathBuf,
    #[arg(long)]
    pub truth: PathBuf,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Detect(args) => detect(&args, out),
        Command::Evaluate(args) => evaluate(&args, out),
        Command::Generate(args) => generate(&args, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn io(path: &std::path::Path, e: impl std::fmt::Display) -> Self {
        Self {
            code: EXIT_IO,
            message: format!("{}: {e}", path.display()),
        }
    }
}

impl From<NectarError> for Failure {
    fn from(e: NectarError) -> Self {
        let code = match e {
            NectarError::InvalidConfig(_) => EXIT_USAGE,
            NectarError::Io(_) | NectarError::Parse { .. } => EXIT_IO,
            _ => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn open(path: &std::path::Path) -> Result<BufReader<File>, Failure> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Failure::io(path, e))
}

fn create(path: &std::path::Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::io(path, e))
}

fn detect(args: &DetectArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let config = AlgorithmConfig {
        beta: args.beta.unwrap_or(1.0),
        alpha: args.alpha,
        max_iter: args.max_iter,
        tr_rate: args.tr_rate,
        objective: args.objective,
        mode: args.mode,
        rng_seed: args.seed,
    };
    config.validate()?;

    let graph =
        Graph::load_edge_list(open(&args.input)?).map_err(|e| Failure::io(&args.input, e))?;
    if graph.node_count() == 0 {
        return Err(Failure::io(&args.input, "edge list contains no edges"));
    }
    let report = match args.beta {
        Some(_) => engine::detect(&graph, &config)?,
        None => engine::beta_sweep_default(&graph, &config)?,
    };

    formats::write_cover(
        create(&args.output)?,
        report.cover.node_sets().iter(),
        graph.labels(),
    )
    .map_err(|e| Failure::io(&args.output, e))?;

    let _ = writeln!(out, "objective={}", report.objective);
    let _ = writeln!(out, "mode={}", args.mode);
    let _ = writeln!(out, "beta={}", report.beta);
    let _ = writeln!(out, "iterations={}", report.iterations);
    let _ = writeln!(out, "converged={}", report.converged);
    let _ = writeln!(out, "objective_value={}", report.objective_value);
    let _ = writeln!(out, "communities={}", report.cover.len());
    if graph.skipped_self_loops() > 0 {
        let _ = writeln!(out, "skipped_self_loops={}", graph.skipped_self_loops());
    }
    Ok(())
}

fn evaluate(args: &EvaluateArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let mut labels = LabelMap::new();
    let detected = formats::read_cover(open(&args.detected)?, &mut labels)
        .map_err(|e| Failure::io(&args.detected, e))?;
    let truth = formats::read_cover(open(&args.truth)?, &mut labels)
        .map_err(|e| Failure::io(&args.truth, e))?;
    let detected: Vec<_> = detected.into_iter().filter(|s| !s.is_empty()).collect();
    let truth: Vec<_> = truth.into_iter().filter(|s| !s.is_empty()).collect();
    if detected.is_empty() || truth.is_empty() {
        return Err(Failure::io(
            &args.detected,
            "cover files must contain at least one community",
        ));
    }

    let n = match args.n {
        Some(n) if n < labels.len() => {
            return Err(Failure::usage(format!(
                "--n {n} is smaller than the {} labels present",
                labels.len()
            )));
        }
        Some(n) => n,
        None => labels.len(),
    };
    let report = metrics::evaluate(&detected, &truth, n, args.match_truth)?;

    let records = formats::format_records(
        &report,
        &args.detected.display().to_string(),
        &args.truth.display().to_string(),
    );
    let _ = write!(out, "{}", formats::format_scores(&report));
    let _ = writeln!(out);
    let _ = write!(out, "{records}");
    if let Some(path) = &args.records {
        let mut w = create(path)?;
        w.write_all(records.as_bytes())
            .and_then(|_| w.flush())
            .map_err(|e| Failure::io(path, e))?;
    }
    Ok(())
}

fn generate(args: &GenerateArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let spec = PlantedPartitionSpec {
        communities: args.communities,
        community_size: args.community_size,
        p_in: args.p_in,
        p_out: args.p_out,
        overlap_nodes: args.overlap_nodes,
        memberships_per_overlap_node: if args.overlap_nodes > 0 {
            args.memberships
        } else {
            1
        },
        seed: args.seed,
    };
    let (graph, truth) = generate_planted(&spec)?;
    formats::write_edge_list(create(&args.edges)?, &graph)
        .map_err(|e| Failure::io(&args.edges, e))?;
    formats::write_cover(create(&args.truth)?, truth.iter(), graph.labels())
        .map_err(|e| Failure::io(&args.truth, e))?;
    let _ = writeln!(out, "nodes={}", graph.node_count());
    let _ = writeln!(out, "edges={}", graph.edge_count());
    let _ = writeln!(out, "communities={}", truth.len());
    Ok(())
}
