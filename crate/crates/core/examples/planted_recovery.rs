// Detect communities on seeded planted-partition graphs and score them
// against the planted truth.
//
// cargo run --release --example planted_recovery -- [overlap_nodes]

use std::time::Instant;

use nectar::metrics;
use nectar::{beta_sweep_default, generate_planted, AlgorithmConfig, PlantedPartitionSpec};

pub fn run_example() -> nectar::Result<()> {
    let overlap: usize = std::env::args()
        .nth(1)
        .filter(|a| !a.starts_with('-'))
        .and_then(|s| s.parse().ok())
        .unwrap_or(0);
    let start = Instant::now();
    println!("seed  objective  beta    iters  conv   communities  nmi     omega   avg_f1");
    for seed in 0..10 {
        let mut spec = PlantedPartitionSpec::disjoint(4, 32, 0.3, 0.02, seed);
        if overlap > 0 {
            spec = spec.with_overlap(overlap, 2);
        }
        let (graph, truth) = generate_planted(&spec)?;
        let report = beta_sweep_default(&graph, &AlgorithmConfig::default().with_seed(seed))?;
        let scores =
            metrics::evaluate(&report.cover.node_sets(), &truth, graph.node_count(), false)?;
        println!(
            "{seed:<5} {:<10} {:<7.3} {:<6} {:<6} {:<12} {:<7.4} {:<7.4} {:.4}",
            report.objective.to_string(),
            report.beta,
            report.iterations,
            report.converged,
            report.cover.len(),
            scores.nmi,
            scores.omega,
            scores.avg_f1
        );
    }
    println!("elapsed {:.2?}", start.elapsed());
    Ok(())
}

#[allow(dead_code)]
fn main() -> nectar::Result<()> {
    run_example()
}
