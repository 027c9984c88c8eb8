// How the relative-gain threshold β trades overlap for objective value.
//
// cargo run --release --example beta_sweep

use nectar::{
    default_beta_grid, generate_planted, sweep_reports, AlgorithmConfig, ObjectiveKind,
    PlantedPartitionSpec,
};

pub fn run_example() -> nectar::Result<()> {
    let spec = PlantedPartitionSpec::disjoint(3, 12, 0.6, 0.03, 3).with_overlap(4, 2);
    let (graph, _) = generate_planted(&spec)?;

    for kind in [ObjectiveKind::QExt, ObjectiveKind::Wocc] {
        let config = AlgorithmConfig::default().with_objective(kind).with_seed(1);
        println!("{kind}");
        println!("  beta     value    communities  memberships  iters");
        for report in sweep_reports(&graph, &config, &default_beta_grid(kind))? {
            println!(
                "  {:<8.3} {:<8.4} {:<12} {:<12} {}",
                report.beta,
                report.objective_value,
                report.cover.len(),
                report.cover.total_membership(),
                report.iterations
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> nectar::Result<()> {
    run_example()
}
