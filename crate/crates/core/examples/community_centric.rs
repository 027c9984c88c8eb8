// Node-centric against community-centric search on the same graphs.
//
// cargo run --release --example community_centric

use nectar::{
    beta_sweep_default, generate_planted, AlgorithmConfig, PlantedPartitionSpec, SearchMode,
};

pub fn run_example() -> nectar::Result<()> {
    println!("seed  objective  node     community");
    for seed in 0..3 {
        let spec = PlantedPartitionSpec::disjoint(3, 16, 0.4, 0.03, seed);
        let (graph, _) = generate_planted(&spec)?;
        let config = AlgorithmConfig::default().with_seed(seed);
        let node = beta_sweep_default(&graph, &config)?;
        let community =
            beta_sweep_default(&graph, &config.with_mode(SearchMode::CommunityCentric))?;
        println!(
            "{seed:<5} {:<10} {:<8.4} {:.4}",
            node.objective.to_string(),
            node.objective_value,
            community.objective_value
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> nectar::Result<()> {
    run_example()
}
