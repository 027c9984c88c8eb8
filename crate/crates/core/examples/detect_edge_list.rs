// Load an edge list and detect overlapping communities.
//
// cargo run --example detect_edge_list -- [edges.txt]

use nectar::{beta_sweep_default, AlgorithmConfig, Graph};

// Cliques {a,b,c,d} and {e,f,g,h}, with h also tied to c and d.
const SAMPLE: &str = "\
a b
a c
a d
b c
b d
c d
d h
c h
e f
e g
f g
e h
f h
g h
";

pub fn run_example() -> nectar::Result<()> {
    let graph = match std::env::args().nth(1).filter(|a| !a.starts_with('-')) {
        Some(path) => Graph::load_edge_list(std::io::BufReader::new(std::fs::File::open(path)?))?,
        None => Graph::load_edge_list_str(SAMPLE)?,
    };
    println!(
        "{} nodes, {} edges, triangle rate {:.2}",
        graph.node_count(),
        graph.edge_count(),
        graph.triangle_rate()?
    );

    let report = beta_sweep_default(&graph, &AlgorithmConfig::default().with_seed(7))?;
    println!(
        "objective {} at beta {:.3}: value {:.4} after {} iterations (converged: {})",
        report.objective, report.beta, report.objective_value, report.iterations, report.converged
    );
    for (id, members) in report.cover.communities() {
        let labels: Vec<&str> = members.iter().map(|v| graph.label(v)).collect();
        println!("{id}: {}", labels.join(" "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> nectar::Result<()> {
    run_example()
}
