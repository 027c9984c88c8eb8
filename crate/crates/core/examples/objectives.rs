// Score covers with both objectives and rank moves with the incremental
// gains.
//
// cargo run --example objectives

use nectar::objectives::{
    delta_q_ext, delta_wocc, q_ext, select_objective, wcc_node, wocc_cover, DEFAULT_TR_RATE,
};
use nectar::{Cover, Graph, NodeSet};

pub fn run_example() -> nectar::Result<()> {
    // bowtie: triangles {0,1,2} and {0,3,4} share node 0
    let graph = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)]);
    println!(
        "triangle rate {:.2}, selected objective {}",
        graph.triangle_rate()?,
        select_objective(&graph, DEFAULT_TR_RATE)?
    );

    let split = Cover::from_sets(5, [NodeSet::from([0, 1, 2]), NodeSet::from([3, 4])])?;
    let shared = Cover::from_sets(5, [NodeSet::from([0, 1, 2]), NodeSet::from([0, 3, 4])])?;
    for (name, cover) in [("split", &split), ("shared", &shared)] {
        println!(
            "{name:>6}: q_ext {:.4}  wocc {:.4}",
            q_ext(&graph, cover)?,
            wocc_cover(&graph, cover)
        );
    }
    println!(
        "wcc(0, {{0,1,2}}) = {:.4}",
        wcc_node(&graph, 0, &NodeSet::from([0, 1, 2]))
    );

    // where should node 0 go once detached?
    let mut detached = split.clone();
    detached.remove_node_from_all(0);
    for id in detached.ids() {
        println!(
            "node 0 -> {id}: dq_ext {:+.4}  dwocc {:+.4}",
            delta_q_ext(&graph, &detached, 0, id)?,
            delta_wocc(&graph, &detached, 0, id)?
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> nectar::Result<()> {
    run_example()
}
