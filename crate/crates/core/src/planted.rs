//! Seeded planted-partition generator with optional overlapping nodes, for
//! running detection against a known ground truth.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{NectarError, Result};
use crate::graph::{sorted_intersection_count, Graph, NodeSet};

#[derive(Debug, Clone, PartialEq)]
pub struct PlantedPartitionSpec {
    pub communities: usize,
    pub community_size: usize,
    /// Edge probability for pairs sharing a community.
    pub p_in: f64,
    /// Edge probability for all other pairs.
    pub p_out: f64,
    /// Nodes that join extra communities beyond their home block.
    pub overlap_nodes: usize,
    /// Total communities per overlapping node.
    pub memberships_per_overlap_node: usize,
    pub seed: u64,
}

impl PlantedPartitionSpec {
    /// `communities` disjoint blocks of `community_size` nodes.
    pub fn disjoint(
        communities: usize,
        community_size: usize,
        p_in: f64,
        p_out: f64,
        seed: u64,
    ) -> Self {
        Self {
            communities,
            community_size,
            p_in,
            p_out,
            overlap_nodes: 0,
            memberships_per_overlap_node: 1,
            seed,
        }
    }

    pub fn with_overlap(mut self, nodes: usize, memberships: usize) -> Self {
        self.overlap_nodes = nodes;
        self.memberships_per_overlap_node = memberships;
        self
    }

    pub fn node_count(&self) -> usize {
        self.communities * self.community_size
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(NectarError::InvalidConfig(msg));
        if !(0.0..=1.0).contains(&self.p_in) || !(0.0..=1.0).contains(&self.p_out) {
            return fail(format!(
                "probabilities must lie in [0, 1], got p_in={} p_out={}",
                self.p_in, self.p_out
            ));
        }
        if self.p_out > self.p_in {
            return fail(format!(
                "p_out ({}) exceeds p_in ({})",
                self.p_out, self.p_in
            ));
        }
        if self.overlap_nodes > self.node_count() {
            return fail(format!(
                "{} overlap nodes requested but only {} nodes exist",
                self.overlap_nodes,
                self.node_count()
            ));
        }
        if self.overlap_nodes > 0
            && (self.memberships_per_overlap_node < 2
                || self.memberships_per_overlap_node > self.communities)
        {
            return fail(format!(
                "overlapping nodes need between 2 and {} memberships, got {}",
                self.communities, self.memberships_per_overlap_node
            ));
        }
        Ok(())
    }
}

/// Generates the graph and its ground-truth cover.
///
/// Node `v` belongs to block `v / community_size`; overlapping nodes are
/// drawn uniformly and each joins additional distinct blocks. Every pair
/// sharing a community is linked with probability `p_in`, every other pair
/// with `p_out`. Equal inputs give the same graph.
pub fn generate_planted(spec: &PlantedPartitionSpec) -> Result<(Graph, Vec<NodeSet>)> {
    spec.validate()?;
    let n = spec.node_count();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);

    let mut memberships: Vec<Vec<usize>> = (0..n).map(|v| vec![v / spec.community_size]).collect();
    if spec.overlap_nodes > 0 {
        for v in sample(&mut rng, n, spec.overlap_nodes).into_vec() {
            let home = memberships[v][0];
            let extra = sample(
                &mut rng,
                spec.communities - 1,
                spec.memberships_per_overlap_node - 1,
            );
            for c in extra {
                memberships[v].push(if c >= home { c + 1 } else { c });
            }
            memberships[v].sort_unstable();
        }
    }

    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let p = if sorted_intersection_count(&memberships[u], &memberships[v]) > 0 {
                spec.p_in
            } else {
                spec.p_out
            };
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }

    let mut truth = vec![Vec::new(); spec.communities];
    for (v, cs) in memberships.iter().enumerate() {
        for &c in cs {
            truth[c].push(v);
        }
    }
    let truth = truth.into_iter().map(NodeSet::from).collect();
    Ok((Graph::from_edges(n, &edges), truth))
}
