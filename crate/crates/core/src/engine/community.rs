//! Community-centric variant: iterate over communities and pull in the
//! neighboring nodes that help most, then evict members whose bond weakened.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{beta_selection, finish, gain, initialize_cover, AlgorithmConfig, RunReport};
use crate::cover::{CommunityId, Cover};
use crate::error::Result;
use crate::graph::{Graph, NodeSet};
use crate::objectives::ObjectiveKind;

/// Same outer loop as [`super::run`] (stability count, merge, `max_iter`),
/// but each internal iteration visits communities in a shuffled order.
///
/// A node is stable when its membership set survived the internal
/// iteration unchanged. Under extended modularity a candidate's gain is
/// additionally divided by the number of communities it already belongs to.
pub fn run_community_centric(graph: &Graph, config: &AlgorithmConfig) -> Result<RunReport> {
    config.validate()?;
    let kind = config.resolve_objective(graph)?;
    let mut cover = initialize_cover(graph, kind);
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let n = graph.node_count();
    let two_m = 2.0 * graph.edge_count() as f64;

    let mut iterations = 0;
    let mut converged = false;
    while iterations < config.max_iter {
        let before: Vec<BTreeSet<CommunityId>> = graph
            .nodes()
            .map(|v| cover.memberships(v).clone())
            .collect();
        let mut ids = cover.ids();
        ids.shuffle(&mut rng);
        for id in ids {
            if cover.community(id).is_some() {
                grow_community(graph, &mut cover, id, kind, config.beta, two_m);
            }
        }
        let mut stable = graph
            .nodes()
            .filter(|&v| *cover.memberships(v) == before[v])
            .count();
        if cover.merge_overlapping(config.alpha) {
            stable = 0;
        }
        iterations += 1;
        if stable == n {
            converged = true;
            break;
        }
    }

    Ok(finish(graph, cover, kind, iterations, converged, config))
}

/// Gain of `v` joining `set`, with the extended-modularity term scaled by
/// `1 / O_v` where `O_v` counts `v`'s memberships outside `set`.
fn candidate_gain(
    graph: &Graph,
    cover: &Cover,
    kind: ObjectiveKind,
    v: usize,
    set: &NodeSet,
    outside_memberships: usize,
    two_m: f64,
) -> f64 {
    let g = gain(graph, cover, kind, v, set, two_m);
    match kind {
        ObjectiveKind::QExt => g / outside_memberships.max(1) as f64,
        ObjectiveKind::Wocc => g,
    }
}

fn grow_community(
    graph: &Graph,
    cover: &mut Cover,
    id: CommunityId,
    kind: ObjectiveKind,
    beta: f64,
    two_m: f64,
) {
    let set = cover
        .community(id)
        .expect("visited community exists")
        .clone();

    let candidates: BTreeSet<usize> = set
        .iter()
        .flat_map(|u| graph.neighbors(u).iter().copied())
        .filter(|&x| !set.contains(x))
        .collect();
    let gains: Vec<(usize, f64)> = candidates
        .into_iter()
        .map(|x| {
            let outside = cover.membership_count(x);
            (
                x,
                candidate_gain(graph, cover, kind, x, &set, outside, two_m),
            )
        })
        .collect();
    let as_ids: Vec<(CommunityId, f64)> = gains.iter().map(|&(x, g)| (CommunityId(x), g)).collect();
    for CommunityId(x) in beta_selection(&as_ids, beta) {
        cover.add_node(x, id);
    }

    clean_up(graph, cover, id, kind, two_m);
}

/// One eviction pass: every member's detach-and-rejoin gain is evaluated on
/// the current community, then members with non-positive gain leave. A node
/// left without communities becomes a singleton.
fn clean_up(graph: &Graph, cover: &mut Cover, id: CommunityId, kind: ObjectiveKind, two_m: f64) {
    let set = cover.community(id).expect("community exists").clone();
    if set.len() <= 1 {
        return;
    }
    let evicted: Vec<usize> = set
        .iter()
        .filter(|&u| {
            let mut rest = set.clone();
            rest.remove(u);
            let outside = cover.membership_count(u) - 1;
            candidate_gain(graph, cover, kind, u, &rest, outside, two_m) <= 0.0
        })
        .collect();
    for u in evicted {
        cover.remove_node(u, id);
        if cover.membership_count(u) == 0 {
            cover.add_community(NodeSet::from([u]));
        }
    }
}
