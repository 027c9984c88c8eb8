//! Extended modularity and the triangle-based WOCC objective, with the
//! per-node gain forms used by the local search.

use std::fmt;
use std::str::FromStr;

use crate::cover::{CommunityId, Cover};
use crate::error::{NectarError, Result};
use crate::graph::{Graph, NodeSet};

/// Default triangle-rate threshold above which WOCC is used.
pub const DEFAULT_TR_RATE: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ObjectiveKind {
    /// Extended (overlapping) modularity.
    QExt,
    /// Weighted overlapping community clustering.
    Wocc,
}

impl fmt::Display for ObjectiveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObjectiveKind::QExt => "qext",
            ObjectiveKind::Wocc => "wocc",
        })
    }
}

impl FromStr for ObjectiveKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "qext" => Ok(ObjectiveKind::QExt),
            "wocc" => Ok(ObjectiveKind::Wocc),
            other => Err(format!("unknown objective '{other}'")),
        }
    }
}

/// WOCC when the graph's triangle rate reaches `tr_rate`, extended modularity
/// otherwise.
pub fn select_objective(graph: &Graph, tr_rate: f64) -> Result<ObjectiveKind> {
    if graph.triangle_rate()? >= tr_rate {
        Ok(ObjectiveKind::Wocc)
    } else {
        Ok(ObjectiveKind::QExt)
    }
}

/// Whole-cover value of the given objective.
pub fn evaluate(kind: ObjectiveKind, graph: &Graph, cover: &Cover) -> Result<f64> {
    match kind {
        ObjectiveKind::QExt => q_ext(graph, cover),
        ObjectiveKind::Wocc => Ok(wocc_cover(graph, cover)),
    }
}

fn two_m(graph: &Graph) -> Result<f64> {
    match graph.edge_count() {
        0 => Err(NectarError::NoEdges),
        m => Ok(2.0 * m as f64),
    }
}

/// Extended modularity of a cover.
///
/// Pairs are ordered and include `i == j`, so a partition scores exactly its
/// Newman modularity. Nodes outside every community count as singletons.
pub fn q_ext(graph: &Graph, cover: &Cover) -> Result<f64> {
    let two_m = two_m(graph)?;
    let inv_o: Vec<f64> = graph
        .nodes()
        .map(|v| 1.0 / cover.membership_count(v).max(1) as f64)
        .collect();

    let mut total = 0.0;
    for (_, set) in cover.communities() {
        let mut internal = 0.0;
        let mut strength = 0.0;
        for i in set.iter() {
            strength += graph.degree(i) as f64 * inv_o[i];
            for &j in graph.neighbors(i) {
                if set.contains(j) {
                    internal += inv_o[i] * inv_o[j];
                }
            }
        }
        total += internal - strength * strength / two_m;
    }
    for v in graph.nodes().filter(|&v| cover.membership_count(v) == 0) {
        let k = graph.degree(v) as f64;
        total -= k * k / two_m;
    }
    Ok(total / two_m)
}

/// Gain of adding detached node `v` to community `id`:
/// `Σ_{i∈C} [A_iv − k_i k_v / 2|E|] / O_i`.
pub fn delta_q_ext(graph: &Graph, cover: &Cover, v: usize, id: CommunityId) -> Result<f64> {
    if cover.membership_count(v) > 0 {
        return Err(NectarError::NodeAttached(v));
    }
    let set = community(cover, id)?;
    let two_m = two_m(graph)?;
    Ok(q_ext_gain(graph, cover, v, set, two_m))
}

pub(crate) fn q_ext_gain(graph: &Graph, cover: &Cover, v: usize, set: &NodeSet, two_m: f64) -> f64 {
    let k_v = graph.degree(v) as f64;
    let mut linked = 0.0;
    let mut expected = 0.0;
    for i in set.iter().filter(|&i| i != v) {
        let inv_o = 1.0 / cover.membership_count(i).max(1) as f64;
        if graph.has_edge(i, v) {
            linked += inv_o;
        }
        expected += graph.degree(i) as f64 * inv_o;
    }
    linked - k_v * expected / two_m
}

fn community(cover: &Cover, id: CommunityId) -> Result<&NodeSet> {
    match cover.community(id) {
        Some(set) if !set.is_empty() => Ok(set),
        _ => Err(NectarError::EmptyCommunity),
    }
}

/// `WCC(v, S)`; zero when `v` closes no triangle at all.
pub fn wcc_node(graph: &Graph, v: usize, set: &NodeSet) -> f64 {
    let others = set.len() - usize::from(set.contains(v));
    wcc_from_counts(
        graph,
        v,
        graph.triangles_of_node_in_set(v, set),
        graph.triangle_partners_in_set(v, set),
        others,
    )
}

/// `t_in` and `vt_in` are `t(v, S)` and `vt(v, S)`, `others` is `|S \ {v}|`.
fn wcc_from_counts(graph: &Graph, v: usize, t_in: usize, vt_in: usize, others: usize) -> f64 {
    let t_all = graph.triangles_of_node(v);
    if t_all == 0 {
        return 0.0;
    }
    let vt_all = graph.triangle_partner_count(v);
    let vt_out = vt_all - vt_in;
    (t_in as f64 / t_all as f64) * (vt_all as f64 / (others + vt_out) as f64)
}

/// Mean member score `WCC(S)`.
pub fn wcc_community(graph: &Graph, set: &NodeSet) -> Result<f64> {
    if set.is_empty() {
        return Err(NectarError::EmptyCommunity);
    }
    Ok(cohesion_sum(graph, set) / set.len() as f64)
}

/// `|S|·WCC(S)`, the unnormalized contribution of one community.
pub(crate) fn cohesion_sum(graph: &Graph, set: &NodeSet) -> f64 {
    set.iter().map(|v| wcc_node(graph, v, set)).sum()
}

/// WOCC of a cover: `Σ_C |C|·WCC(C) / Σ_C |C|`. An empty cover scores 0.
pub fn wocc_cover(graph: &Graph, cover: &Cover) -> f64 {
    let total = cover.total_membership();
    if total == 0 {
        return 0.0;
    }
    let sum: f64 = cover
        .communities()
        .map(|(_, set)| cohesion_sum(graph, set))
        .sum();
    sum / total as f64
}

/// Gain of adding detached node `v` to community `id` under WOCC: the change
/// in that community's unnormalized contribution, `U(C ∪ {v}) − U(C)`.
pub fn delta_wocc(graph: &Graph, cover: &Cover, v: usize, id: CommunityId) -> Result<f64> {
    if cover.membership_count(v) > 0 {
        return Err(NectarError::NodeAttached(v));
    }
    let set = community(cover, id)?;
    Ok(wocc_gain(graph, set, v))
}

/// `U(S ∪ {v}) − U(S)` for `v ∉ S`, computed incrementally: joining `v`
/// only shifts each member's triangle count, partner count and `|S \ {u}|`.
pub(crate) fn wocc_gain(graph: &Graph, set: &NodeSet, v: usize) -> f64 {
    debug_assert!(!set.contains(v));
    let size = set.len();
    let member = |x: usize| set.contains(x);

    // neighbors of v inside S; only these can gain triangles through v
    let linked: Vec<usize> = graph
        .neighbors(v)
        .iter()
        .copied()
        .filter(|&x| member(x))
        .collect();
    let v_partners = graph.triangle_partners(v);

    let mut gain = 0.0;
    let mut t_v = 0;
    for u in set.iter() {
        let t_in = graph.triangles_in(u, member);
        let vt_in = graph.partners_in(u, member);
        let before = wcc_from_counts(graph, u, t_in, vt_in, size - 1);

        let (extra_t, extra_vt) = if linked.binary_search(&u).is_ok() {
            let shared = crate::graph::sorted_intersection_count(graph.neighbors(u), &linked);
            t_v += shared;
            (shared, usize::from(v_partners.binary_search(&u).is_ok()))
        } else {
            (0, 0)
        };
        let after = wcc_from_counts(graph, u, t_in + extra_t, vt_in + extra_vt, size);
        gain += after - before;
    }
    // each triangle (v, x, y) inside S was counted from both x and y
    let t_v = t_v / 2;
    let vt_v = graph.partners_in(v, member);
    gain + wcc_from_counts(graph, v, t_v, vt_v, size)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;
    use approx::assert_abs_diff_eq;

    fn two_triangles() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    }

    #[test]
    fn selection_by_triangle_rate() {
        assert_eq!(
            select_objective(&path(7), 5.0).unwrap(),
            ObjectiveKind::QExt
        );
        assert_eq!(
            select_objective(&complete(10), 5.0).unwrap(),
            ObjectiveKind::Wocc
        );
        // K4 has rate exactly 3
        assert_eq!(
            select_objective(&complete(4), 3.0).unwrap(),
            ObjectiveKind::Wocc
        );
        assert_eq!(
            select_objective(&complete(4), 3.0001).unwrap(),
            ObjectiveKind::QExt
        );
        assert!(select_objective(&Graph::from_edges(0, &[]), 5.0).is_err());
    }

    #[test]
    fn q_ext_two_cliques() {
        let g = two_triangles();
        let cover = Cover::from_sets(6, [vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert_abs_diff_eq!(q_ext(&g, &cover).unwrap(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn q_ext_single_community_is_zero() {
        for g in [two_triangles(), complete(5), path(6), k4_minus_edge()] {
            let cover = Cover::from_sets(g.node_count(), [g.nodes().collect::<Vec<_>>()]).unwrap();
            assert_abs_diff_eq!(q_ext(&g, &cover).unwrap(), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn q_ext_requires_edges() {
        let g = Graph::from_edges(3, &[]);
        assert!(matches!(
            q_ext(&g, &Cover::singletons(3)),
            Err(NectarError::NoEdges)
        ));
    }

    #[test]
    fn q_ext_with_shared_node() {
        // direct summation over C×C with O_0 = 2
        let g = two_triangles();
        let cover = Cover::from_sets(6, [vec![0, 1, 2], vec![0, 3, 4, 5]]).unwrap();
        let two_m = 12.0;
        let o = |i: usize| if i == 0 { 2.0 } else { 1.0 };
        let mut expected = 0.0;
        for set in [vec![0, 1, 2], vec![0, 3, 4, 5]] {
            for &i in &set {
                for &j in &set {
                    let a = if g.has_edge(i, j) { 1.0 } else { 0.0 };
                    let kk = (g.degree(i) * g.degree(j)) as f64;
                    expected += (a - kk / two_m) / (o(i) * o(j));
                }
            }
        }
        expected /= two_m;
        assert_abs_diff_eq!(q_ext(&g, &cover).unwrap(), expected, epsilon = 1e-14);
    }

    #[test]
    fn delta_q_ext_on_path() {
        let g = path(3);
        let cover = Cover::from_sets(3, [vec![1, 2]]).unwrap();
        let gain = delta_q_ext(&g, &cover, 0, CommunityId(0)).unwrap();
        assert_abs_diff_eq!(gain, 0.25, epsilon = 1e-15);
    }

    #[test]
    fn delta_q_ext_without_links_is_negative() {
        let g = Graph::from_edges(5, &[(0, 1), (2, 3), (3, 4), (2, 4)]);
        let cover = Cover::from_sets(5, [vec![2, 3, 4], vec![1]]).unwrap();
        let gain = delta_q_ext(&g, &cover, 0, CommunityId(0)).unwrap();
        // k_0 = 1, each member has degree 2, 2m = 8
        let expected = -(2.0 + 2.0 + 2.0) / 8.0;
        assert_abs_diff_eq!(gain, expected, epsilon = 1e-15);
    }

    #[test]
    fn delta_q_ext_halves_when_memberships_double() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (1, 4)]);
        let single = Cover::from_sets(5, [vec![1, 2], vec![3, 4]]).unwrap();
        let doubled = Cover::from_sets(5, [vec![1, 2], vec![1, 2]]).unwrap();
        let a = delta_q_ext(&g, &single, 0, CommunityId(0)).unwrap();
        let b = delta_q_ext(&g, &doubled, 0, CommunityId(0)).unwrap();
        assert_abs_diff_eq!(b, a / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn delta_requires_detached_node() {
        let g = complete(3);
        let cover = Cover::from_sets(3, [vec![0, 1], vec![2]]).unwrap();
        assert!(matches!(
            delta_q_ext(&g, &cover, 0, CommunityId(1)),
            Err(NectarError::NodeAttached(0))
        ));
        assert!(matches!(
            delta_wocc(&g, &cover, 2, CommunityId(0)),
            Err(NectarError::NodeAttached(2))
        ));
        let mut cover = cover;
        cover.remove_node_from_all(2);
        assert!(matches!(
            delta_wocc(&g, &cover, 2, CommunityId(1)),
            Err(NectarError::EmptyCommunity)
        ));
    }

    #[test]
    fn wcc_node_cases() {
        let tree = path(5);
        assert_eq!(wcc_node(&tree, 2, &[1, 2, 3].into()), 0.0);
        let k3 = complete(3);
        assert_abs_diff_eq!(wcc_node(&k3, 0, &[0, 1, 2].into()), 1.0);
        let bow = bowtie();
        assert_abs_diff_eq!(wcc_node(&bow, 0, &[0, 1, 2].into()), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn wcc_community_cases() {
        assert_abs_diff_eq!(wcc_community(&complete(3), &[0, 1, 2].into()).unwrap(), 1.0);
        assert_eq!(wcc_community(&path(3), &[1].into()).unwrap(), 0.0);
        assert_abs_diff_eq!(
            wcc_community(&complete(4), &[0, 1, 2, 3].into()).unwrap(),
            1.0
        );
        assert!(wcc_community(&complete(3), &NodeSet::new()).is_err());
    }

    #[test]
    fn wocc_cover_cases() {
        let g = two_triangles();
        let cover = Cover::from_sets(6, [vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert_abs_diff_eq!(wocc_cover(&g, &cover), 1.0);
        assert_eq!(wocc_cover(&g, &Cover::singletons(6)), 0.0);
        assert_eq!(wocc_cover(&g, &Cover::new(6)), 0.0);
    }

    #[test]
    fn delta_wocc_joins_triangle() {
        let g = complete(3);
        let cover = Cover::from_sets(3, [vec![1, 2]]).unwrap();
        assert_abs_diff_eq!(
            delta_wocc(&g, &cover, 0, CommunityId(0)).unwrap(),
            3.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn delta_wocc_triangle_free_is_zero() {
        let g = star(4);
        let cover = Cover::from_sets(5, [vec![1, 2, 3]]).unwrap();
        assert_eq!(delta_wocc(&g, &cover, 0, CommunityId(0)).unwrap(), 0.0);
    }

    #[test]
    fn objective_names_parse() {
        assert_eq!(
            "qext".parse::<ObjectiveKind>().unwrap(),
            ObjectiveKind::QExt
        );
        assert_eq!(
            "WOCC".parse::<ObjectiveKind>().unwrap(),
            ObjectiveKind::Wocc
        );
        assert!("louvain".parse::<ObjectiveKind>().is_err());
        assert_eq!(ObjectiveKind::Wocc.to_string(), "wocc");
    }
}
