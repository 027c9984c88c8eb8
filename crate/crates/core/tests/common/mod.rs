//! Brute-force reference implementations and random instance generators
//! shared by the integration tests. Everything here is deliberately naive.

#![allow(dead_code)]

use std::collections::BTreeSet;

use nectar::{Graph, NodeSet};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn adjacency_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut a = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// Erdős–Rényi graph with edge probability `p`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Random graph guaranteed to have at least one edge.
pub fn random_graph_with_edges(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    loop {
        let g = random_graph(rng, n, p);
        if g.edge_count() > 0 {
            return g;
        }
    }
}

pub fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    Graph::from_edges(n, &edges)
}

pub fn complete(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

/// Random partition of `nodes` into at most `max_blocks` non-empty blocks.
pub fn random_partition(rng: &mut ChaCha8Rng, nodes: &[usize], max_blocks: usize) -> Vec<NodeSet> {
    let blocks = rng.gen_range(1..=max_blocks.max(1));
    let mut sets = vec![Vec::new(); blocks];
    for &v in nodes {
        sets[rng.gen_range(0..blocks)].push(v);
    }
    sets.into_iter()
        .filter(|s| !s.is_empty())
        .map(NodeSet::from)
        .collect()
}

/// Random cover of `0..n`: up to `max_sets` non-empty, possibly overlapping
/// subsets that need not cover every node.
pub fn random_cover(rng: &mut ChaCha8Rng, n: usize, max_sets: usize) -> Vec<NodeSet> {
    let count = rng.gen_range(1..=max_sets);
    (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=n);
            let mut nodes: Vec<usize> = (0..n).collect();
            nodes.shuffle(rng);
            nodes.truncate(size);
            NodeSet::from(nodes)
        })
        .collect()
}

/// Every set partition of `nodes`, via restricted growth strings.
pub fn all_partitions(nodes: &[usize]) -> Vec<Vec<NodeSet>> {
    let n = nodes.len();
    let mut out = Vec::new();
    let mut rgs = vec![0usize; n];
    loop {
        let blocks = rgs.iter().max().map_or(0, |m| m + 1);
        let mut sets = vec![Vec::new(); blocks];
        for (i, &b) in rgs.iter().enumerate() {
            sets[b].push(nodes[i]);
        }
        out.push(sets.into_iter().map(NodeSet::from).collect());

        // next restricted growth string
        let mut i = n;
        loop {
            if i <= 1 {
                return out;
            }
            i -= 1;
            let prefix_max = rgs[..i].iter().max().copied().unwrap_or(0);
            if rgs[i] <= prefix_max {
                rgs[i] += 1;
                for r in rgs.iter_mut().skip(i + 1) {
                    *r = 0;
                }
                break;
            }
        }
    }
}

/// Triangles through `v`, by scanning every pair of other nodes.
pub fn brute_triangles(a: &[Vec<bool>], v: usize) -> usize {
    let n = a.len();
    let mut count = 0;
    for x in 0..n {
        for y in x + 1..n {
            if x != v && y != v && a[v][x] && a[v][y] && a[x][y] {
                count += 1;
            }
        }
    }
    count
}

/// Distinct nodes sharing at least one triangle with `v`.
pub fn brute_partners(a: &[Vec<bool>], v: usize) -> usize {
    let n = a.len();
    (0..n)
        .filter(|&x| x != v && a[v][x] && (0..n).any(|y| y != v && y != x && a[v][y] && a[x][y]))
        .count()
}

/// Newman modularity of a partition as `Σ_c (l_c/m − (d_c/2m)²)`.
pub fn newman_modularity(g: &Graph, partition: &[NodeSet]) -> f64 {
    let m = g.edge_count() as f64;
    partition
        .iter()
        .map(|set| {
            let internal = g
                .edges()
                .filter(|&(u, v)| set.contains(u) && set.contains(v))
                .count() as f64;
            let degree: usize = set.iter().map(|v| g.degree(v)).sum();
            internal / m - (degree as f64 / (2.0 * m)).powi(2)
        })
        .sum()
}

fn shared(cover: &[NodeSet], u: usize, v: usize) -> usize {
    cover
        .iter()
        .filter(|s| s.contains(u) && s.contains(v))
        .count()
}

/// Omega index from an explicit walk over every node pair.
pub fn omega_oracle(a: &[NodeSet], b: &[NodeSet], n: usize) -> f64 {
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((shared(a, u, v), shared(b, u, v)));
        }
    }
    let total = pairs.len() as f64;
    let observed = pairs.iter().filter(|(x, y)| x == y).count() as f64 / total;
    let max = pairs.iter().map(|&(x, y)| x.max(y)).max().unwrap_or(0);
    let expected: f64 = (0..=max)
        .map(|k| {
            let na = pairs.iter().filter(|p| p.0 == k).count() as f64;
            let nb = pairs.iter().filter(|p| p.1 == k).count() as f64;
            na * nb
        })
        .sum::<f64>()
        / (total * total);
    if expected == 1.0 {
        return if observed == 1.0 { 1.0 } else { f64::NAN };
    }
    (observed - expected) / (1.0 - expected)
}

pub fn f1_oracle(a: &NodeSet, b: &NodeSet) -> f64 {
    let sa: BTreeSet<usize> = a.iter().collect();
    let sb: BTreeSet<usize> = b.iter().collect();
    let inter = sa.intersection(&sb).count() as f64;
    if inter == 0.0 {
        return 0.0;
    }
    let precision = inter / sa.len() as f64;
    let recall = inter / sb.len() as f64;
    2.0 * precision * recall / (precision + recall)
}

/// Average F1 from the full F1 matrix.
pub fn avg_f1_oracle(a: &[NodeSet], b: &[NodeSet]) -> f64 {
    let matrix: Vec<Vec<f64>> = a
        .iter()
        .map(|x| b.iter().map(|y| f1_oracle(x, y)).collect())
        .collect();
    let best_a: f64 = matrix
        .iter()
        .map(|row| row.iter().cloned().fold(0.0, f64::max))
        .sum::<f64>()
        / a.len() as f64;
    let best_b: f64 = (0..b.len())
        .map(|j| matrix.iter().map(|row| row[j]).fold(0.0, f64::max))
        .sum::<f64>()
        / b.len() as f64;
    (best_a + best_b) / 2.0
}
