//! Cover comparison: overlapping NMI, Omega index and average F1, plus the
//! best-F1 matching of detected communities to a ground truth.
//!
//! Covers are plain slices of [`NodeSet`] over a universe of `n` nodes.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{NectarError, Result};
use crate::graph::NodeSet;

/// Scores of one detected cover against a ground truth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvaluationReport {
    pub nmi: f64,
    pub omega: f64,
    pub avg_f1: f64,
    /// Communities in the compared detected cover (`|D|` when matched).
    pub matched_cover_size: usize,
    pub matched: bool,
}

/// Scores `detected` against `truth`, optionally reducing `detected` to its
/// best matches per truth community first.
pub fn evaluate(
    detected: &[NodeSet],
    truth: &[NodeSet],
    n: usize,
    matched: bool,
) -> Result<EvaluationReport> {
    let reduced;
    let compared = if matched {
        reduced = match_ground_truth(detected, truth)?;
        &reduced[..]
    } else {
        detected
    };
    Ok(EvaluationReport {
        nmi: nmi(compared, truth, n)?,
        omega: omega(compared, truth, n)?,
        avg_f1: avg_f1(compared, truth)?,
        matched_cover_size: compared.len(),
        matched,
    })
}

fn check_universe(cover: &[NodeSet], n: usize) -> Result<()> {
    for set in cover {
        if set.is_empty() {
            return Err(NectarError::EmptyCommunity);
        }
        if let Some(&node) = set.as_slice().last().filter(|&&v| v >= n) {
            return Err(NectarError::UniverseMismatch { node, n });
        }
    }
    Ok(())
}

/// For every community of `a`, the nonzero intersection sizes with the
/// communities of `b`.
fn intersections(a: &[NodeSet], b: &[NodeSet]) -> Vec<HashMap<usize, usize>> {
    let mut index: HashMap<usize, Vec<usize>> = HashMap::new();
    for (l, set) in b.iter().enumerate() {
        for v in set.iter() {
            index.entry(v).or_default().push(l);
        }
    }
    a.iter()
        .map(|set| {
            let mut counts = HashMap::new();
            for v in set.iter() {
                for &l in index.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
                    *counts.entry(l).or_insert(0) += 1;
                }
            }
            counts
        })
        .collect()
}

fn h(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * p.log2()
    }
}

fn binary_entropy(size: usize, n: usize) -> f64 {
    h(size as f64 / n as f64) + h((n - size) as f64 / n as f64)
}

/// Mean over communities of `a` of `H(X_k | Y) / H(X_k)`.
fn normalized_conditional_entropy(a: &[NodeSet], b: &[NodeSet], n: usize) -> f64 {
    let nf = n as f64;
    let shared = intersections(a, b);
    let b_entropy: Vec<f64> = b.iter().map(|s| binary_entropy(s.len(), n)).collect();

    let mut total = 0.0;
    for (k, x) in a.iter().enumerate() {
        let h_x = binary_entropy(x.len(), n);
        if h_x == 0.0 {
            // X_k covers the whole universe: explained only by an identical set
            let identical = b.iter().any(|y| y == x);
            total += if identical { 0.0 } else { 1.0 };
            continue;
        }
        let mut best = h_x;
        for (l, y) in b.iter().enumerate() {
            let n11 = shared[k].get(&l).copied().unwrap_or(0);
            let n10 = x.len() - n11;
            let n01 = y.len() - n11;
            let n00 = n - n11 - n10 - n01;
            let (p11, p10, p01, p00) = (
                n11 as f64 / nf,
                n10 as f64 / nf,
                n01 as f64 / nf,
                n00 as f64 / nf,
            );
            // reject matches that look more like the complement
            if h(p11) + h(p00) < h(p01) + h(p10) {
                continue;
            }
            let joint = h(p11) + h(p10) + h(p01) + h(p00);
            let conditional = (joint - b_entropy[l]).max(0.0);
            if conditional < best {
                best = conditional;
            }
        }
        total += best / h_x;
    }
    total / a.len() as f64
}

/// Overlapping normalized mutual information (Lancichinetti–Fortunato–Kertész).
pub fn nmi(a: &[NodeSet], b: &[NodeSet], n: usize) -> Result<f64> {
    check_universe(a, n)?;
    check_universe(b, n)?;
    if a.is_empty() || b.is_empty() {
        return Err(NectarError::EmptyCover);
    }
    let h_ab = normalized_conditional_entropy(a, b, n);
    let h_ba = normalized_conditional_entropy(b, a, n);
    Ok((1.0 - 0.5 * (h_ab + h_ba)).clamp(0.0, 1.0))
}

/// Co-membership counts for every node pair sharing at least one community.
fn pair_counts(cover: &[NodeSet]) -> HashMap<(usize, usize), usize> {
    let mut counts = HashMap::new();
    for set in cover {
        let nodes = set.as_slice();
        for (i, &x) in nodes.iter().enumerate() {
            for &y in &nodes[i + 1..] {
                *counts.entry((x, y)).or_insert(0) += 1;
            }
        }
    }
    counts
}

/// `|t_j|` for `j = 0..`, over `total` unordered pairs.
fn pair_histogram(counts: &HashMap<(usize, usize), usize>, total: u128) -> Vec<u128> {
    let mut hist = vec![0u128; 1];
    for &c in counts.values() {
        if hist.len() <= c {
            hist.resize(c + 1, 0);
        }
        hist[c] += 1;
    }
    hist[0] = total - counts.len() as u128;
    hist
}

/// Omega index: chance-corrected agreement on how many communities each
/// node pair shares.
///
/// When the expected agreement is already 1, returns 1 if the observed
/// agreement is also 1 and an error otherwise.
pub fn omega(a: &[NodeSet], b: &[NodeSet], n: usize) -> Result<f64> {
    check_universe(a, n)?;
    check_universe(b, n)?;
    if n < 2 {
        return Err(NectarError::InvalidConfig(
            "omega needs at least two nodes".into(),
        ));
    }
    let total = (n as u128) * (n as u128 - 1) / 2;
    let ca = pair_counts(a);
    let cb = pair_counts(b);

    let mut agree_nonzero = 0u128;
    let mut union = ca.len() as u128;
    for (pair, &count) in &cb {
        match ca.get(pair) {
            Some(&other) if other == count => agree_nonzero += 1,
            Some(_) => {}
            None => union += 1,
        }
    }
    let agree = agree_nonzero + (total - union);

    let ha = pair_histogram(&ca, total);
    let hb = pair_histogram(&cb, total);
    let expected: u128 = ha.iter().zip(&hb).map(|(x, y)| x * y).sum();
    let total_sq = total * total;

    if expected == total_sq {
        return if agree == total {
            Ok(1.0)
        } else {
            Err(NectarError::DegenerateOmega(agree as f64 / total as f64))
        };
    }
    let numerator = agree as f64 * total as f64 - expected as f64;
    let denominator = total_sq as f64 - expected as f64;
    Ok(numerator / denominator)
}

/// F1 of two node sets: harmonic mean of precision and recall.
pub fn f1(a: &NodeSet, b: &NodeSet) -> f64 {
    f1_from_counts(a.intersection_len(b), a.len(), b.len())
}

fn f1_from_counts(shared: usize, a: usize, b: usize) -> f64 {
    f1_from_sizes(shared, a + b)
}

// 2|A∩B| / (|A| + |B|)
fn f1_from_sizes(shared: usize, sizes: usize) -> f64 {
    if shared == 0 {
        return 0.0;
    }
    (2 * shared) as f64 / sizes as f64
}

/// For each community of `a`: the best-F1 community in `b` (lowest index on
/// ties) as `(index, |A∩B|, |A|+|B|)`.
fn best_match_counts(a: &[NodeSet], b: &[NodeSet]) -> Vec<(usize, usize, usize)> {
    let shared = intersections(a, b);
    a.iter()
        .zip(&shared)
        .map(|(x, counts)| {
            let size = |l: usize| x.len() + b[l].len();
            let mut best = (0, counts.get(&0).copied().unwrap_or(0), size(0));
            let mut candidates: Vec<(&usize, &usize)> = counts.iter().collect();
            candidates.sort_unstable();
            for (&l, &c) in candidates {
                // c / size(l) against best.1 / best.2, cross-multiplied
                let (lhs, rhs) = (c * best.2, best.1 * size(l));
                if lhs > rhs || (lhs == rhs && l < best.0) {
                    best = (l, c, size(l));
                }
            }
            best
        })
        .collect()
}

/// Average F1: the mean best-match F1 of `a` against `b` and of `b` against
/// `a`, averaged. Summed as exact fractions and rounded once.
pub fn avg_f1(a: &[NodeSet], b: &[NodeSet]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(NectarError::EmptyCover);
    }
    let side = |x: &[NodeSet], y: &[NodeSet]| -> BigRational {
        let sum: BigRational = best_match_counts(x, y)
            .into_iter()
            .map(|(_, shared, sizes)| {
                BigRational::new(BigInt::from(2 * shared), BigInt::from(sizes))
            })
            .sum();
        sum / BigInt::from(2 * x.len())
    };
    let exact = side(a, b) + side(b, a);
    Ok(exact.to_f64().expect("F1 lies in [0, 1]"))
}

/// For each truth community, the detected community with the highest F1
/// (lowest index on ties); duplicates are dropped, first occurrence kept.
pub fn match_ground_truth(detected: &[NodeSet], truth: &[NodeSet]) -> Result<Vec<NodeSet>> {
    if detected.is_empty() {
        return Err(NectarError::EmptyCover);
    }
    let mut seen = vec![false; detected.len()];
    let mut out = Vec::new();
    for (index, _, _) in best_match_counts(truth, detected) {
        if !seen[index] {
            seen[index] = true;
            out.push(detected[index].clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn cover(sets: &[&[usize]]) -> Vec<NodeSet> {
        sets.iter().map(|s| s.iter().copied().collect()).collect()
    }

    #[test]
    fn identical_covers_score_one() {
        let a = cover(&[&[0, 1, 2], &[2, 3], &[4, 5, 6, 7]]);
        assert_eq!(nmi(&a, &a, 8).unwrap(), 1.0);
        assert_eq!(omega(&a, &a, 8).unwrap(), 1.0);
        assert_eq!(avg_f1(&a, &a).unwrap(), 1.0);
    }

    #[test]
    fn identical_whole_universe_cover() {
        let a = cover(&[&[0, 1, 2, 3]]);
        assert_eq!(nmi(&a, &a, 4).unwrap(), 1.0);
        assert_eq!(omega(&a, &a, 4).unwrap(), 1.0);
    }

    #[test]
    fn complement_is_rejected_by_nmi() {
        let a = cover(&[&[0, 1]]);
        let b = cover(&[&[2, 3]]);
        assert_abs_diff_eq!(nmi(&a, &b, 4).unwrap(), 0.0);
    }

    #[test]
    fn crossed_partitions() {
        let a = cover(&[&[0, 1], &[2, 3]]);
        let b = cover(&[&[0, 2], &[1, 3]]);
        assert_abs_diff_eq!(omega(&a, &b, 4).unwrap(), -0.5, epsilon = 1e-15);
    }

    #[test]
    fn crossed_partitions_nmi() {
        // each 2-of-4 community meets each crossed one in exactly one node:
        // p11 = p10 = p01 = p00 = 1/4, admissible, H(X|Y_l) = 2 − 1 = 1 = H(X)
        let a = cover(&[&[0, 1], &[2, 3]]);
        let b = cover(&[&[0, 2], &[1, 3]]);
        assert_abs_diff_eq!(nmi(&a, &b, 4).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn avg_f1_worked_case() {
        let a = cover(&[&[1, 2, 3]]);
        let b = cover(&[&[1, 2], &[3, 4]]);
        assert_abs_diff_eq!(avg_f1(&a, &b).unwrap(), 0.7, epsilon = 1e-15);
    }

    #[test]
    fn avg_f1_disjoint_is_zero() {
        let a = cover(&[&[0, 1], &[2]]);
        let b = cover(&[&[3, 4], &[5]]);
        assert_eq!(avg_f1(&a, &b).unwrap(), 0.0);
        assert!(avg_f1(&[], &b).is_err());
    }

    #[test]
    fn all_singletons_omega() {
        let a = cover(&[&[0], &[1], &[2], &[3]]);
        assert_eq!(omega(&a, &a, 4).unwrap(), 1.0);
    }

    #[test]
    fn two_node_universe() {
        // a single pair: chance agreement is 1 only when both covers agree
        let a = cover(&[&[0, 1]]);
        let b = cover(&[&[0], &[1]]);
        assert_eq!(omega(&a, &a, 2).unwrap(), 1.0);
        assert_eq!(omega(&a, &b, 2).unwrap(), 0.0);
        assert!(omega(&cover(&[&[0]]), &cover(&[&[0]]), 1).is_err());
    }

    #[test]
    fn universe_is_checked() {
        let a = cover(&[&[0, 5]]);
        assert!(matches!(
            nmi(&a, &a, 4),
            Err(NectarError::UniverseMismatch { node: 5, n: 4 })
        ));
        assert!(omega(&a, &a, 4).is_err());
    }

    #[test]
    fn matching_identity() {
        let truth = cover(&[&[0, 1, 2], &[3, 4]]);
        assert_eq!(match_ground_truth(&truth, &truth).unwrap(), truth);
    }

    #[test]
    fn matching_single_candidate() {
        let detected = cover(&[&[0, 9]]);
        let truth = cover(&[&[0, 1, 2], &[3, 4], &[5]]);
        assert_eq!(match_ground_truth(&detected, &truth).unwrap(), detected);
    }

    #[test]
    fn matching_deduplicates() {
        let detected = cover(&[&[0, 1, 2, 3], &[7, 8]]);
        let truth = cover(&[&[0, 1], &[2, 3]]);
        let d = match_ground_truth(&detected, &truth).unwrap();
        assert_eq!(d, cover(&[&[0, 1, 2, 3]]));
        assert!(match_ground_truth(&[], &truth).is_err());
    }

    #[test]
    fn matching_tie_prefers_lowest_index() {
        let detected = cover(&[&[5, 6], &[0, 7], &[0, 8]]);
        let truth = cover(&[&[0, 1]]);
        assert_eq!(
            match_ground_truth(&detected, &truth).unwrap(),
            cover(&[&[0, 7]])
        );
    }

    #[test]
    fn evaluate_reports_matched_size() {
        let detected = cover(&[&[0, 1, 2], &[0, 1, 2, 3], &[4, 5]]);
        let truth = cover(&[&[0, 1, 2], &[4, 5]]);
        let r = evaluate(&detected, &truth, 6, true).unwrap();
        assert_eq!(r.matched_cover_size, 2);
        assert_eq!(r.nmi, 1.0);
        assert_eq!(r.avg_f1, 1.0);
        let r = evaluate(&detected, &truth, 6, false).unwrap();
        assert_eq!(r.matched_cover_size, 3);
        assert!(r.avg_f1 < 1.0);
    }
}
