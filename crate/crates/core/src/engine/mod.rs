//! The local-search driver: node-centric moves with multi-membership via the
//! β rule, α-overlap merging between external iterations, and the
//! community-centric variant.

mod community;

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cover::{CommunityId, Cover};
use crate::error::{NectarError, Result};
use crate::graph::{Graph, NodeSet};
use crate::objectives::{self, ObjectiveKind, DEFAULT_TR_RATE};

pub use community::run_community_centric;

pub const DEFAULT_ALPHA: f64 = 0.8;
pub const DEFAULT_MAX_ITER: usize = 20;

/// Objective to optimize: chosen from the triangle rate, or forced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ObjectiveChoice {
    #[default]
    Auto,
    Fixed(ObjectiveKind),
}

impl FromStr for ObjectiveChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("auto") {
            Ok(ObjectiveChoice::Auto)
        } else {
            s.parse().map(ObjectiveChoice::Fixed)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchMode {
    #[default]
    NodeCentric,
    CommunityCentric,
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMode::NodeCentric => "node",
            SearchMode::CommunityCentric => "community",
        })
    }
}

impl FromStr for SearchMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "node" => Ok(SearchMode::NodeCentric),
            "community" => Ok(SearchMode::CommunityCentric),
            other => Err(format!("unknown search mode '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmConfig {
    /// Relative-gain threshold; a node joins every community whose gain
    /// times β reaches the best gain. Must be at least 1.
    pub beta: f64,
    /// Merge threshold on `|A ∩ B| / min(|A|, |B|)`.
    pub alpha: f64,
    pub max_iter: usize,
    pub tr_rate: f64,
    pub objective: ObjectiveChoice,
    pub mode: SearchMode,
    pub rng_seed: u64,
}

impl Default for AlgorithmConfig {
    fn default() -> Self {
        Self {
            beta: 1.0,
            alpha: DEFAULT_ALPHA,
            max_iter: DEFAULT_MAX_ITER,
            tr_rate: DEFAULT_TR_RATE,
            objective: ObjectiveChoice::Auto,
            mode: SearchMode::NodeCentric,
            rng_seed: 0,
        }
    }
}

impl AlgorithmConfig {
    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = beta;
        self
    }

    pub fn with_objective(mut self, kind: ObjectiveKind) -> Self {
        self.objective = ObjectiveChoice::Fixed(kind);
        self
    }

    pub fn with_mode(mut self, mode: SearchMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta.is_finite() && self.beta >= 1.0) {
            return Err(NectarError::InvalidConfig(format!(
                "beta must be >= 1, got {}",
                self.beta
            )));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(NectarError::InvalidConfig(format!(
                "alpha must lie in (0, 1], got {}",
                self.alpha
            )));
        }
        if !(self.tr_rate.is_finite() && self.tr_rate > 0.0) {
            return Err(NectarError::InvalidConfig(format!(
                "tr_rate must be positive, got {}",
                self.tr_rate
            )));
        }
        if self.max_iter == 0 {
            return Err(NectarError::InvalidConfig(
                "max_iter must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// The objective this configuration will optimize on `graph`.
    pub fn resolve_objective(&self, graph: &Graph) -> Result<ObjectiveKind> {
        match self.objective {
            ObjectiveChoice::Fixed(kind) => {
                if graph.node_count() == 0 {
                    return Err(NectarError::EmptyGraph);
                }
                Ok(kind)
            }
            ObjectiveChoice::Auto => objectives::select_objective(graph, self.tr_rate),
        }
    }
}

/// Outcome of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub cover: Cover,
    /// External iterations executed.
    pub iterations: usize,
    /// Whether the last external iteration left every node stable.
    pub converged: bool,
    pub objective: ObjectiveKind,
    /// Whole-cover objective value of the final cover (0 for edgeless graphs).
    pub objective_value: f64,
    pub beta: f64,
    pub rng_seed: u64,
}

/// Starting cover: singletons for extended modularity; for WOCC, greedy
/// seeding in decreasing clustering-coefficient order (ties by node id)
/// where each unplaced node founds a community with its unplaced neighbors.
pub fn initialize_cover(graph: &Graph, kind: ObjectiveKind) -> Cover {
    let n = graph.node_count();
    match kind {
        ObjectiveKind::QExt => Cover::singletons(n),
        ObjectiveKind::Wocc => {
            let coefficients: Vec<f64> = graph
                .nodes()
                .map(|v| graph.clustering_coefficient(v))
                .collect();
            let mut order: Vec<usize> = graph.nodes().collect();
            order.sort_by(|&a, &b| coefficients[b].total_cmp(&coefficients[a]).then(a.cmp(&b)));

            let mut placed = vec![false; n];
            let mut cover = Cover::new(n);
            for v in order {
                if placed[v] {
                    continue;
                }
                placed[v] = true;
                let mut members = vec![v];
                for &u in graph.neighbors(v) {
                    if !placed[u] {
                        placed[u] = true;
                        members.push(u);
                    }
                }
                cover.add_community(members.into());
            }
            cover
        }
    }
}

/// Runs the configured search mode.
pub fn detect(graph: &Graph, config: &AlgorithmConfig) -> Result<RunReport> {
    match config.mode {
        SearchMode::NodeCentric => run(graph, config),
        SearchMode::CommunityCentric => run_community_centric(graph, config),
    }
}

/// Node-centric search.
///
/// Each external iteration visits every node in a freshly shuffled order,
/// detaches it, and reattaches it to every neighboring community whose gain
/// times β reaches the best gain; a node with no positive gain becomes a
/// singleton. Overlapping communities are then merged. Stops once every
/// node was stable and nothing merged, or after `max_iter` iterations.
pub fn run(graph: &Graph, config: &AlgorithmConfig) -> Result<RunReport> {
    config.validate()?;
    let kind = config.resolve_objective(graph)?;
    let mut cover = initialize_cover(graph, kind);
    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let mut order: Vec<usize> = graph.nodes().collect();
    let n = graph.node_count();

    let mut iterations = 0;
    let mut converged = false;
    while iterations < config.max_iter {
        order.shuffle(&mut rng);
        let mut stable = node_pass(graph, &mut cover, kind, config.beta, &order);
        if cover.merge_overlapping(config.alpha) {
            stable = 0;
        }
        iterations += 1;
        log::debug!(
            "iteration {iterations}: {stable}/{n} stable, {} communities",
            cover.len()
        );
        if stable == n {
            converged = true;
            break;
        }
    }

    Ok(finish(graph, cover, kind, iterations, converged, config))
}

pub(crate) fn finish(
    graph: &Graph,
    cover: Cover,
    kind: ObjectiveKind,
    iterations: usize,
    converged: bool,
    config: &AlgorithmConfig,
) -> RunReport {
    let objective_value = objectives::evaluate(kind, graph, &cover).unwrap_or(0.0);
    RunReport {
        cover,
        iterations,
        converged,
        objective: kind,
        objective_value,
        beta: config.beta,
        rng_seed: config.rng_seed,
    }
}

pub(crate) fn gain(
    graph: &Graph,
    cover: &Cover,
    kind: ObjectiveKind,
    v: usize,
    set: &NodeSet,
    two_m: f64,
) -> f64 {
    match kind {
        ObjectiveKind::QExt => objectives::q_ext_gain(graph, cover, v, set, two_m),
        ObjectiveKind::Wocc => objectives::wocc_gain(graph, set, v),
    }
}

/// Candidates whose gain times β reaches the best gain. Empty when no gain is
/// positive.
pub(crate) fn beta_selection(gains: &[(CommunityId, f64)], beta: f64) -> Vec<CommunityId> {
    let best = gains
        .iter()
        .map(|&(_, g)| g)
        .fold(f64::NEG_INFINITY, f64::max);
    if best <= 0.0 {
        return Vec::new();
    }
    gains
        .iter()
        .filter(|&&(_, g)| g * beta >= best)
        .map(|&(id, _)| id)
        .collect()
}

/// Moves every node of `order` once and returns how many kept exactly their
/// prior communities. Does not merge.
pub fn node_pass(
    graph: &Graph,
    cover: &mut Cover,
    kind: ObjectiveKind,
    beta: f64,
    order: &[usize],
) -> usize {
    let two_m = 2.0 * graph.edge_count() as f64;
    order
        .iter()
        .filter(|&&v| move_node(graph, cover, v, kind, beta, two_m))
        .count()
}

/// One internal iteration for node `v`. Returns whether `v` ended up in
/// exactly the communities it started in.
fn move_node(
    graph: &Graph,
    cover: &mut Cover,
    v: usize,
    kind: ObjectiveKind,
    beta: f64,
    two_m: f64,
) -> bool {
    let prior: Vec<CommunityId> = cover.memberships(v).iter().copied().collect();
    let lone_singleton = match prior.as_slice() {
        [only] => cover.community(*only).is_some_and(|c| c.len() == 1),
        _ => false,
    };
    cover.remove_node_from_all(v);

    let gains: Vec<(CommunityId, f64)> = cover
        .neighboring_communities(graph, v)
        .into_iter()
        .map(|id| {
            let set = cover.community(id).expect("neighboring community exists");
            (id, gain(graph, cover, kind, v, set, two_m))
        })
        .collect();
    let chosen = beta_selection(&gains, beta);

    if chosen.is_empty() {
        if lone_singleton {
            cover.insert_with_id(prior[0], NodeSet::from([v]));
            return true;
        }
        cover.add_community(NodeSet::from([v]));
        return false;
    }
    for &id in &chosen {
        cover.add_node(v, id);
    }
    chosen == prior
}

/// β values tried by [`beta_sweep`] when none are given: 12 log-spaced
/// values over [1.1, 20] for WOCC, 13 evenly spaced values over
/// [1.01, 1.4] for extended modularity.
pub fn default_beta_grid(kind: ObjectiveKind) -> Vec<f64> {
    match kind {
        ObjectiveKind::Wocc => {
            let (lo, hi, count) = (1.1f64, 20.0f64, 12);
            let ratio = (hi / lo).ln();
            (0..count)
                .map(|i| {
                    if i == count - 1 {
                        hi
                    } else {
                        lo * (ratio * i as f64 / (count - 1) as f64).exp()
                    }
                })
                .collect()
        }
        ObjectiveKind::QExt => {
            let (lo, hi, count) = (1.01f64, 1.4f64, 13);
            (0..count)
                .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
                .collect()
        }
    }
}

/// Seed of the `index`-th sweep run; index 0 keeps the configured seed.
pub fn sweep_seed(base: u64, index: usize) -> u64 {
    base.wrapping_add((index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// One report per β, in input order. Runs execute in parallel; run `i` uses
/// [`sweep_seed`]`(config.rng_seed, i)`.
pub fn sweep_reports(
    graph: &Graph,
    config: &AlgorithmConfig,
    betas: &[f64],
) -> Result<Vec<RunReport>> {
    betas
        .par_iter()
        .enumerate()
        .map(|(i, &beta)| {
            let cfg = AlgorithmConfig {
                beta,
                rng_seed: sweep_seed(config.rng_seed, i),
                ..config.clone()
            };
            detect(graph, &cfg)
        })
        .collect()
}

/// Runs once per β and keeps the report with the highest objective value;
/// ties go to the earlier β.
pub fn beta_sweep(graph: &Graph, config: &AlgorithmConfig, betas: &[f64]) -> Result<RunReport> {
    if betas.is_empty() {
        return Err(NectarError::InvalidConfig("beta list is empty".into()));
    }
    let reports = sweep_reports(graph, config, betas)?;

    let mut best: Option<RunReport> = None;
    for report in reports {
        match &best {
            Some(b) if report.objective_value <= b.objective_value => {}
            _ => best = Some(report),
        }
    }
    Ok(best.expect("at least one beta"))
}

/// [`beta_sweep`] over [`default_beta_grid`] for the resolved objective.
pub fn beta_sweep_default(graph: &Graph, config: &AlgorithmConfig) -> Result<RunReport> {
    let kind = config.resolve_objective(graph)?;
    beta_sweep(graph, config, &default_beta_grid(kind))
}
