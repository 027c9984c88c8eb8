//! Overlapping community detection by node-centric local search.
//!
//! Each node is repeatedly detached and re-added to every neighboring
//! community whose gain is within a factor β of the best one, and communities
//! that overlap too much are merged. The objective is chosen per graph:
//! extended modularity for sparse, triangle-poor graphs and the
//! triangle-based WOCC score otherwise.
//!
//! ```
//! use nectar::{AlgorithmConfig, Graph};
//!
//! let graph = Graph::load_edge_list_str("a b\nb c\na c\nc d\nd e\ne f\nd f").unwrap();
//! let report = nectar::run(&graph, &AlgorithmConfig::default().with_beta(1.1)).unwrap();
//! assert!(report.converged);
//! assert_eq!(report.cover.len(), 2);
//! ```

pub mod cli;
pub mod cover;
pub mod engine;
pub mod error;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod objectives;
pub mod planted;

pub use cover::{CommunityId, Cover};
pub use engine::{
    beta_sweep, beta_sweep_default, default_beta_grid, detect, initialize_cover, node_pass, run,
    run_community_centric, sweep_reports, AlgorithmConfig, ObjectiveChoice, RunReport, SearchMode,
};
pub use error::{NectarError, Result};
pub use graph::{Graph, NodeSet};
pub use metrics::EvaluationReport;
pub use objectives::ObjectiveKind;
pub use planted::{generate_planted, PlantedPartitionSpec};
