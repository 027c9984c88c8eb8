use thiserror::Error;

/// Errors produced by graph loading, objective evaluation and metrics.
#[derive(Debug, Error)]
pub enum NectarError {
    #[error("line {line}: expected two node labels, found {found} token(s)")]
    Parse { line: usize, found: usize },

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("graph has no edges")]
    NoEdges,

    #[error("node {0} still belongs to a community")]
    NodeAttached(usize),

    #[error("community is empty")]
    EmptyCommunity,

    #[error("cover is empty")]
    EmptyCover,

    #[error("node {node} outside universe of size {n}")]
    UniverseMismatch { node: usize, n: usize },

    #[error("omega index undefined: expected agreement is 1 but observed agreement is {0}")]
    DegenerateOmega(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, NectarError>;
