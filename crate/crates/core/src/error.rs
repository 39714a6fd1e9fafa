use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("edge list is empty")]
    EmptyEdgeList,

    #[error("negative weight {weight} on edge record {record} ({source_id} -> {target_id})")]
    NegativeWeight {
        record: usize,
        source_id: String,
        target_id: String,
        weight: f64,
    },

    #[error("edge record {record} has an empty node label")]
    EmptyLabel { record: usize },

    #[error("non-finite attribute value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown node ids in {context}: {}", ids.join(", "))]
    UnknownNodes { context: String, ids: Vec<String> },

    #[error("duplicate node ids in {context}: {}", ids.join(", "))]
    DuplicateNodes { context: String, ids: Vec<String> },

    #[error("{context} is missing graph nodes: {}", ids.join(", "))]
    MissingNodes { context: String, ids: Vec<String> },

    #[error("fixed-point iteration did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence {
        iterations: usize,
        residual: f64,
        partial: Vec<f64>,
    },

    #[error("attrirank damping sample {index} failed: {source}")]
    AttriRankSample {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("insufficient neighborhood around node {node} for expected force")]
    InsufficientNeighborhood { node: usize },

    #[error("correlation undefined: {0}")]
    UndefinedCorrelation(&'static str),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of the iterative solvers, as opposed to bad input.
    pub fn is_convergence(&self) -> bool {
        match self {
            Error::NoConvergence { .. } => true,
            Error::AttriRankSample { source, .. } => source.is_convergence(),
            _ => false,
        }
    }
}
