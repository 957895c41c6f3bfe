use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed graph: {0}")]
    MalformedGraph(String),
    #[error("edge {index} does not exist (graph has {edges} edges)")]
    InvalidEdge { index: usize, edges: usize },
    #[error("parameters out of range: {0}")]
    Domain(String),
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("weight mismatch: partition of {partition} against cycle type of {cycle_type}")]
    WeightMismatch { partition: usize, cycle_type: usize },
    #[error("decomposition failed: {0}")]
    Decomposition(String),
    #[error("homology is not concentrated in one degree: {0}")]
    NotConcentrated(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
