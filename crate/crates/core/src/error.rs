use thiserror::Error;

/// Errors raised by the algebraic and combinatorial operations of this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degree error: {0}")]
    Degree(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("labelling is not admissible on {} edge(s), first {:?}", .edges.len(), .edges.first())]
    Admissibility { edges: Vec<(usize, usize)> },

    #[error("vertex {0} carries no label")]
    Coverage(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("enumeration of {requested} items exceeds the cap of {cap}")]
    ResourceLimit { requested: u128, cap: u128 },

    #[error("random generation failed: {0}")]
    GenerationFailed(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
