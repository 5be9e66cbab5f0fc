use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("cannot build a polytope from an empty point list")]
    NoPoints,
    #[error("halfspaces do not bound a polytope")]
    Unbounded,
    #[error("{0} is empty or not full-dimensional")]
    Degenerate(&'static str),
    #[error("invalid automaton: {0}")]
    Automaton(String),
    #[error("invalid problem: {0}")]
    Problem(String),
    #[error("no qualifying action/support pair for undecided state (cell {cell}, memory {q})")]
    NoQualifyingAction { cell: usize, q: usize },
    #[error("controller is undefined at cell {cell}, memory {q}")]
    OutsideDomain { cell: usize, q: usize },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
