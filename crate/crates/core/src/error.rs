use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid needs at least 16 nodes, got {0}")]
    GridTooSmall(usize),

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("non-finite value at node {index} (x = {x})")]
    NonFinite { index: usize, x: f64 },

    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("functions live on different grids")]
    GridMismatch,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{what} must be positive, found {value} at x = {x}")]
    NotPositive { what: &'static str, x: f64, value: f64 },

    #[error("seed state has a node near x = {x}")]
    NodeInSeed { x: f64 },

    #[error("lambda = {0} lies in the excluded interval [-1, 0]")]
    LambdaExcluded(f64),

    #[error("|gamma1| = {gamma1} exceeds the admissible bound {bound}")]
    Gamma1OutOfBound { gamma1: f64, bound: f64 },

    #[error("factorization invalid: {reason} (x = {x})")]
    InvalidFactorization { reason: String, x: f64 },

    #[error("k = {k} <= -1: potential strength and energies diverge as 1/(1+k)")]
    Divergent { k: f64 },

    #[error("degenerate case: {0}")]
    Degenerate(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
