use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop on vertex {0} is not allowed")]
    SelfLoop(usize),

    #[error("label {label} out of range 1..={k}")]
    LabelOutOfRange { label: usize, k: usize },

    #[error("expected {expected} labels, got {got}")]
    LabelCountMismatch { expected: usize, got: usize },

    #[error("malformed expression: {0}")]
    MalformedExpression(String),

    #[error("expression is not safe")]
    UnsafeExpression,

    #[error("{what} needs {requested} units but the guard allows {limit}")]
    GuardExceeded {
        what: &'static str,
        limit: u128,
        requested: u128,
    },

    #[error("input graphs must have equal vertex counts and alphabets")]
    SizeMismatch,

    #[error("clique blowup count {count} is not divisible by (k!)^|V| = {divisor}")]
    DivisibilityFailure { count: String, divisor: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
