use thiserror::Error;

/// Errors raised by the library. Every variant is a caller-side problem:
/// bad parameters, malformed input, or a refused workload.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid layout: {0}")]
    InvalidLayout(String),

    #[error("layout mismatch: expected {expected}, found {found}")]
    LayoutMismatch { expected: String, found: String },

    #[error("element {element} out of range for universe of size {universe}")]
    ElementOutOfRange { element: usize, universe: usize },

    #[error("duplicate member at position {0}")]
    DuplicateMember(usize),

    #[error("parse error at line {line}, field {field}: {message}")]
    Parse {
        line: usize,
        field: usize,
        message: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid core: {0}")]
    InvalidCore(String),

    #[error("graph too large: {required} vertices needed, budget is {budget}")]
    VertexBudget { required: u128, budget: u128 },

    #[error("invalid argument: {0}")]
    Domain(String),

    #[error("structural check failed: {0}")]
    Structure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
