use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("depth {depth} out of range for dimension {dim}")]
    DepthOutOfRange { depth: usize, dim: usize },

    #[error("element is outside the local ring of the prime at depth {depth}")]
    OutsideLocalRing { depth: usize },

    #[error("component at leaf `{leaf}` is not in the valuation ring")]
    NotInValuationRing { leaf: String },

    #[error("components at leaves `{left}` and `{right}` have different residues at `{node}`")]
    Incompatible {
        left: String,
        right: String,
        node: String,
    },

    #[error("expected {expected} components, got {got}")]
    ComponentCount { expected: usize, got: usize },

    #[error("elements belong to different ring specs")]
    OwnerMismatch,

    #[error("unknown node `{0}`")]
    UnknownNode(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("invalid ring spec: {0}")]
    InvalidSpec(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("rejected: {0}")]
    Rejected(String),
}

pub type Result<T> = std::result::Result<T, Error>;
