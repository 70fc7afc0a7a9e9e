use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grading length mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("grading length {0} outside 1..=16")]
    GradingLength(usize),

    #[error("symplectic pairing needs an even grading length, got {0}")]
    OddPairing(usize),

    #[error("invalid signature Cl({p},{q}): need 1 <= p+q <= {max}")]
    Signature { p: usize, q: usize, max: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("basis index {index} out of range for dimension {dim}")]
    MalformedElement { index: usize, dim: usize },

    #[error("duplicate basis label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown basis label `{0}`")]
    UnknownLabel(String),

    #[error("bracket [{left}, {right}] has a term on `{target}` outside grade {expected}")]
    Closure {
        left: String,
        right: String,
        target: String,
        expected: String,
    },

    #[error("{check} failed with {count} violation(s); first: {first}")]
    Audit {
        check: &'static str,
        count: usize,
        first: String,
    },

    #[error("unknown builtin algebra `{0}`")]
    UnknownAlgebra(String),

    #[error("mode index {index} out of range 1..={modes}")]
    ModeIndex { index: usize, modes: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
