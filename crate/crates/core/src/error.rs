use thiserror::Error;

/// Every failure the toolkit reports. `Internal` marks a failed self-check
/// (two independent routes disagreeing); everything else is a problem with
/// the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different coefficient rings ({left} vs {right})")]
    MixedRings { left: String, right: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("chain complex is invalid: {0}")]
    InvalidComplex(String),
    #[error("homology in degree {degree} has free rank {free_rank}; dimensions are infinite")]
    FreePart { degree: usize, free_rank: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
