use thiserror::Error;

use crate::riesz::FailureTag;

/// Errors produced by the quaternionic linear-algebra core and the analyses
/// built on top of it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("quaternion inverse of zero")]
    ZeroDivisor,

    #[error("non-finite component rejected")]
    NonFinite,

    #[error("singular matrix: {0}")]
    Singular(String),

    #[error("dependent input: vector {index} lies in the span of its predecessors")]
    DependentInput { index: usize },

    #[error("matrix is not Hermitian")]
    NotHermitian,

    #[error("eigenvalue multiplicity anomaly: {0}")]
    MultiplicityAnomaly(String),

    #[error("eigensolver failed to converge after {0} sweeps")]
    ConvergenceFailure(usize),

    #[error("empty family")]
    EmptyFamily,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("family is not orthonormal: {0}")]
    NotOrthonormal(String),

    #[error("not a Riesz basis: {tags:?}")]
    NotRieszBasis { tags: Vec<FailureTag> },

    #[error("dual cross-check mismatch: the two dual computations differ by {0:e}")]
    DualCrossCheck(f64),

    #[error("family is not complete: rank {rank} < dimension {dim}")]
    NotComplete { rank: usize, dim: usize },

    #[error("Riesz-sequence lower bound is zero")]
    LowerBoundZero,

    #[error("invalid generator config: {0}")]
    InvalidConfig(String),

    #[error("generation failed after {0} attempts")]
    GenerationFailure(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
