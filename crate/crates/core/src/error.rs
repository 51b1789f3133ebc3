use thiserror::Error;

use crate::laurent::LaurentPoly;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Remainder left behind by a division that did not close over the Laurent ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionFailure {
    pub dividend: LaurentPoly,
    pub divisor: LaurentPoly,
    pub remainder: LaurentPoly,
}

impl std::fmt::Display for DivisionFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}) is not divisible by ({}); remainder {}",
            self.dividend, self.divisor, self.remainder
        )
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("inexact division: {0}")]
    Division(Box<DivisionFailure>),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("vertex {index} out of range for a quiver with {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("invalid exchange matrix: {0}")]
    InvalidMatrix(String),

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cache line {line}: {message}")]
    Cache { line: usize, message: String },

    /// An internal consistency check failed; this indicates a convention bug,
    /// never bad user input.
    #[error("invariant breach: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<DivisionFailure> for Error {
    fn from(f: DivisionFailure) -> Self {
        Error::Division(Box::new(f))
    }
}
