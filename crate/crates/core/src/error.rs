use thiserror::Error;

/// Structural errors raised by constructors and operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("parameter sets differ")]
    ParameterMismatch,

    #[error("non-finite component")]
    NonFinite,

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("norm exponent must satisfy 1 <= p <= inf, got {0}")]
    InvalidExponent(f64),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
