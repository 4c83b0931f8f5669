//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("invalid surface: {0}")]
    InvalidSurface(String),
    #[error("matrix must have positive determinant")]
    NonPositiveDeterminant,
    #[error("invalid face coordinate ({0}, {1})")]
    InvalidCoord(i64, i64),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("orbit exceeded the cap of {0} elements")]
    OrbitCapExceeded(usize),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("reduction did not terminate within {0} steps")]
    NoTermination(usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Result alias using [`Error`].
pub type Result<T> = std::result::Result<T, Error>;
