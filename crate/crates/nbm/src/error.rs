//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by construction, validation, numerics, and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("order ideal is not factor-closed: missing divisor {0}")]
    NotFactorClosed(String),
    #[error("inadmissible perturbation: {0}")]
    InadmissiblePerturbation(String),
    #[error("evaluation matrix is numerically rank deficient (smallest singular value {smallest:e}, threshold {threshold:e})")]
    RankDeficient { smallest: f64, threshold: f64 },
    #[error("point set is not well separated: {0}")]
    NotWellSeparated(String),
    #[error("non-finite value: {0}")]
    NonFinite(String),
    #[error("{dims} free perturbation dimensions exceed the grid-search cap of {cap}")]
    TooManyDimensions { dims: usize, cap: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
