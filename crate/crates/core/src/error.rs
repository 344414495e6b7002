//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    /// Malformed or inconsistent input data (bad rows, unknown tags,
    /// empty datasets and the like).
    #[error("data error: {0}")]
    Data(String),

    /// Shape disagreement between a model and the matrix it is applied to.
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),

    /// Invalid configuration or hyperparameter value.
    #[error("invalid config: {0}")]
    Config(String),

    /// Numerical failure inside an optimizer (non-finite loss/gradient).
    #[error("optimization error: {0}")]
    Optim(String),

    /// A document source could not be reached after retries.
    #[error("source error: {0}")]
    Source(String),
}

impl Error {
    pub fn data(msg: impl Into<String>) -> Self {
        Error::Data(msg.into())
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
