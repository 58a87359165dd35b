use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid size: {0}")]
    InvalidSize(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("path partition undefined: the coloring is alternating")]
    UndefinedPartition,

    #[error("size cap exceeded: n = {n} but the limit is {cap}")]
    SizeCap { n: usize, cap: usize },

    #[error("linear solve did not reach tolerance (residual {residual:e})")]
    NotConverged { residual: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid_param(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

pub(crate) fn invalid_size(msg: impl Into<String>) -> Error {
    Error::InvalidSize(msg.into())
}
