use thiserror::Error;

/// Errors reported by sample construction and the transformation routines.
///
/// Numerical breakdowns (vanishing denominators) are not errors: they are
/// recorded per entry as [`EntryStatus::Unstable`](crate::EntryStatus).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input sequence is empty")]
    EmptyInput,
    #[error("non-finite value {value} at index {index}")]
    NonFinite { index: usize, value: f64 },
    #[error("invalid interpolation points: {0}")]
    BadPoints(String),
    #[error("transformation needs interpolation points but the sample has none")]
    MissingPoints,
    #[error("insufficient data: need {needed} elements, have {available}")]
    InsufficientData { needed: usize, available: usize },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("bad argument: {0}")]
    BadArgument(String),
    #[error("F-rule evaluation failed at k={k}, n={n}: {reason}")]
    BadRule { k: usize, n: usize, reason: String },
    #[error("unusable remainder estimate at index {index}")]
    BadEstimates { index: usize },
    #[error("no reference value: {0}")]
    NoReference(String),
}

pub type Result<T> = std::result::Result<T, Error>;
