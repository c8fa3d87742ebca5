use thiserror::Error;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum BmError {
    #[error("not a space: {0}")]
    NotASpace(String),
    #[error("refinement scheme: {0}")]
    BadScheme(String),
    /// More than one splitting index contains the inner set.
    #[error("nesting index is ambiguous: {0:?}")]
    Ambiguous(Vec<usize>),
    /// The truncated space has no room for the requested move.
    #[error("past the horizon: {0}")]
    Horizon(String),
    #[error("contract: {0}")]
    Contract(String),
    #[error("node budget {0} exceeded")]
    Budget(u64),
}
