use thiserror::Error;

/// Errors raised by the group engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0}")]
    SpecMismatch(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("scale limit: {0}")]
    Scale(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
