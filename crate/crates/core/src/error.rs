use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("resource budget exceeded: {0}")]
    Resource(String),

    /// A statement that must hold mathematically failed; this is a bug in
    /// the implementation, not bad input.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("internal invariant failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => { $crate::error::Error::InvalidInput(format!($($arg)*)) };
}
pub(crate) use invalid;
