use thiserror::Error;

/// Errors raised by the numeric model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A quantity fell outside the domain of a formula (log of zero, FSPL at d <= 0, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// Caller supplied an invalid argument combination, such as an empty sweep range.
    #[error("invalid argument: {0}")]
    Argument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
