use thiserror::Error;

/// Errors raised by constructions and verifications in this crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain where the formula is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested case is excluded (for example below-diagonal vectors with r = 1).
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// The working precision was insufficient to certify a result.
    #[error("precision error: {0}")]
    Precision(String),
    /// An API was used out of order (for example rescaling twice).
    #[error("usage error: {0}")]
    Usage(String),
    /// An internal identity failed that holds by construction.
    #[error("consistency error: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(format!($($arg)*)) };
}
pub(crate) use domain;
