use thiserror::Error;

/// Failure modes shared by every module.
///
/// `Invariant` is reserved for outcomes that contradict a proven structural
/// property of the graphs (or a bug in the construction); callers treat it
/// differently from bad input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
}

impl Error {
    pub fn is_invariant(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(format!($($arg)*)) };
}

macro_rules! invariant {
    ($($arg:tt)*) => { $crate::error::Error::Invariant(format!($($arg)*)) };
}

pub(crate) use domain;
pub(crate) use invariant;
