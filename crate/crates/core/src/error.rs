use thiserror::Error;

/// Errors shared by every module of the toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input text could not be decoded.
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    /// Decoded input violates a structural invariant (loop, duplicate edge, ...).
    #[error("invalid input: {0}")]
    Validation(String),

    /// An operation was called outside its precondition.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The instance is larger than an exhaustive routine will accept.
    #[error("capacity exceeded: {what} is {actual}, limit is {limit}")]
    Capacity {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    /// An internal consistency check failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn capacity(what: &'static str, limit: usize, actual: usize) -> Self {
        Error::Capacity {
            what,
            limit,
            actual,
        }
    }
}

/// Fails with [`Error::Capacity`] when `actual > limit`.
pub(crate) fn ensure_cap(what: &'static str, limit: usize, actual: usize) -> Result<()> {
    if actual > limit {
        Err(Error::capacity(what, limit, actual))
    } else {
        Ok(())
    }
}
