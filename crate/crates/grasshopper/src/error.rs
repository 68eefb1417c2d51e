use thiserror::Error;

/// Errors shared by all modules. Capacity errors carry the cap that fired so
/// callers can report which limit to raise; they are never silent truncation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("capacity exceeded: {what} (cap {cap})")]
    Capacity { what: &'static str, cap: u64 },

    /// An internal consistency check failed (e.g. an exact division left a
    /// remainder). This signals an implementation bug, not a data condition.
    #[error("internal consistency error: {0}")]
    Internal(String),

    /// A bound-satisfying instance came back blocked.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn capacity(what: &'static str, cap: u64) -> Self {
        Error::Capacity { what, cap }
    }
}
