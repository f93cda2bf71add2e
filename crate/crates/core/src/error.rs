use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Caller supplied an argument outside the operation's domain.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A structural precondition on a graph does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// The pattern exceeds an exhaustive-enumeration cap.
    #[error("pattern too large: {what} is {actual}, limit {limit}")]
    PatternTooLarge {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    /// A configured computation budget ran out.
    #[error("resource budget exceeded: {0}")]
    Budget(String),

    /// Rejection sampling would accept too rarely to be useful.
    #[error("event too rare for rejection sampling: estimated acceptance {rate:.3e} < {min:.0e}; use the importance-sampled variant")]
    TooRare { rate: f64, min: f64 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
