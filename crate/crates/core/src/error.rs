//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by toolkit operations.
///
/// Numerical routines are strict about their inputs: out-of-domain values
/// (non-finite numbers, mismatched lengths, empty sets) are reported as
/// [`Error::InvalidInput`] rather than silently propagated as NaN.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated an operation's precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A configuration value is out of range or inconsistent.
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    /// The requested problem is unknown or cannot provide what was asked
    /// (for example a reference front for a problem without an analytic PF).
    #[error("unsupported problem: {0}")]
    UnsupportedProblem(String),
    /// An underlying I/O operation failed.
    #[error(transparent)]
    Io(#[from] std::io::Error),
    /// A file had the right shape but unparseable contents.
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid_input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn invalid_config(msg: impl Into<String>) -> Self {
        Error::InvalidConfig(msg.into())
    }
}
