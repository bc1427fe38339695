//! Error type shared across the crate.

use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong while building or computing.
///
/// Variants carry enough context to name the offending object; callers that
/// want to distinguish "input too large" from "input invalid" can match on
/// [`Error::SizeCap`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input fails a structural validity check (group axioms, partial-order
    /// axioms, simplicial closure, action compatibility, ...).
    Invalid(String),
    /// A stated precondition of an operation does not hold for this input.
    Precondition(String),
    /// Input exceeds a configured size cap.
    SizeCap {
        /// What was being measured (e.g. "group order", "poset elements").
        what: String,
        /// The configured limit.
        limit: usize,
        /// The offending size.
        got: usize,
    },
    /// A truncated computation cannot report the requested range.
    Truncated(String),
    /// Internal consistency check failed; indicates a bug, not bad input.
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Invalid(m) => write!(f, "invalid input: {m}"),
            Error::Precondition(m) => write!(f, "precondition violated: {m}"),
            Error::SizeCap { what, limit, got } => {
                write!(f, "size cap exceeded: {what} is {got}, limit {limit}")
            }
            Error::Truncated(m) => write!(f, "truncation too short: {m}"),
            Error::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl core::error::Error for Error {}
