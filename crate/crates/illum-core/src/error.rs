//! Error type shared by all modules.

use std::fmt;

/// Errors produced by the certified-computation layers.
///
/// The split mirrors how callers need to react: a [`Error::Domain`] means the
/// input itself is outside the mathematical domain of the operation, a
/// [`Error::NotAvailable`] means the combination is valid but this build has
/// no data or plan for it (e.g. the density catalog stops at n = 13), and a
/// [`Error::Contract`] flags a caller bug such as mismatched vector lengths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input outside the mathematical domain (division by an interval
    /// containing zero, `ln` of a non-positive interval, dimension out of
    /// range, …).
    Domain(String),
    /// The requested method/dimension combination has no implementation or
    /// embedded data.
    NotAvailable(String),
    /// An internal precondition between cooperating values was violated
    /// (wrong vector length, index order, mismatched dimensions).
    Contract(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::NotAvailable(msg) => write!(f, "not available: {msg}"),
            Error::Contract(msg) => write!(f, "contract violation: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
