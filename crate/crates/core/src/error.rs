use thiserror::Error;

/// Errors produced by the arithmetic, counting and series routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A result or intermediate does not fit in 64 bits.
    #[error("overflow: {0}")]
    Overflow(String),

    /// An oracle or enumeration routine was asked to go past its documented bound.
    #[error("{operation} refused: {value} exceeds the bound of {limit}")]
    BoundExceeded {
        operation: &'static str,
        value: u64,
        limit: u64,
    },

    /// A table could not be allocated.
    #[error("resource error: cannot allocate {entries} table entries")]
    Resource { entries: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
