use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An element or ideal was handed to a ring it does not belong to, or a
    /// subset that was supposed to be an ideal is not closed.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    /// Rejected generator list for a gcd-graph.
    #[error("generator {index} is invalid: {reason}")]
    Generator { index: usize, reason: String },

    #[error("size cap exceeded: {what} is {actual}, limit {limit}")]
    Cap {
        what: &'static str,
        actual: usize,
        limit: usize,
    },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A mathematical invariant that should hold unconditionally failed.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    /// An operation was called outside its precondition (e.g. diameter
    /// bounds of a disconnected graph).
    #[error("contract violation: {0}")]
    Contract(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
