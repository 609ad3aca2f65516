use thiserror::Error;

/// Errors produced by the untangling toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input outside the domain on which an operation is defined.
    #[error("undefined input: {0}")]
    UndefinedInput(String),
    /// Input that is well-typed but violates a stated invariant.
    #[error("validation failed: {0}")]
    Validation(String),
    /// Exhaustive search would exceed the configured capacity.
    #[error("capacity exceeded: sequence of length {len} is over the cap of {cap}")]
    Capacity { len: usize, cap: usize },
    /// Certificates only exist for instances from the standard builders.
    #[error("unsupported instance: {0}")]
    UnsupportedInstance(String),
    /// A move targeted a point already holding a vertex.
    #[error("point is occupied by vertex {0}")]
    Occupied(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    /// Malformed interchange data.
    #[error("input error: {0}")]
    Input(String),
    /// A result failed its own post-check; indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
