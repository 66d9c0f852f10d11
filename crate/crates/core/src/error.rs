use thiserror::Error;

/// Failures raised by the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(&'static str),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("syntax error at offset {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("variable x{index} out of range for arity {arity}")]
    Arity { index: usize, arity: usize },

    #[error("probe direction must be nonzero")]
    ZeroDirection,

    /// A check that must be a theorem failed. Indicates a bug, never a math result.
    #[error("internal consistency fault: {0}")]
    LogicFault(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
