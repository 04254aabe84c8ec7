use thiserror::Error;

/// Errors raised by the simulation kernels.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A grid or state does not satisfy an operation's precondition.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// Mismatched lengths, grids, or unnormalized states passed across an API boundary.
    #[error("contract violation: {0}")]
    Contract(String),
    /// The measurement outcome leaves (numerically) nothing of the input state.
    #[error("degenerate measurement outcome: {0}")]
    DegenerateOutcome(String),
    /// Malformed serialized input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
