use thiserror::Error;

/// Precondition and bound failures of the algebraic operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("subset is not an ideal")]
    NotAnIdeal,
    #[error("partition is not a congruence")]
    NotACongruence,
    #[error("congruence is not a k-congruence")]
    NotAKCongruence,
    #[error("semiring is not additively idempotent")]
    NotAdditivelyIdempotent,
    #[error("semiring is not an incline")]
    NotAnIncline,
    #[error("subset or partition width {found} does not match carrier size {expected}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("{operation} supports order at most {max}, got {order}")]
    OrderTooLarge {
        operation: &'static str,
        order: usize,
        max: usize,
    },
    #[error("unsupported: {0}")]
    Unsupported(String),
}
