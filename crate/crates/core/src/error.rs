use thiserror::Error;

use crate::ring::AxiomReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Clone, Debug, Error)]
pub enum Error {
    #[error("element belongs to a different ring")]
    ElementRingMismatch,

    #[error("element index {index} out of range for ring of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("ring order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: u128, cap: usize },

    #[error("exhaustive axiom verification refused for order {order} (limit {limit})")]
    ExhaustiveTooLarge { order: usize, limit: usize },

    #[error("more than {cap} ideals found")]
    CapExceeded { cap: usize },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("element {0} is not a nonzero central idempotent")]
    NotCentralIdempotent(usize),

    #[error("element {0} is not almost idempotent (a - a^2 is not nilpotent)")]
    NotAlmostIdempotent(usize),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("unknown check '{0}'")]
    UnknownCheck(String),

    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("ring axioms fail: {}", .0.summary())]
    AxiomFailure(Box<AxiomReport>),
}
