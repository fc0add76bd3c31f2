//! Error types shared across the crate.

use thiserror::Error;

/// Everything that can go wrong when validating inputs or running an
/// inference that depends on a certificate the engine does not hold.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two divisor classes from different lattice contexts were combined.
    #[error("lattice context mismatch: ({left}) vs ({right})")]
    ContextMismatch { left: String, right: String },

    /// The genus is outside the admissible range.
    #[error("invalid genus {genus}: {reason}")]
    InvalidGenus { genus: i64, reason: String },

    /// A curve-case inequality failed; `constraint` names it.
    #[error("constraint violated for {case}: requires {constraint} ({reason})")]
    ConstraintViolated {
        case: String,
        constraint: String,
        reason: String,
    },

    /// (a, b) = (0, 1): the curve is the rational curve E itself, which is
    /// handled separately. Carries the local Hilbert-scheme dimension at \[E\].
    #[error("the class (0,1) is the rational curve E itself, not covered by the main classification; dim Hilb at [E] = {dim_hilb_at_e} for a good {kind}")]
    CurveIsE { kind: String, dim_hilb_at_e: i64 },

    /// An operation was asked about a case kind it does not support.
    #[error("unsupported case for {operation}: {detail}")]
    UnsupportedCase { operation: String, detail: String },

    /// A required cohomology entry stayed Unknown, so the conclusion
    /// cannot be asserted.
    #[error("inference incomplete: {what} could not be pinned by any rule")]
    InferenceIncomplete { what: String },

    /// A certificate required by the operation's hypotheses is absent.
    #[error("precondition violated for {operation}: {detail}")]
    PreconditionViolated { operation: String, detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
