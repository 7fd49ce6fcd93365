//! Error type shared by all computation layers.
//!
//! Every failure carries enough context to be rendered as a single
//! machine-parsable line.  Callers that have already guaranteed a
//! precondition (for example a lift target known to lie in a fiber span)
//! treat the corresponding variant as an internal invariant violation.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// All error conditions surfaced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Matrix/module dimensions do not line up, or a generator has the
    /// wrong number of entries or too many variables.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// A degree cap is below the documented precondition for the request.
    #[error("cap too small: {0}")]
    CapTooSmall(String),

    /// A difference sequence has no constant trailing window of the
    /// required length below the cap; retry with a larger cap.
    #[error("not stabilized: {0}")]
    NotStabilized(String),

    /// A linear system xᵀm = rhs has no solution (rhs outside the row
    /// space).  A logic error when solvability was guaranteed.
    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),

    /// A generator expected to be homogeneous has terms of mixed degree.
    #[error("inhomogeneous generator: {0}")]
    Inhomogeneous(String),

    /// The supplied point does not attain the generic fiber dimension of
    /// every module involved.
    #[error("point not maximal: {0}")]
    PointNotMaximal(String),

    /// Deterministic sampling ran out of budget without finding a point
    /// attaining the generic fiber dimension.
    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    /// An identity that must hold by construction failed to hold; this
    /// always indicates a bug rather than bad input.
    #[error("identity violated: {0}")]
    IdentityViolated(String),

    /// An explicit weight sequence violates a₀ = 1 or positivity.
    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    /// A weight-preset name is not recognized.
    #[error("unknown preset: {0}")]
    UnknownPreset(String),
}
