//! Error type shared by every module in the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong during parsing, arithmetic, or verification.
///
/// Domain failures are deliberately fine-grained: callers (in particular the
/// command-line frontend) map several of these to distinct exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two structured coefficients belong to different algebras.
    #[error("coefficient algebra mismatch: operands belong to different algebras")]
    SpecMismatch,

    /// An element required to be invertible is not a unit.
    #[error("not a unit: {0}")]
    NotAUnit(String),

    /// A binary series operation received operands expanded in different
    /// directions.
    #[error("series direction mismatch: one operand is expanded at zero, the other at infinity")]
    DirectionMismatch,

    /// A series operation produced an empty coefficient window.
    #[error("empty series window: low {low} exceeds high {high}")]
    EmptyWindow { low: i64, high: i64 },

    /// A truncation bound does not reach the extreme degree of the operand.
    #[error("truncation window too small: bound {got} does not reach required degree {needed}")]
    WindowTooSmall { needed: i64, got: i64 },

    /// A sum of rational fractions failed to reduce to a Laurent polynomial.
    #[error("fraction sum is not a Laurent polynomial: exact division leaves a remainder")]
    NonPolynomialSum,

    /// A rational fraction was constructed with denominator zero.
    #[error("zero denominator in rational fraction")]
    ZeroDenominator,

    /// An evaluation point is a root of a denominator.
    #[error("denominator vanishes at the evaluation point")]
    DenominatorVanishes,

    /// Internal factor bookkeeping failed to recombine; indicates corrupt data
    /// rather than user error.
    #[error("factorization mismatch: partial products do not recombine to the full product")]
    FactorizationMismatch,

    /// Fixed-point data passed structural validation but the evaluation paths
    /// disagree, so the data cannot come from a consistent space.
    #[error("inconsistent fixed-point data: {0}")]
    InconsistentData(String),

    /// A check was invoked on data that does not satisfy its hypotheses.
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// A malformed algebra table (wrong dimensions, bad unit vector, ...).
    #[error("malformed algebra table: {0}")]
    AlgebraShape(String),

    /// A dataset file is syntactically valid JSON but semantically malformed.
    #[error("invalid dataset: {0}")]
    Dataset(String),

    /// A rational number literal failed to parse.
    #[error("invalid number `{0}`: expected `p` or `p/q` with nonzero q")]
    Number(String),
}
