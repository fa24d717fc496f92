//! Error type shared by all modules.

use thiserror::Error;

/// Crate-wide error enumeration.
///
/// Variants are grouped by origin: structural misuse (dimension or index
/// violations), algebraic degeneracies that a caller may want to branch on
/// (vanishing pivots, mixed discriminants), and input handling.
#[derive(Debug, Error)]
pub enum Error {
    /// Two operands carry a different number of indeterminates.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// An index or subset argument violates a precondition.
    #[error("index error: {0}")]
    IndexError(String),

    /// Division by an exact zero.
    #[error("division by zero: {0}")]
    DivisionByZero(String),

    /// Arithmetic attempted between scalars over different quadratic
    /// extensions. One shared discriminant per computation context is an
    /// invariant of the whole crate.
    #[error("mixed discriminants: {0} vs {1}")]
    MixedDiscriminant(String, String),

    /// A pivot entry or minor required to be nonzero vanished; carries a
    /// description of which hypothesis failed.
    #[error("vanishing pivot: {0}")]
    SingularPivot(String),

    /// The requested value lives outside the rationals and their single
    /// quadratic extension (e.g. a configuration requiring complex
    /// phases). Reported, never silently approximated.
    #[error("not representable over the supported field: {0}")]
    NeedsComplexPhases(String),

    /// Text input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A structural consistency check on input data failed (e.g. a minor
    /// family violating the exchange axiom).
    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    /// Underlying I/O failure.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
