//! Error type shared across the crate.
//!
//! Every fallible operation returns [`Error`]. The variants map onto the
//! distinct failure classes a caller may want to branch on: malformed input
//! text, a structurally invalid diagram, an elementary move whose
//! preconditions fail, a computation that would exceed the configured size
//! budget, and an internal-consistency failure during polynomial division
//! (which indicates a bug rather than bad input, but is reported as an error
//! so library users are never faced with a panic).

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The input text does not conform to the grid file grammar.
    #[error("syntax error at line {line}: {msg}")]
    Syntax {
        /// 1-based line number in the input.
        line: usize,
        /// Description of the problem.
        msg: String,
    },

    /// The diagram data is well-formed text but violates a structural rule.
    /// `rule` is a stable machine-readable name for the violated rule.
    #[error("invalid diagram ({rule}): {msg}")]
    Validation {
        /// Stable name of the violated rule (e.g. `pattern`, `count`).
        rule: &'static str,
        /// Human-readable description with coordinates.
        msg: String,
    },

    /// An elementary move or constructor was applied where its preconditions
    /// do not hold.
    #[error("illegal move: {0}")]
    IllegalMove(String),

    /// The requested computation exceeds the configured generator budget.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// Polynomial division left a remainder where exact divisibility is a
    /// structural theorem. Reaching this indicates an implementation bug.
    #[error("polynomial not divisible: {0}")]
    NonDivisible(String),
}

/// Convenience result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
