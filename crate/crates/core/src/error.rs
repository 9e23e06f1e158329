use thiserror::Error;

use crate::digits::DigitSystem;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A lattice specification violates one of its structural invariants.
    #[error("invalid lattice spec: {0}")]
    InvalidSpec(String),

    #[error("digit index {index} outside [{min}, {max}] for {observable}")]
    DigitIndexOutOfRange {
        observable: &'static str,
        index: i32,
        min: i32,
        max: i32,
    },

    #[error("{system} digits are not defined on this lattice: {reason}")]
    IncompatibleSystem {
        system: DigitSystem,
        reason: &'static str,
    },

    #[error("{value} is not a node of the {lattice} lattice")]
    OffLattice { value: String, lattice: &'static str },

    /// The operand has infinitely many nonzero digits after the point.
    #[error("{value} has no finite base-{base} expansion")]
    NonTerminating { value: String, base: u32 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
}
