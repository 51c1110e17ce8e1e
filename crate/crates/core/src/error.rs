use thiserror::Error;

/// Default cap on the number of elements any single enumeration may produce.
pub const DEFAULT_BUDGET: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{x} is not below {y}")]
    NotComparable { x: String, y: String },

    #[error("enumeration of {what} needs {needed} elements, budget is {budget}")]
    CarrierOverflow { what: String, needed: u128, budget: usize },

    #[error("label mismatch: expected {expected}, found {found}")]
    LabelMismatch { expected: String, found: String },

    #[error("label sets {left} and {right} overlap")]
    LabelOverlap { left: String, right: String },

    #[error("vectors live on different ambients: {left} vs {right}")]
    AmbientMismatch { left: String, right: String },

    #[error("adjunction has not been verified for {0}")]
    AdjunctionUnverified(String),

    #[error("{flat} is not a flat of {graph}")]
    NotAFlat { graph: String, flat: String },

    #[error("factorization of {0} is not unique")]
    NonUniqueFactorization(String),

    #[error("family {family} is not commutative and cocommutative at {witness}")]
    NotSelfAdjoint { family: String, witness: String },

    #[error("{0} is not supported by this family")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn overflow(what: impl Into<String>, needed: u128, budget: usize) -> Error {
    Error::CarrierOverflow {
        what: what.into(),
        needed,
        budget,
    }
}

/// Fails with `CarrierOverflow` when `needed` exceeds `budget`.
pub(crate) fn ensure_budget(what: impl Into<String>, needed: u128, budget: usize) -> Result<()> {
    if needed > budget as u128 {
        Err(overflow(what, needed, budget))
    } else {
        Ok(())
    }
}
