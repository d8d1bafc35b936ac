use num::BigUint;
use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid path {input:?}: {reason}")]
    ParseWord { input: String, reason: String },

    #[error("invalid rational {input:?}: {reason}")]
    ParseRational { input: String, reason: String },

    #[error("length {len} exceeds the enumeration cap {cap}")]
    CapExceeded { len: usize, cap: usize },

    #[error("rank {rank} is out of range for length {len} (valid ranks: 1..={max})")]
    RankOutOfRange {
        len: usize,
        rank: BigUint,
        max: BigUint,
    },

    #[error("mass must be nonnegative, found {mass} at {word}")]
    NegativeMass { word: String, mass: String },

    #[error("measure is identically zero")]
    ZeroMeasure,

    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(String),

    #[error("denominator event has zero mass")]
    ZeroDenominator,

    #[error("posterior mass at observation {x} is zero: the observation is impossible under the prior's support")]
    ZeroPosteriorMass { x: String },

    #[error("sampling requires a proper measure; the {family} measure is improper")]
    ImproperMeasure { family: String },

    #[error("length marginal vanishes at length {len}")]
    ZeroMarginal { len: usize },

    #[error("invalid measure document: {0}")]
    ParseMeasure(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
