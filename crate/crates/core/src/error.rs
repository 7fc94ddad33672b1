use thiserror::Error;

/// Errors raised by the exact-arithmetic core and the modules built on it.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("cannot parse `{input}` as a golden rational: {reason}")]
    Parse { input: String, reason: String },

    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("family {family} is not defined for group {group}")]
    FamilyMismatch { family: String, group: String },

    #[error("zero vector has no reflection")]
    ZeroVector,

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("group element does not map the axis onto its negative")]
    NotInStabilizer,

    #[error("vector is not a symmetry axis of order {0}")]
    NotAnAxis(u32),

    #[error("matrix is not symmetrisable: {0}")]
    NotSymmetrisable(String),

    #[error("unknown seed `{0}`")]
    UnknownSeed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
