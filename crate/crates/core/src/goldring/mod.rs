//! Exact arithmetic in `Z[τ] ⊂ Q[τ]` and dense linear algebra over it.

mod golden;
mod matrix;
pub mod parse;
mod serde_impl;

pub use golden::{ratio_sqrt, Golden, GoldenInt, GoldenRational, Rational};
pub use matrix::{dot, Field, Matrix, Scalar};
pub use parse::{parse_golden, parse_rational};

/// Square matrix over `Q[τ]`.
pub type GMatrix = Matrix<GoldenRational>;
