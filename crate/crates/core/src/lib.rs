//! Exact-arithmetic toolkit for the non-crystallographic Coxeter groups
//! H2, H3 and H4 and their asymmetric affine extensions.
//!
//! All arithmetic happens in the golden field `Q[τ]` ([`GoldenRational`]);
//! floating point only appears when rendering or reporting angles.

pub mod affine;
pub mod cli;
pub mod coxeter;
pub mod error;
pub mod geometry;
pub mod goldring;
pub mod pointarray;

pub use error::{Error, Result};
pub use goldring::{GMatrix, Golden, GoldenInt, GoldenRational, Matrix, Rational};
