//! Exact linear algebra over arbitrary-precision rationals.
//!
//! Nothing here takes square roots: orthogonal bases carry their squared
//! norms alongside the unnormalized vectors.

mod elim;
mod gram;
mod indicator;
mod matrix;
mod rational;
mod vector;

pub use elim::{kernel_basis, kernel_basis_int, rank, rank_int, solve, EchelonBasis};
pub use gram::{gram_schmidt, gram_schmidt_primitive};
pub use indicator::IndicatorMatrix;
pub use matrix::RationalMatrix;
pub use rational::{format_rational, int, parse_rational, primitive_scale, Rational};
pub use vector::RationalVector;
