//! Exact construction and decomposition of the Terwilliger algebra of the
//! Odd graph `O_{m+1}` with respect to the base vertex `{1, .., m}`.
//!
//! The crate is organised bottom-up:
//!
//! * [`odd_graph`]: vertices, distances, triple types and the index set `I_m`.
//! * [`linalg`]: exact rational matrices, elimination and Gram–Schmidt.
//! * [`terwilliger`]: distance matrices, dual idempotents, the orbit basis of
//!   the centralizer algebra, primitive idempotents in Q-polynomial order,
//!   structure constants and the exact identity checks.
//! * [`decomp`]: homogeneous components of the standard module, their
//!   orthogonal bases and the resulting block-diagonalization.
//! * [`export`]: the serialized bundle consumed by downstream SDP tooling.

pub mod decomp;
pub mod error;
pub mod export;
pub mod linalg;
pub mod odd_graph;
pub mod terwilliger;

pub use error::{Error, Result};
pub use linalg::{Rational, RationalMatrix, RationalVector};
pub use odd_graph::{GraphContext, Subset, TripleType, TypeIndexSet};

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}
