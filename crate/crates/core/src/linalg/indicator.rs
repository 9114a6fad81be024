use num_traits::{One, Zero};

use super::matrix::RationalMatrix;
use super::rational::Rational;
use super::vector::RationalVector;

/// A 0/1 matrix stored as compressed rows of column indices.
///
/// Orbit indicator matrices and distance matrices partition `X × X`, so at
/// `m = 6` they hold millions of ones in total; this keeps each one at four
/// bytes instead of a boxed rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndicatorMatrix {
    rows: usize,
    cols: usize,
    row_start: Vec<usize>,
    col_index: Vec<u32>,
}

impl IndicatorMatrix {
    /// Builds from positions sorted in row-major order without duplicates.
    pub fn from_sorted_positions(rows: usize, cols: usize, positions: &[(u32, u32)]) -> Self {
        debug_assert!(positions.windows(2).all(|w| w[0] < w[1]));
        let mut row_start = vec![0usize; rows + 1];
        for &(r, _) in positions {
            row_start[r as usize + 1] += 1;
        }
        for r in 0..rows {
            row_start[r + 1] += row_start[r];
        }
        IndicatorMatrix {
            rows,
            cols,
            row_start,
            col_index: positions.iter().map(|&(_, c)| c).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.col_index.len()
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.col_index[self.row_start[r]..self.row_start[r + 1]]
    }

    pub fn contains(&self, r: usize, c: usize) -> bool {
        self.row(r).binary_search(&(c as u32)).is_ok()
    }

    /// Positions of the ones, row-major.
    pub fn positions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows).flat_map(move |r| self.row(r).iter().map(move |&c| (r, c as usize)))
    }

    /// First one in row-major order.
    pub fn first_position(&self) -> Option<(usize, usize)> {
        self.positions().next()
    }

    pub fn to_matrix(&self) -> RationalMatrix {
        RationalMatrix::from_indicator(self.rows, self.cols, self.positions())
            .expect("positions are in range")
    }

    pub fn transpose(&self) -> IndicatorMatrix {
        let mut positions: Vec<(u32, u32)> =
            self.positions().map(|(r, c)| (c as u32, r as u32)).collect();
        positions.sort_unstable();
        IndicatorMatrix::from_sorted_positions(self.cols, self.rows, &positions)
    }

    pub fn matvec(&self, v: &RationalVector) -> RationalVector {
        assert_eq!(v.len(), self.cols, "indicator matvec length");
        let entries = (0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for &c in self.row(r) {
                    let x = &v[c as usize];
                    if !x.is_zero() {
                        acc += x;
                    }
                }
                acc
            })
            .collect();
        RationalVector::from_vec(entries)
    }

    /// `true` if this indicator equals the rational matrix `m` exactly.
    pub fn equals(&self, m: &RationalMatrix) -> bool {
        if m.rows() != self.rows || m.cols() != self.cols || m.nnz() != self.nnz() {
            return false;
        }
        (0..self.rows).all(|r| {
            m.row(r).len() == self.row(r).len()
                && m.row(r)
                    .iter()
                    .zip(self.row(r))
                    .all(|((c, v), &k)| *c == k as usize && v.is_one())
        })
    }
}
