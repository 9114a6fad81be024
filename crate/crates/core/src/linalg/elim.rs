use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::RationalMatrix;
use super::rational::Rational;
use super::vector::RationalVector;

/// Result of fraction-free Gauss–Jordan elimination.
///
/// Every pivot entry equals `scale`, every pivot column is zero outside its
/// pivot row, and all entries are integers: the reduced row echelon form
/// multiplied through by `scale`.
struct Reduced {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    scale: BigInt,
}

/// Bareiss-style elimination, extended upward so the result is fully reduced.
/// Each update `(p * a_ij - a_ic * a_rj) / prev` divides exactly because all
/// intermediate entries are minors of the input.
fn gauss_jordan(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Reduced {
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows.len() {
            break;
        }
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let (before, rest) = rows.split_at_mut(rank);
        let (pivot_row, after) = rest.split_first_mut().expect("pivot row exists");
        let piv = pivot_row[c].clone();
        let unit_step = piv == prev;
        for row in before.iter_mut().chain(after.iter_mut()) {
            let factor = row[c].clone();
            if factor.is_zero() {
                if !unit_step {
                    for x in row.iter_mut() {
                        if !x.is_zero() {
                            *x = &*x * &piv / &prev;
                        }
                    }
                }
                continue;
            }
            for (x, pr) in row.iter_mut().zip(pivot_row.iter()) {
                let updated = &*x * &piv - &factor * pr;
                *x = if prev.is_one() { updated } else { updated / &prev };
            }
        }
        prev = piv;
        pivots.push(c);
        rank += 1;
    }
    Reduced { rows, pivots, scale: prev }
}

/// Clears denominators row by row.
fn integer_rows(a: &RationalMatrix) -> Vec<Vec<BigInt>> {
    (0..a.rows())
        .map(|r| {
            let mut den = BigInt::one();
            for (_, v) in a.row(r) {
                den = den.lcm(v.denom());
            }
            let mut out = vec![BigInt::zero(); a.cols()];
            for (c, v) in a.row(r) {
                out[*c] = v.numer() * (&den / v.denom());
            }
            out
        })
        .collect()
}

pub fn rank(a: &RationalMatrix) -> usize {
    rank_int(integer_rows(a), a.cols())
}

pub fn rank_int(rows: Vec<Vec<BigInt>>, cols: usize) -> usize {
    gauss_jordan(rows, cols).pivots.len()
}

/// Basis of the right null space, as primitive integer vectors, one per
/// non-pivot column in ascending column order.
pub fn kernel_basis(a: &RationalMatrix) -> Vec<RationalVector> {
    kernel_basis_int(integer_rows(a), a.cols())
        .into_iter()
        .map(|v| RationalVector::from_vec(v.into_iter().map(Rational::from_integer).collect()))
        .collect()
}

pub fn kernel_basis_int(rows: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    let red = gauss_jordan(rows, cols);
    let mut is_pivot = vec![false; cols];
    for &c in &red.pivots {
        is_pivot[c] = true;
    }
    (0..cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![BigInt::zero(); cols];
            v[f] = red.scale.clone();
            for (r, &c) in red.pivots.iter().enumerate() {
                v[c] = -red.rows[r][f].clone();
            }
            make_primitive(v)
        })
        .collect()
}

fn make_primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v;
    }
    let lead_negative = v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let g = if lead_negative { -g } else { g };
    for x in &mut v {
        *x = &*x / &g;
    }
    v
}

/// A particular solution of `a x = b` (free variables set to zero), or `None`
/// when the system is inconsistent.
pub fn solve(a: &RationalMatrix, b: &RationalVector) -> Option<RationalVector> {
    assert_eq!(a.rows(), b.len(), "solve: right-hand side length");
    let cols = a.cols();
    let augmented = RationalMatrix::from_triplets(
        a.rows(),
        cols + 1,
        a.triplets()
            .map(|(r, c, v)| (r, c, v.clone()))
            .chain(b.entries().iter().enumerate().map(|(r, v)| (r, cols, v.clone()))),
    )
    .expect("augmented shape");
    let red = gauss_jordan(integer_rows(&augmented), cols + 1);
    if red.pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (r, &c) in red.pivots.iter().enumerate() {
        x[c] = Rational::new(red.rows[r][cols].clone(), red.scale.clone());
    }
    Some(RationalVector::from_vec(x))
}

/// Incrementally grown subspace of `Q^dim`, kept in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<(usize, Vec<Rational>)>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis { dim, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the subspace spanned so far.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Residual of `v` after eliminating every pivot; zero iff `v` is in the span.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.dim);
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let c = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &c * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = v[p].clone();
        for x in &mut v {
            *x /= &lead;
        }
        for (_, row) in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x -= &c * r;
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;
    use proptest::prelude::*;

    fn dense(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_dense(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn identity_kernel_empty() {
        assert!(kernel_basis(&RationalMatrix::identity(4)).is_empty());
        assert_eq!(rank(&RationalMatrix::identity(4)), 4);
    }

    #[test]
    fn zero_kernel_full() {
        let k = kernel_basis(&RationalMatrix::zeros(3, 3));
        assert_eq!(k.len(), 3);
        assert_eq!(rank(&RationalMatrix::zeros(3, 3)), 0);
    }

    #[test]
    fn small_kernel() {
        let a = dense(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.len(), 1);
        assert!(a.matvec(&k[0]).unwrap().is_zero());
        assert_eq!(k[0], RationalVector::from_ints([1, 1, -1]));
    }

    #[test]
    fn solve_square_and_inconsistent() {
        let a = dense(&[&[2, 1], &[1, 3]]);
        let x = solve(&a, &RationalVector::from_ints([3, 5])).unwrap();
        assert_eq!(a.matvec(&x).unwrap(), RationalVector::from_ints([3, 5]));
        let s = dense(&[&[1, 1], &[1, 1]]);
        assert!(solve(&s, &RationalVector::from_ints([1, 2])).is_none());
    }

    #[test]
    fn echelon_basis_span() {
        let mut e = EchelonBasis::new(3);
        assert!(e.insert(&[int(1), int(1), int(0)]));
        assert!(e.insert(&[int(0), int(1), int(1)]));
        assert!(!e.insert(&[int(1), int(2), int(1)]));
        assert!(e.contains(&[int(2), int(0), int(-2)]));
        assert!(!e.contains(&[int(0), int(0), int(1)]));
        assert_eq!(e.len(), 2);
    }

    fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-3i64..4, c), r)
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(rows in matrix_strategy()) {
            let a = RationalMatrix::from_dense(
                rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(),
            ).unwrap();
            let k = kernel_basis(&a);
            prop_assert_eq!(rank(&a) + k.len(), a.cols());
            for v in &k {
                prop_assert!(a.matvec(v).unwrap().is_zero());
            }
            let mut span = EchelonBasis::new(a.cols());
            for v in &k {
                prop_assert!(span.insert(v.entries()));
            }
            // rank also agrees with the incremental echelon route
            let mut rows_span = EchelonBasis::new(a.cols());
            for r in a.to_dense() {
                rows_span.insert(&r);
            }
            prop_assert_eq!(rows_span.len(), rank(&a));
        }
    }
}
