use std::ops::Index;

use num_traits::Zero;

use super::rational::{int, primitive_scale, Rational};

/// A column vector of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalVector {
    entries: Vec<Rational>,
}

impl RationalVector {
    pub fn zeros(len: usize) -> Self {
        RationalVector { entries: vec![Rational::zero(); len] }
    }

    pub fn from_vec(entries: Vec<Rational>) -> Self {
        RationalVector { entries }
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(values: I) -> Self {
        RationalVector::from_vec(values.into_iter().map(int).collect())
    }

    /// Standard basis vector `e_k`.
    pub fn unit(len: usize, k: usize) -> Self {
        let mut v = RationalVector::zeros(len);
        v.entries[k] = int(1);
        v
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut [Rational] {
        &mut self.entries
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Indices of nonzero entries.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, _)| k)
    }

    /// Standard (real) inner product; all vectors here are rational, so this
    /// is also the Hermitian one.
    pub fn dot(&self, other: &RationalVector) -> Rational {
        assert_eq!(self.len(), other.len(), "dot of vectors of different length");
        let mut acc = Rational::zero();
        for (a, b) in self.entries.iter().zip(&other.entries) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    pub fn scaled(&self, c: &Rational) -> RationalVector {
        RationalVector::from_vec(self.entries.iter().map(|x| x * c).collect())
    }

    /// `self -= c * other`.
    pub fn sub_scaled(&mut self, c: &Rational, other: &RationalVector) {
        if c.is_zero() {
            return;
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                *a -= c * b;
            }
        }
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        RationalVector::from_vec(
            self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        )
    }

    pub fn sub(&self, other: &RationalVector) -> RationalVector {
        RationalVector::from_vec(
            self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        )
    }

    /// The positive multiple of `self` with coprime integer entries.
    pub fn to_primitive(&self) -> RationalVector {
        let c = primitive_scale(&self.entries);
        self.scaled(&c)
    }
}

impl Index<usize> for RationalVector {
    type Output = Rational;

    fn index(&self, k: usize) -> &Rational {
        &self.entries[k]
    }
}
