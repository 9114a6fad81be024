use num_traits::{One, Zero};
use rayon::prelude::*;

use super::rational::Rational;
use super::vector::RationalVector;
use crate::error::{Error, Result};

/// Exact rational matrix in row-sparse form.
///
/// Each row holds `(column, value)` pairs sorted by column with no explicit
/// zeros, so structural equality is value equality. Dense matrices are
/// simply matrices whose rows happen to be full.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, Rational)>>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Rational::one())
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zeros(n, n);
        }
        RationalMatrix {
            rows: n,
            cols: n,
            data: (0..n).map(|i| vec![(i, c.clone())]).collect(),
        }
    }

    /// The all-ones matrix.
    pub fn ones(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: (0..rows)
                .map(|_| (0..cols).map(|c| (c, Rational::one())).collect())
                .collect(),
        }
    }

    /// Builds from `(row, col, value)` triplets; duplicate positions are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut data: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::Shape(format!(
                    "entry ({r}, {c}) outside a {rows}x{cols} matrix"
                )));
            }
            data[r].push((c, v));
        }
        for row in &mut data {
            *row = compact(std::mem::take(row));
        }
        Ok(RationalMatrix { rows, cols, data })
    }

    /// 0/1 matrix with ones at the given positions.
    pub fn from_indicator<I>(rows: usize, cols: usize, positions: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_triplets(
            rows,
            cols,
            positions.into_iter().map(|(r, c)| (r, c, Rational::one())),
        )
    }

    pub fn from_dense(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged dense rows".into()));
        }
        let n = rows.len();
        let data = rows
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        Ok(RationalMatrix { rows: n, cols, data })
    }

    /// Square diagonal matrix.
    pub fn diagonal(values: Vec<Rational>) -> Self {
        let n = values.len();
        RationalMatrix {
            rows: n,
            cols: n,
            data: values
                .into_iter()
                .enumerate()
                .map(|(i, v)| if v.is_zero() { Vec::new() } else { vec![(i, v)] })
                .collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[(usize, Rational)] {
        &self.data[r]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.data[r].binary_search_by_key(&c, |(k, _)| *k) {
            Ok(pos) => self.data[r][pos].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Nonzero entries in row-major order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, &Rational)> + '_ {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (r, c, v) in self.triplets() {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut data: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.cols];
        for (r, c, v) in self.triplets() {
            data[c].push((r, v.clone()));
        }
        RationalMatrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, c: &Rational) -> RationalMatrix {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|row| row.iter().map(|(k, v)| (*k, v * c)).collect())
                .collect(),
        }
    }

    pub fn add(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        self.combine(other, |a, b| a - b)
    }

    fn combine<F>(&self, other: &RationalMatrix, op: F) -> Result<RationalMatrix>
    where
        F: Fn(&Rational, &Rational) -> Rational,
    {
        self.same_shape(other, "combine")?;
        let zero = Rational::zero();
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut i, mut j) = (0, 0);
                while i < a.len() || j < b.len() {
                    let ca = a.get(i).map_or(usize::MAX, |e| e.0);
                    let cb = b.get(j).map_or(usize::MAX, |e| e.0);
                    let (c, v) = if ca == cb {
                        i += 1;
                        j += 1;
                        (ca, op(&a[i - 1].1, &b[j - 1].1))
                    } else if ca < cb {
                        i += 1;
                        (ca, op(&a[i - 1].1, &zero))
                    } else {
                        j += 1;
                        (cb, op(&zero, &b[j - 1].1))
                    };
                    if !v.is_zero() {
                        out.push((c, v));
                    }
                }
                out
            })
            .collect();
        Ok(RationalMatrix { rows: self.rows, cols: self.cols, data })
    }

    fn same_shape(&self, other: &RationalMatrix, what: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// Exact product. Rows are computed independently, so the parallel
    /// evaluation is bit-identical to a sequential one.
    pub fn matmul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "matmul: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let width = other.cols;
        let data = self
            .data
            .par_iter()
            .map(|row| {
                let mut acc: Vec<Option<Rational>> = vec![None; width];
                let mut touched = Vec::new();
                for (k, a) in row {
                    for (c, b) in &other.data[*k] {
                        match &mut acc[*c] {
                            Some(x) => *x += a * b,
                            slot @ None => {
                                *slot = Some(a * b);
                                touched.push(*c);
                            }
                        }
                    }
                }
                touched.sort_unstable();
                touched
                    .into_iter()
                    .filter_map(|c| acc[c].take().filter(|v| !v.is_zero()).map(|v| (c, v)))
                    .collect()
            })
            .collect();
        Ok(RationalMatrix { rows: self.rows, cols: width, data })
    }

    pub fn matvec(&self, v: &RationalVector) -> Result<RationalVector> {
        if self.cols != v.len() {
            return Err(Error::Shape(format!(
                "matvec: {}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let entries = self
            .data
            .iter()
            .map(|row| {
                let mut acc = Rational::zero();
                for (c, a) in row {
                    let b = &v[*c];
                    if !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect();
        Ok(RationalVector::from_vec(entries))
    }

    /// Hadamard (entrywise) product.
    pub fn entrywise_product(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        self.same_shape(other, "entrywise product")?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut out = Vec::new();
                let (mut i, mut j) = (0, 0);
                while i < a.len() && j < b.len() {
                    match a[i].0.cmp(&b[j].0) {
                        std::cmp::Ordering::Less => i += 1,
                        std::cmp::Ordering::Greater => j += 1,
                        std::cmp::Ordering::Equal => {
                            out.push((a[i].0, &a[i].1 * &b[j].1));
                            i += 1;
                            j += 1;
                        }
                    }
                }
                out
            })
            .collect();
        Ok(RationalMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Submatrix on the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> RationalMatrix {
        let mut position = vec![usize::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            position[c] = k;
        }
        let data = rows
            .iter()
            .map(|&r| {
                let mut row: Vec<(usize, Rational)> = self.data[r]
                    .iter()
                    .filter(|(c, _)| position[*c] != usize::MAX)
                    .map(|(c, v)| (position[*c], v.clone()))
                    .collect();
                row.sort_by_key(|e| e.0);
                row
            })
            .collect();
        RationalMatrix { rows: rows.len(), cols: cols.len(), data }
    }
}

fn compact(mut row: Vec<(usize, Rational)>) -> Vec<(usize, Rational)> {
    row.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, Rational)> = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;

    fn small() -> RationalMatrix {
        RationalMatrix::from_dense(vec![
            vec![int(1), int(0), int(2)],
            vec![int(0), int(-1), int(3)],
        ])
        .unwrap()
    }

    #[test]
    fn identity_product() {
        let a = small();
        assert_eq!(RationalMatrix::identity(2).matmul(&a).unwrap(), a);
        assert_eq!(a.matmul(&RationalMatrix::identity(3)).unwrap(), a);
    }

    #[test]
    fn ones_square() {
        for n in 1..6 {
            let j = RationalMatrix::ones(n, n);
            assert_eq!(j.matmul(&j).unwrap(), j.scale(&int(n as i64)));
        }
    }

    #[test]
    fn shape_errors() {
        let a = small();
        assert!(matches!(a.matmul(&a), Err(Error::Shape(_))));
        assert!(matches!(
            a.entrywise_product(&a.transpose()),
            Err(Error::Shape(_))
        ));
        assert!(RationalMatrix::from_triplets(2, 2, [(2, 0, int(1))]).is_err());
    }

    #[test]
    fn hadamard() {
        let a = small();
        assert_eq!(a.entrywise_product(&RationalMatrix::ones(2, 3)).unwrap(), a);
        assert!(a.entrywise_product(&RationalMatrix::zeros(2, 3)).unwrap().is_zero());
        let n = 4;
        let e0 = RationalMatrix::ones(n, n).scale(&Rational::new(1.into(), 4.into()));
        assert_eq!(
            e0.entrywise_product(&e0).unwrap(),
            e0.scale(&Rational::new(1.into(), 4.into()))
        );
    }

    #[test]
    fn triplets_sum_and_cancel() {
        let m = RationalMatrix::from_triplets(2, 2, [(0, 1, int(1)), (0, 1, int(-1)), (1, 0, int(2))])
            .unwrap();
        assert_eq!(m.nnz(), 1);
        assert_eq!(m.get(1, 0), int(2));
    }

    #[test]
    fn add_sub() {
        let a = small();
        assert!(a.sub(&a).unwrap().is_zero());
        assert_eq!(a.add(&a).unwrap(), a.scale(&int(2)));
    }
}
