//! Distance matrices, intersection numbers, the Bose–Mesner algebra in
//! distance-matrix coordinates, and the dual idempotents of the base vertex.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{int, IndicatorMatrix, Rational, RationalMatrix};
use crate::odd_graph::{GraphContext, BASE_INDEX};

/// `A_0, .., A_m` together with the intersection numbers `p^h_{ij}`.
#[derive(Clone, Debug)]
pub struct DistanceMatrices {
    a: Vec<IndicatorMatrix>,
    adjacency: RationalMatrix,
    /// `p[h][i][j]`
    p: Vec<Vec<Vec<u64>>>,
}

pub fn build_distance_matrices(ctx: &GraphContext) -> Result<DistanceMatrices> {
    let m = ctx.m();
    let n = ctx.vertex_count();
    let mut positions: Vec<Vec<(u32, u32)>> = vec![Vec::new(); m + 1];
    for x in 0..n {
        for y in 0..n {
            positions[ctx.distance(x, y)].push((x as u32, y as u32));
        }
    }
    let a: Vec<IndicatorMatrix> = positions
        .iter()
        .map(|pos| IndicatorMatrix::from_sorted_positions(n, n, pos))
        .collect();
    let adjacency = a[1].to_matrix();
    let p = intersection_numbers(ctx);
    if m <= 3 {
        let all_pairs = intersection_numbers_all_pairs(ctx)?;
        if all_pairs != p {
            return Err(Error::consistency(
                "intersection numbers from representative pairs disagree with the all-pairs count",
            ));
        }
    }
    Ok(DistanceMatrices { a, adjacency, p })
}

/// `p^h_{ij}` counted from one representative pair per distance `h`:
/// the base vertex and the first vertex of sphere `h`.
fn intersection_numbers(ctx: &GraphContext) -> Vec<Vec<Vec<u64>>> {
    let m = ctx.m();
    let n = ctx.vertex_count();
    (0..=m)
        .map(|h| {
            let x = BASE_INDEX;
            let y = ctx.sphere(h)[0];
            let mut table = vec![vec![0u64; m + 1]; m + 1];
            for z in 0..n {
                table[ctx.distance(x, z)][ctx.distance(z, y)] += 1;
            }
            table
        })
        .collect()
}

/// `p^h_{ij}` counted over every ordered pair, failing if any count depends
/// on the pair. Quadratic in `|X|` times `|X|`; meant for small `m`.
pub fn intersection_numbers_all_pairs(ctx: &GraphContext) -> Result<Vec<Vec<Vec<u64>>>> {
    let m = ctx.m();
    let n = ctx.vertex_count();
    let mut table: Vec<Vec<Vec<Option<u64>>>> = vec![vec![vec![None; m + 1]; m + 1]; m + 1];
    for x in 0..n {
        for y in 0..n {
            let h = ctx.distance(x, y);
            let mut counts = vec![vec![0u64; m + 1]; m + 1];
            for z in 0..n {
                counts[ctx.distance(x, z)][ctx.distance(z, y)] += 1;
            }
            for i in 0..=m {
                for j in 0..=m {
                    match table[h][i][j] {
                        None => table[h][i][j] = Some(counts[i][j]),
                        Some(c) if c == counts[i][j] => {}
                        Some(_) => {
                            return Err(Error::consistency(format!(
                                "p^{h}_{{{i}{j}}} depends on the chosen pair"
                            )))
                        }
                    }
                }
            }
        }
    }
    Ok(table
        .into_iter()
        .map(|t| {
            t.into_iter()
                .map(|row| row.into_iter().map(|c| c.unwrap_or(0)).collect())
                .collect()
        })
        .collect())
}

impl DistanceMatrices {
    pub fn diameter(&self) -> usize {
        self.a.len() - 1
    }

    /// The 0/1 pattern of `A_i`.
    pub fn indicator(&self, i: usize) -> &IndicatorMatrix {
        &self.a[i]
    }

    pub fn matrix(&self, i: usize) -> RationalMatrix {
        self.a[i].to_matrix()
    }

    /// `A_1`.
    pub fn adjacency(&self) -> &RationalMatrix {
        &self.adjacency
    }

    pub fn intersection_number(&self, h: usize, i: usize, j: usize) -> u64 {
        self.p[h][i][j]
    }

    /// Valency `k_i = p^0_{ii}`.
    pub fn valency(&self, i: usize) -> u64 {
        self.p[0][i][i]
    }

    /// Product in the Bose–Mesner algebra, in distance-matrix coordinates.
    pub fn bm_mul(&self, a: &BoseMesnerElement, b: &BoseMesnerElement) -> BoseMesnerElement {
        let d = self.diameter();
        let mut out = vec![Rational::zero(); d + 1];
        for (i, ai) in a.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, bj) in b.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let ab = ai * bj;
                for (h, slot) in out.iter_mut().enumerate() {
                    let c = self.p[h][i][j];
                    if c != 0 {
                        *slot += &ab * int(c as i64);
                    }
                }
            }
        }
        BoseMesnerElement { coeffs: out }
    }
}

/// An element `Σ c_h A_h` of the Bose–Mesner algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoseMesnerElement {
    coeffs: Vec<Rational>,
}

impl BoseMesnerElement {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        BoseMesnerElement { coeffs }
    }

    pub fn zero(diameter: usize) -> Self {
        BoseMesnerElement { coeffs: vec![Rational::zero(); diameter + 1] }
    }

    /// `A_h` itself.
    pub fn basis(diameter: usize, h: usize) -> Self {
        let mut e = Self::zero(diameter);
        e.coeffs[h] = Rational::one();
        e
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        BoseMesnerElement {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        BoseMesnerElement {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        BoseMesnerElement { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Entrywise product; distance matrices have disjoint supports.
    pub fn hadamard(&self, other: &Self) -> Self {
        BoseMesnerElement {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).collect(),
        }
    }

    /// The `(x, y)` entry, given `∂(x, y)`.
    pub fn entry_at_distance(&self, h: usize) -> &Rational {
        &self.coeffs[h]
    }

    pub fn trace(&self, vertex_count: usize) -> Rational {
        &self.coeffs[0] * int(vertex_count as i64)
    }

    /// Materializes the `|X| × |X|` matrix.
    pub fn to_matrix(&self, ctx: &GraphContext) -> RationalMatrix {
        let n = ctx.vertex_count();
        let triplets = (0..n).flat_map(|x| {
            (0..n).filter_map(move |y| {
                let v = &self.coeffs[ctx.distance(x, y)];
                (!v.is_zero()).then(|| (x, y, v.clone()))
            })
        });
        RationalMatrix::from_triplets(n, n, triplets).expect("in range")
    }
}

/// Diagonal projections `E*_0, .., E*_m` onto the distance spheres of the base vertex.
#[derive(Clone, Debug)]
pub struct DualIdempotents {
    estar: Vec<RationalMatrix>,
}

pub fn build_dual_idempotents(ctx: &GraphContext, dm: &DistanceMatrices) -> DualIdempotents {
    let n = ctx.vertex_count();
    let estar = (0..=dm.diameter())
        .map(|i| {
            let diag = (0..n)
                .map(|y| if dm.indicator(i).contains(BASE_INDEX, y) { int(1) } else { int(0) })
                .collect();
            RationalMatrix::diagonal(diag)
        })
        .collect();
    DualIdempotents { estar }
}

impl DualIdempotents {
    pub fn get(&self, i: usize) -> &RationalMatrix {
        &self.estar[i]
    }

    pub fn len(&self) -> usize {
        self.estar.len()
    }

    pub fn is_empty(&self) -> bool {
        self.estar.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &RationalMatrix> {
        self.estar.iter()
    }
}
