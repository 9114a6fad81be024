//! The orbit basis `M^{t,p}_{i,j}` of the centralizer algebra and its
//! structure constants.

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{int, IndicatorMatrix, Rational, RationalMatrix};
use crate::odd_graph::{GraphContext, TripleType, TypeIndexSet, BASE_INDEX};

/// One orbit indicator matrix with its type label.
#[derive(Clone, Debug)]
pub struct OrbitBasisElement {
    pub label: TripleType,
    pub matrix: IndicatorMatrix,
}

impl OrbitBasisElement {
    /// Some pair `(x, y)` with `(x0, x, y)` in this orbit.
    pub fn representative(&self) -> (usize, usize) {
        self.matrix.first_position().expect("orbit elements are nonzero")
    }
}

/// All `C(m+4, 4)` orbit matrices, indexed like the [`TypeIndexSet`].
#[derive(Clone, Debug)]
pub struct OrbitBasis {
    types: TypeIndexSet,
    elements: Vec<OrbitBasisElement>,
}

/// Buckets every ordered pair `(x, y)` by the type of `(x0, x, y)`.
pub fn build_orbit_basis(ctx: &GraphContext, types: &TypeIndexSet) -> Result<OrbitBasis> {
    let n = ctx.vertex_count();
    let rows: Vec<Vec<(u32, u32)>> = (0..n)
        .into_par_iter()
        .map(|x| {
            (0..n)
                .map(|y| {
                    let tt = ctx.based_type(x, y);
                    types
                        .index_of(tt)
                        .map(|k| (k as u32, y as u32))
                        .ok_or_else(|| {
                            Error::consistency(format!(
                                "pair ({x}, {y}) has type {tt} outside the index set"
                            ))
                        })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let mut positions: Vec<Vec<(u32, u32)>> = vec![Vec::new(); types.len()];
    for (x, row) in rows.iter().enumerate() {
        for &(k, y) in row {
            positions[k as usize].push((x as u32, y));
        }
    }
    let elements = positions
        .iter()
        .enumerate()
        .map(|(k, pos)| {
            if pos.is_empty() {
                return Err(Error::consistency(format!(
                    "type {} is realized by no pair",
                    types.get(k)
                )));
            }
            Ok(OrbitBasisElement {
                label: types.get(k),
                matrix: IndicatorMatrix::from_sorted_positions(n, n, pos),
            })
        })
        .collect::<Result<_>>()?;
    Ok(OrbitBasis { types: types.clone(), elements })
}

impl OrbitBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn types(&self) -> &TypeIndexSet {
        &self.types
    }

    pub fn elements(&self) -> &[OrbitBasisElement] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> &OrbitBasisElement {
        &self.elements[k]
    }

    /// The element labelled `tt`.
    pub fn get(&self, tt: TripleType) -> Result<&OrbitBasisElement> {
        Ok(&self.elements[self.types.require(tt)?])
    }

    /// Coordinates of `a` in the orbit basis. Fails unless `a` lies in the
    /// span, i.e. is constant on every orbit.
    pub fn coordinates(&self, a: &RationalMatrix) -> Result<Vec<Rational>> {
        let coords: Vec<Rational> = self
            .elements
            .iter()
            .map(|e| {
                let (x, y) = e.representative();
                a.get(x, y)
            })
            .collect();
        let mut covered = 0usize;
        for (e, c) in self.elements.iter().zip(&coords) {
            for (x, y) in e.matrix.positions() {
                if a.get(x, y) != *c {
                    return Err(Error::consistency(format!(
                        "matrix is not constant on orbit {}",
                        e.label
                    )));
                }
            }
            if !c.is_zero() {
                covered += e.matrix.nnz();
            }
        }
        if covered != a.nnz() {
            return Err(Error::consistency("matrix has entries outside the orbit supports"));
        }
        Ok(coords)
    }

    /// `Σ c_k M_k` as a matrix.
    pub fn combination(&self, coords: &[Rational]) -> RationalMatrix {
        let n = self.elements[0].matrix.rows();
        let triplets = self
            .elements
            .iter()
            .zip(coords)
            .filter(|(_, c)| !c.is_zero())
            .flat_map(|(e, c)| e.matrix.positions().map(move |(x, y)| (x, y, c.clone())));
        RationalMatrix::from_triplets(n, n, triplets).expect("in range")
    }
}

/// `M_a M_b = Σ_c N[a][b][c] M_c`, stored sparsely per `(a, b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    size: usize,
    table: Vec<Vec<(u32, u64)>>,
}

/// Counts, for one representative pair `(x, y)` of each output orbit `c`, the
/// vertices `z` with `(x0, x, z)` in orbit `a` and `(x0, z, y)` in orbit `b`.
/// For `m <= 3` the result is also checked against full matrix products.
pub fn structure_constants(ob: &OrbitBasis, ctx: &GraphContext) -> Result<StructureConstants> {
    let size = ob.len();
    let n = ctx.vertex_count();
    let types = ob.types();
    let per_output: Vec<Vec<(u32, u32)>> = (0..size)
        .into_par_iter()
        .map(|c| {
            let (x, y) = ob.element(c).representative();
            let mut ab: Vec<(u32, u32)> = (0..n)
                .map(|z| {
                    let a = types.index_of(ctx.based_type(x, z)).expect("valid type");
                    let b = types.index_of(ctx.based_type(z, y)).expect("valid type");
                    (a as u32, b as u32)
                })
                .collect();
            ab.sort_unstable();
            ab
        })
        .collect();

    let mut table: Vec<Vec<(u32, u64)>> = vec![Vec::new(); size * size];
    for (c, pairs) in per_output.iter().enumerate() {
        for &(a, b) in pairs {
            let slot = &mut table[a as usize * size + b as usize];
            match slot.last_mut() {
                Some((last, count)) if *last == c as u32 => *count += 1,
                _ => slot.push((c as u32, 1)),
            }
        }
    }
    let sc = StructureConstants { size, table };
    if ctx.m() <= 3 {
        check_against_products(&sc, ob)?;
    }
    Ok(sc)
}

fn check_against_products(sc: &StructureConstants, ob: &OrbitBasis) -> Result<()> {
    let matrices: Vec<RationalMatrix> = ob.elements().iter().map(|e| e.matrix.to_matrix()).collect();
    (0..sc.size * sc.size).into_par_iter().try_for_each(|ab| {
        let (a, b) = (ab / sc.size, ab % sc.size);
        let full = matrices[a].matmul(&matrices[b])?;
        let mut coords = vec![Rational::zero(); sc.size];
        for &(c, k) in sc.entries(a, b) {
            coords[c as usize] = int(k as i64);
        }
        if full != ob.combination(&coords) {
            return Err(Error::consistency(format!(
                "structure constants for {} * {} disagree with the matrix product",
                ob.element(a).label,
                ob.element(b).label
            )));
        }
        Ok(())
    })
}

impl StructureConstants {
    pub fn size(&self) -> usize {
        self.size
    }

    /// Nonzero `(c, N[a][b][c])`, ascending in `c`.
    pub fn entries(&self, a: usize, b: usize) -> &[(u32, u64)] {
        &self.table[a * self.size + b]
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> u64 {
        self.entries(a, b)
            .binary_search_by_key(&(c as u32), |e| e.0)
            .map_or(0, |k| self.entries(a, b)[k].1)
    }

    /// Product of two algebra elements given in orbit coordinates.
    pub fn multiply(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.size];
        for (a, ua) in u.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (b, vb) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                let uv = ua * vb;
                for &(c, k) in self.entries(a, b) {
                    out[c as usize] += &uv * int(k as i64);
                }
            }
        }
        out
    }
}

/// Orbit coordinates of the identity: the sum of the diagonal orbits.
pub fn identity_coordinates(ob: &OrbitBasis) -> Vec<Rational> {
    ob.elements()
        .iter()
        .map(|e| {
            let (x, y) = e.representative();
            if x == y { int(1) } else { int(0) }
        })
        .collect()
}

/// Index of the orbit `(x0, x0, x0)`; its matrix is `E*_0`.
pub fn base_orbit(ob: &OrbitBasis) -> usize {
    ob.elements()
        .iter()
        .position(|e| e.representative() == (BASE_INDEX, BASE_INDEX))
        .expect("the base pair lies in some orbit")
}
