//! Vertices, distances and triple types of the Odd graph `O_{m+1}`.
//!
//! Vertices are the `m`-subsets of `{1, .., 2m+1}`, stored as bitmasks where
//! element `e` occupies bit `e - 1`. They are indexed in ascending
//! lexicographic order of their sorted element tuples, so the base vertex
//! `{1, .., m}` always has index 0.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Largest supported `m`. `C(17, 8) = 24310` vertices.
pub const MAX_M: usize = 8;

/// Index of the base vertex `x0 = {1, .., m}` in the canonical order.
pub const BASE_INDEX: usize = 0;

/// A subset of the ground set, as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u32) -> Self {
        Subset(bits)
    }

    /// Builds a subset from 1-based elements.
    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        let mut bits = 0u32;
        for e in elements {
            assert!((1..=32).contains(&e), "element {e} out of range");
            bits |= 1 << (e - 1);
        }
        Subset(bits)
    }

    /// The interval `{lo, .., hi}`; empty when `hi < lo`.
    pub fn interval(lo: usize, hi: usize) -> Self {
        Subset::from_elements(lo..=hi)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn cardinality(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, e: usize) -> bool {
        (1..=32).contains(&e) && self.0 & (1 << (e - 1)) != 0
    }

    pub fn elements(self) -> Vec<usize> {
        (1..=32).filter(|&e| self.contains(e)).collect()
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn meet(self, other: Subset) -> usize {
        (self.0 & other.0).count_ones() as usize
    }

    /// Image under a ground-set permutation; `perm[e - 1]` is the image of `e`.
    pub fn permute(self, perm: &[usize]) -> Subset {
        let mut bits = 0u32;
        let mut rest = self.0;
        while rest != 0 {
            let e = rest.trailing_zeros() as usize;
            bits |= 1 << (perm[e] - 1);
            rest &= rest - 1;
        }
        Subset(bits)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.elements().iter().join(","))
    }
}

/// The vertex set of `O_{m+1}` together with distance bookkeeping relative to
/// the base vertex. Immutable once built.
#[derive(Clone, Debug)]
pub struct GraphContext {
    m: usize,
    vertices: Vec<Subset>,
    index: HashMap<u32, usize>,
    /// `distance_by_meet[s]` is the graph distance of two vertices meeting in `s` points.
    distance_by_meet: Vec<usize>,
    /// Distance of each vertex from the base vertex.
    sphere_of: Vec<usize>,
    /// Vertex indices of each distance sphere around the base vertex, ascending.
    spheres: Vec<Vec<usize>>,
    /// Position of each vertex inside its sphere.
    sphere_position: Vec<usize>,
}

/// Enumerates the vertices of `O_{m+1}` in canonical order.
pub fn enum_vertices(m: usize) -> Result<GraphContext> {
    if m == 0 || m > MAX_M {
        return Err(Error::Config(format!(
            "m must satisfy 1 <= m <= {MAX_M}, got {m}"
        )));
    }
    let n = 2 * m + 1;
    let vertices: Vec<Subset> = (1..=n)
        .combinations(m)
        .map(Subset::from_elements)
        .collect();
    let index = vertices.iter().enumerate().map(|(k, v)| (v.bits(), k)).collect();
    let distance_by_meet = (0..=m).map(|s| distance_from_meet(m, s)).collect::<Vec<_>>();

    let base = vertices[BASE_INDEX];
    let sphere_of: Vec<usize> = vertices
        .iter()
        .map(|v| distance_by_meet[base.meet(*v)])
        .collect();
    let mut spheres = vec![Vec::new(); m + 1];
    let mut sphere_position = vec![0; vertices.len()];
    for (k, &d) in sphere_of.iter().enumerate() {
        sphere_position[k] = spheres[d].len();
        spheres[d].push(k);
    }

    Ok(GraphContext {
        m,
        vertices,
        index,
        distance_by_meet,
        sphere_of,
        spheres,
        sphere_position,
    })
}

fn distance_from_meet(m: usize, meet: usize) -> usize {
    if meet <= (m - 1) / 2 {
        2 * meet + 1
    } else {
        2 * m - 2 * meet
    }
}

impl GraphContext {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ground_set_size(&self) -> usize {
        2 * self.m + 1
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Subset] {
        &self.vertices
    }

    pub fn vertex(&self, k: usize) -> Subset {
        self.vertices[k]
    }

    pub fn base_vertex(&self) -> Subset {
        self.vertices[BASE_INDEX]
    }

    pub fn index_of(&self, s: Subset) -> Option<usize> {
        self.index.get(&s.bits()).copied()
    }

    /// Graph distance between the vertices with indices `a` and `b`.
    pub fn distance(&self, a: usize, b: usize) -> usize {
        self.distance_by_meet[self.vertices[a].meet(self.vertices[b])]
    }

    /// Distance of vertex `a` from the base vertex.
    pub fn sphere_of(&self, a: usize) -> usize {
        self.sphere_of[a]
    }

    pub fn sphere(&self, i: usize) -> &[usize] {
        &self.spheres[i]
    }

    pub fn sphere_position(&self, a: usize) -> usize {
        self.sphere_position[a]
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        self.spheres.iter().map(Vec::len).collect()
    }

    /// Triple type of `(x0, x, y)` for vertex indices `x`, `y`.
    pub fn based_type(&self, x: usize, y: usize) -> TripleType {
        triple_type(self.base_vertex(), self.vertices[x], self.vertices[y])
    }

    /// Vertex permutation induced by a ground-set permutation:
    /// `result[k]` is the index of the image of vertex `k`.
    pub fn vertex_permutation(&self, perm: &[usize]) -> Vec<usize> {
        self.vertices
            .iter()
            .map(|v| self.index[&v.permute(perm).bits()])
            .collect()
    }
}

/// Path-length distance between two vertices of `O_{m+1}`.
pub fn graph_distance(x: Subset, y: Subset, ctx: &GraphContext) -> usize {
    distance_from_meet(ctx.m, x.meet(y))
}

/// Intersection pattern `(|x∩y|, |x∩z|, |y∩z|, |x∩y∩z|)` of a triple.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TripleType {
    pub i: usize,
    pub j: usize,
    pub t: usize,
    pub p: usize,
}

impl TripleType {
    pub const fn new(i: usize, j: usize, t: usize, p: usize) -> Self {
        TripleType { i, j, t, p }
    }

    /// Membership in the index set `I_m`, by the closed-form inequalities.
    pub fn is_valid(&self, m: usize) -> bool {
        let (i, j, t, p, m) = (
            self.i as i64,
            self.j as i64,
            self.t as i64,
            self.p as i64,
            m as i64,
        );
        if i > m || j > m {
            return false;
        }
        let t_lo = (i + j - m).max(m - 1 - i - j);
        let t_hi = m - (i - j).abs();
        if t < t_lo || t > t_hi {
            return false;
        }
        let p_lo = 0.max(i + j - m).max(i + t - m).max(j + t - m);
        let p_hi = i.min(j).min(t).min(i + j + t + 1 - m);
        p_lo <= p && p <= p_hi
    }

    /// The type of the transposed orbit, `(j, i, t, p)`.
    pub fn transpose(&self) -> TripleType {
        TripleType::new(self.j, self.i, self.t, self.p)
    }

    pub fn as_array(&self) -> [usize; 4] {
        [self.i, self.j, self.t, self.p]
    }
}

impl fmt::Display for TripleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.i, self.j, self.t, self.p)
    }
}

pub fn triple_type(x: Subset, y: Subset, z: Subset) -> TripleType {
    TripleType {
        i: x.meet(y),
        j: x.meet(z),
        t: y.meet(z),
        p: x.intersection(y).meet(z),
    }
}

/// The index set `I_m` in lexicographic order, with O(1) lookup.
#[derive(Clone, Debug)]
pub struct TypeIndexSet {
    m: usize,
    types: Vec<TripleType>,
    lookup: Vec<u32>,
}

const NO_INDEX: u32 = u32::MAX;

pub fn enum_valid_types(m: usize) -> TypeIndexSet {
    let mut types = Vec::new();
    for i in 0..=m {
        for j in 0..=m {
            for t in 0..=m {
                for p in 0..=m {
                    let tt = TripleType::new(i, j, t, p);
                    if tt.is_valid(m) {
                        types.push(tt);
                    }
                }
            }
        }
    }
    let side = m + 1;
    let mut lookup = vec![NO_INDEX; side.pow(4)];
    for (k, tt) in types.iter().enumerate() {
        lookup[((tt.i * side + tt.j) * side + tt.t) * side + tt.p] = k as u32;
    }
    TypeIndexSet { m, types, lookup }
}

impl TypeIndexSet {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn types(&self) -> &[TripleType] {
        &self.types
    }

    pub fn get(&self, k: usize) -> TripleType {
        self.types[k]
    }

    pub fn index_of(&self, tt: TripleType) -> Option<usize> {
        let side = self.m + 1;
        if tt.i >= side || tt.j >= side || tt.t >= side || tt.p >= side {
            return None;
        }
        match self.lookup[((tt.i * side + tt.j) * side + tt.t) * side + tt.p] {
            NO_INDEX => None,
            k => Some(k as usize),
        }
    }

    /// Like [`index_of`](Self::index_of) but reports an invalid type as an error.
    pub fn require(&self, tt: TripleType) -> Result<usize> {
        self.index_of(tt).ok_or(Error::InvalidType(tt, self.m))
    }
}

/// The canonical triple of type `tt`, with `x = {1, .., m}`.
pub fn orbit_representative(tt: TripleType, m: usize) -> Result<(Subset, Subset, Subset)> {
    if !tt.is_valid(m) {
        return Err(Error::InvalidType(tt, m));
    }
    let TripleType { i, j, t, p } = tt;
    let x = Subset::interval(1, m);
    let y = Subset::interval(1, i).union(Subset::interval(m + 1, 2 * m - i));
    let z = Subset::interval(1, p)
        .union(Subset::interval(i + 1, i + j - p))
        .union(Subset::interval(m + 1, m + t - p))
        .union(Subset::interval(2 * m - i + 1, 3 * m + p - i - j - t));
    Ok((x, y, z))
}

/// Ground-set permutations generating the stabilizer `Sym({1..m}) × Sym({m+1..2m+1})`
/// of the base vertex: a transposition and a full cycle on each part that has
/// at least two points.
pub fn stabilizer_generators(m: usize) -> Vec<Vec<usize>> {
    let n = 2 * m + 1;
    let identity: Vec<usize> = (1..=n).collect();
    let mut gens = Vec::new();
    for (lo, hi) in [(1, m), (m + 1, n)] {
        if hi - lo < 1 {
            continue;
        }
        let mut swap = identity.clone();
        swap.swap(lo - 1, lo);
        gens.push(swap);
        let mut cycle = identity.clone();
        for e in lo..=hi {
            cycle[e - 1] = if e == hi { lo } else { e + 1 };
        }
        gens.push(cycle);
    }
    gens
}

/// Every element of the base-vertex stabilizer, as ground-set permutations.
/// The group has `m! (m+1)!` elements, so this is for small `m` only.
pub fn stabilizer_elements(m: usize) -> Vec<Vec<usize>> {
    let n = 2 * m + 1;
    let left: Vec<Vec<usize>> = (1..=m).permutations(m).collect();
    let right: Vec<Vec<usize>> = (m + 1..=n).permutations(m + 1).collect();
    let mut out = Vec::with_capacity(left.len() * right.len());
    for l in &left {
        for r in &right {
            out.push(l.iter().chain(r.iter()).copied().collect());
        }
    }
    out
}
