//! Exact identity checks on the orbit basis: generator identities, the
//! almost-bipartite block pattern, centralizer commutation, generation of the
//! whole algebra, and the alternating product identities.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::binomial;
use crate::error::{Error, Result};
use crate::linalg::{int, kernel_basis, EchelonBasis, Rational, RationalMatrix};
use crate::odd_graph::{stabilizer_elements, stabilizer_generators, GraphContext, TripleType, BASE_INDEX};

use super::distance::{DistanceMatrices, DualIdempotents};
use super::orbit::{identity_coordinates, OrbitBasis, StructureConstants};

/// One named identity and whether it held.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckItem {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckItem {
    pub fn new(label: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckItem { label: label.into(), passed, detail: detail.into() }
    }
}

/// Outcome of one named check, item by item in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub check: String,
    pub items: Vec<CheckItem>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report { check: check.into(), items: Vec::new() }
    }

    pub fn push(&mut self, item: CheckItem) {
        self.items.push(item);
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckItem> {
        self.items.iter().filter(|i| !i.passed)
    }

    /// Turns the first failure into an error.
    pub fn require(&self) -> Result<()> {
        match self.failures().next() {
            None => Ok(()),
            Some(f) => Err(Error::consistency(format!("{}: {} failed ({})", self.check, f.label, f.detail))),
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed = self.failures().count();
        write!(f, "{}: {} items, {} failed", self.check, self.items.len(), failed)
    }
}

/// Label of the orbit matrix equal to `E*_i`.
pub fn estar_type(i: usize, m: usize) -> TripleType {
    if i % 2 == 0 {
        let a = (2 * m - i) / 2;
        TripleType::new(a, a, m, a)
    } else {
        let a = (i - 1) / 2;
        TripleType::new(a, a, m, a)
    }
}

/// Label of the orbit matrix equal to `E*_{i+1} A_1 E*_i`, `0 <= i < m`.
pub fn raising_type(i: usize, m: usize) -> TripleType {
    if i % 2 == 0 {
        TripleType::new(i / 2, (2 * m - i) / 2, 0, 0)
    } else {
        TripleType::new((2 * m - i - 1) / 2, (i - 1) / 2, 0, 0)
    }
}

/// Label of the orbit matrix equal to `E*_i A_1 E*_{i+1}`, `0 <= i < m`.
pub fn lowering_type(i: usize, m: usize) -> TripleType {
    if i % 2 == 0 {
        TripleType::new((2 * m - i) / 2, i / 2, 0, 0)
    } else {
        TripleType::new((i - 1) / 2, (2 * m - i - 1) / 2, 0, 0)
    }
}

/// Label of the orbit matrix equal to `E*_m A_1 E*_m`.
pub fn flat_type(m: usize) -> TripleType {
    TripleType::new(m / 2, m / 2, 0, 0)
}

/// `E*_{i+k} A_1 E*_{i+k-1} .. A_1 E*_i = coefficient * M`, for `k >= 1` and
/// `i + k <= m`. Returns the coefficient, the label of `M` and the parity case.
pub fn alternating_product_term(i: usize, k: usize, m: usize) -> (u64, TripleType, &'static str) {
    let h = if k % 2 == 1 { (k - 1) / 2 } else { k / 2 };
    let fact: u64 = (1..=h as u64).product();
    match (i % 2, k % 2) {
        (0, 1) => (
            fact * fact * (k as u64 + 1) / 2,
            TripleType::new((i + k - 1) / 2, (2 * m - i) / 2, (k - 1) / 2, (k - 1) / 2),
            "i even, k odd",
        ),
        (0, 0) => (
            fact * fact,
            TripleType::new((2 * m - i - k) / 2, (2 * m - i) / 2, (2 * m - k) / 2, (2 * m - i - k) / 2),
            "i even, k even",
        ),
        (1, 1) => (
            fact * fact * (k as u64 + 1) / 2,
            TripleType::new((2 * m - i - k) / 2, (i - 1) / 2, (k - 1) / 2, 0),
            "i odd, k odd",
        ),
        _ => (
            fact * fact,
            TripleType::new((i + k - 1) / 2, (i - 1) / 2, (2 * m - k) / 2, (i - 1) / 2),
            "i odd, k even",
        ),
    }
}

fn check_equal(
    ob: &OrbitBasis,
    label: String,
    actual: &RationalMatrix,
    coefficient: u64,
    tt: TripleType,
) -> CheckItem {
    let m = ob.types().m();
    let Ok(element) = ob.get(tt) else {
        return CheckItem::new(label, false, format!("{tt} is not a valid type for m = {m}"));
    };
    let expected = element.matrix.to_matrix().scale(&int(coefficient as i64));
    let passed = *actual == expected;
    let detail = if coefficient == 1 { format!("M{tt}") } else { format!("{coefficient} M{tt}") };
    CheckItem::new(label, passed, detail)
}

/// Counts against closed forms. The orbits must also partition `X × X`.
pub fn verify_dimensions(ctx: &GraphContext, ob: &OrbitBasis) -> Report {
    let m = ctx.m();
    let n = ctx.vertex_count();
    let mut report = Report::new("dims");
    let expected = binomial(m + 4, 4);
    report.push(CheckItem::new(
        "dim T = C(m+4,4)",
        ob.types().len() == expected && ob.len() == expected,
        format!("dim T = {}, C(m+4,4) = {expected}", ob.len()),
    ));
    report.push(CheckItem::new(
        "|X| = C(2m+1,m)",
        n == binomial(2 * m + 1, m),
        format!("|X| = {n}"),
    ));
    let covered: usize = ob.elements().iter().map(|e| e.matrix.nnz()).sum();
    let empty = ob.elements().iter().filter(|e| e.matrix.nnz() == 0).count();
    report.push(CheckItem::new(
        "orbits partition X × X",
        covered == n * n && empty == 0,
        format!("{covered} positions, {empty} empty orbits"),
    ));
    let sizes_ok = (0..=m).all(|i| {
        let expected = if i % 2 == 1 {
            binomial(m, (i - 1) / 2) * binomial(m + 1, (i + 1) / 2)
        } else {
            binomial(m, m - i / 2) * binomial(m + 1, i / 2)
        };
        ctx.sphere(i).len() == expected
    });
    report.push(CheckItem::new("sphere sizes", sizes_ok, format!("{:?}", ctx.sphere_sizes())));
    report
}

/// `E*_j A_1 E*_i`.
fn sphere_block(dual: &DualIdempotents, a: &RationalMatrix, j: usize, i: usize) -> Result<RationalMatrix> {
    dual.get(j).matmul(a)?.matmul(dual.get(i))
}

/// Each generator block of `A_1` and each `E*_i` against its orbit matrix.
/// Every other sphere block of `A_1` must vanish.
pub fn verify_prop35(ob: &OrbitBasis, dual: &DualIdempotents, dm: &DistanceMatrices) -> Result<Report> {
    let m = ob.types().m();
    let a = dm.adjacency();
    let mut report = Report::new("prop35");

    for i in 0..=m {
        let case = if i % 2 == 0 { "even" } else { "odd" };
        report.push(check_equal(ob, format!("E*_{i} ({case})"), dual.get(i), 1, estar_type(i, m)));
    }
    let mut sum = RationalMatrix::zeros(a.rows(), a.cols());
    for i in 0..m {
        let case = if i % 2 == 0 { "even" } else { "odd" };
        let up = sphere_block(dual, a, i + 1, i)?;
        report.push(check_equal(ob, format!("E*_{}A_1E*_{i} ({case})", i + 1), &up, 1, raising_type(i, m)));
        let down = sphere_block(dual, a, i, i + 1)?;
        report.push(check_equal(ob, format!("E*_{i}A_1E*_{} ({case})", i + 1), &down, 1, lowering_type(i, m)));
        for tt in [raising_type(i, m), lowering_type(i, m)] {
            if let Ok(e) = ob.get(tt) {
                sum = sum.add(&e.matrix.to_matrix())?;
            }
        }
    }
    let flat = sphere_block(dual, a, m, m)?;
    report.push(check_equal(ob, format!("E*_{m}A_1E*_{m}"), &flat, 1, flat_type(m)));
    if let Ok(e) = ob.get(flat_type(m)) {
        sum = sum.add(&e.matrix.to_matrix())?;
    }
    report.push(CheckItem::new("A_1 sum formula", sum == *a, "sum of raising, lowering and corner blocks"));

    for j in 0..=m {
        for i in 0..=m {
            let vanishes = i.abs_diff(j) > 1 || (i == j && i < m);
            if vanishes {
                let block = sphere_block(dual, a, j, i)?;
                report.push(CheckItem::new(format!("E*_{j}A_1E*_{i} = 0"), block.is_zero(), "almost bipartite"));
            }
        }
    }
    Ok(report)
}

/// Commutation of every orbit matrix with the vertex permutations induced by
/// the stabilizer generators. For `m <= 3` the orbits of the full stabilizer
/// on pairs are also compared with the triple-type fibers.
pub fn verify_centralizer(ob: &OrbitBasis, ctx: &GraphContext) -> Result<Report> {
    let m = ctx.m();
    let n = ctx.vertex_count();
    let mut report = Report::new("centralizer");
    for (g, perm) in stabilizer_generators(m).iter().enumerate() {
        let pi = ctx.vertex_permutation(perm);
        report.push(CheckItem::new(
            format!("generator {g} fixes x0"),
            pi[BASE_INDEX] == BASE_INDEX,
            format!("{perm:?}"),
        ));
        let commuting = if m <= 4 {
            // P[x][pi(x)] = 1, so (P M)[x][y] = M[pi(x)][y] and (M P)[x][y] = M[x][pi^-1(y)]
            let p = RationalMatrix::from_indicator(n, n, pi.iter().enumerate().map(|(x, &y)| (x, y)))?;
            ob.elements()
                .par_iter()
                .map(|e| {
                    let mm = e.matrix.to_matrix();
                    Ok(p.matmul(&mm)? == mm.matmul(&p)?)
                })
                .collect::<Result<Vec<bool>>>()?
        } else {
            ob.elements()
                .par_iter()
                .map(|e| e.matrix.positions().all(|(x, y)| e.matrix.contains(pi[x], pi[y])))
                .collect()
        };
        let failed: Vec<String> = ob
            .elements()
            .iter()
            .zip(&commuting)
            .filter(|(_, ok)| !**ok)
            .map(|(e, _)| e.label.to_string())
            .collect();
        report.push(CheckItem::new(
            format!("generator {g} commutes with {} elements", ob.len()),
            failed.is_empty(),
            if failed.is_empty() { format!("{perm:?}") } else { format!("fails on {}", failed.join(" ")) },
        ));
    }
    if m <= 3 {
        report.push(stabilizer_orbits_match_types(ob, ctx));
    }
    Ok(report)
}

/// Orbits of the full stabilizer on ordered pairs, compared with the fibers
/// of the type map.
fn stabilizer_orbits_match_types(ob: &OrbitBasis, ctx: &GraphContext) -> CheckItem {
    let n = ctx.vertex_count();
    let group: Vec<Vec<usize>> = stabilizer_elements(ctx.m())
        .iter()
        .map(|g| ctx.vertex_permutation(g))
        .collect();
    let mut orbit_of = vec![usize::MAX; n * n];
    let mut orbits = 0;
    let mut ok = true;
    for start in 0..n * n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let (x, y) = (start / n, start % n);
        let tt = ctx.based_type(x, y);
        for pi in &group {
            let image = pi[x] * n + pi[y];
            orbit_of[image] = orbits;
            ok &= ctx.based_type(pi[x], pi[y]) == tt;
        }
        orbits += 1;
    }
    ok &= orbits == ob.len();
    CheckItem::new(
        format!("stabilizer orbits ({} elements) equal type fibers", group.len()),
        ok,
        format!("{orbits} orbits, {} types", ob.len()),
    )
}

/// Orbit coordinates of `A_1` followed by `E*_0, .., E*_m`.
pub fn generator_coordinates(
    ob: &OrbitBasis,
    dual: &DualIdempotents,
    dm: &DistanceMatrices,
) -> Result<Vec<Vec<Rational>>> {
    let mut gens = vec![ob.coordinates(dm.adjacency())?];
    for e in dual.iter() {
        gens.push(ob.coordinates(e)?);
    }
    Ok(gens)
}

/// Dimension of the algebra generated by `generators`: the identity closed
/// under left multiplication by each generator.
pub fn generated_dimension(sc: &StructureConstants, identity: &[Rational], generators: &[Vec<Rational>]) -> usize {
    let mut span = EchelonBasis::new(sc.size());
    span.insert(identity);
    let mut queue = vec![identity.to_vec()];
    while let Some(v) = queue.pop() {
        for g in generators {
            let product = sc.multiply(g, &v);
            let residual = span.reduce(&product);
            if residual.iter().any(|x| !x.is_zero()) {
                span.insert(&residual);
                queue.push(residual);
            }
        }
    }
    span.len()
}

/// The algebra generated by `A_1` and the `E*_i` is the whole span of the
/// orbit basis.
pub fn verify_generation(
    ob: &OrbitBasis,
    sc: &StructureConstants,
    dual: &DualIdempotents,
    dm: &DistanceMatrices,
) -> Result<Report> {
    let gens = generator_coordinates(ob, dual, dm)?;
    let dim = generated_dimension(sc, &identity_coordinates(ob), &gens);
    let mut report = Report::new("generation");
    report.push(CheckItem::new(
        "closure dimension",
        dim == ob.len(),
        format!("generated {dim}, orbit basis {}", ob.len()),
    ));
    Ok(report)
}

/// Every alternating product `E*_{i+k} A_1 .. A_1 E*_i` with `k >= 1`,
/// `i + k <= m` against its closed form.
pub fn verify_lemma51(ob: &OrbitBasis, dual: &DualIdempotents, dm: &DistanceMatrices) -> Result<Report> {
    let m = ob.types().m();
    let a = dm.adjacency();
    let raising: Vec<RationalMatrix> = (0..m).map(|i| sphere_block(dual, a, i + 1, i)).collect::<Result<_>>()?;
    let items: Vec<Vec<CheckItem>> = (0..m)
        .into_par_iter()
        .map(|i| {
            let mut product = dual.get(i).clone();
            let mut items = Vec::new();
            for k in 1..=m - i {
                product = raising[i + k - 1].matmul(&product)?;
                let (coefficient, tt, case) = alternating_product_term(i, k, m);
                items.push(check_equal(ob, format!("(i,k)=({i},{k}) {case}"), &product, coefficient, tt));
            }
            Ok(items)
        })
        .collect::<Result<_>>()?;
    let mut report = Report::new("lemma51");
    for item in items.into_iter().flatten() {
        report.push(item);
    }
    Ok(report)
}

/// Dimension of the center of the generated algebra: elements commuting with
/// every generator.
pub fn center_dimension(sc: &StructureConstants, generators: &[Vec<Rational>]) -> usize {
    let size = sc.size();
    let mut triplets: HashMap<(usize, usize), Rational> = HashMap::new();
    for (g, gen) in generators.iter().enumerate() {
        for a in 0..size {
            let mut unit = vec![Rational::zero(); size];
            unit[a] = int(1);
            let left = sc.multiply(&unit, gen);
            let right = sc.multiply(gen, &unit);
            for (c, (l, r)) in left.iter().zip(&right).enumerate() {
                let diff = l - r;
                if !diff.is_zero() {
                    triplets.insert((g * size + c, a), diff);
                }
            }
        }
    }
    let rows = generators.len() * size;
    let commutator = RationalMatrix::from_triplets(rows, size, triplets.into_iter().map(|((r, c), v)| (r, c, v)))
        .expect("in range");
    kernel_basis(&commutator).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::odd_graph::{enum_valid_types, enum_vertices};
    use crate::terwilliger::{build_distance_matrices, build_dual_idempotents, build_orbit_basis, structure_constants};

    struct Fixture {
        ctx: GraphContext,
        dm: DistanceMatrices,
        dual: DualIdempotents,
        ob: OrbitBasis,
    }

    fn fixture(m: usize) -> Fixture {
        let ctx = enum_vertices(m).unwrap();
        let dm = build_distance_matrices(&ctx).unwrap();
        let dual = build_dual_idempotents(&ctx, &dm);
        let ob = build_orbit_basis(&ctx, &enum_valid_types(m)).unwrap();
        Fixture { ctx, dm, dual, ob }
    }

    #[test]
    fn generator_identities_small() {
        for m in 1..=4 {
            let f = fixture(m);
            let r = verify_prop35(&f.ob, &f.dual, &f.dm).unwrap();
            assert!(r.passed(), "m={m}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn raising_example_m3() {
        assert_eq!(raising_type(0, 3), TripleType::new(0, 3, 0, 0));
        assert_eq!(flat_type(4), TripleType::new(2, 2, 0, 0));
        assert_eq!(estar_type(0, 1), TripleType::new(1, 1, 1, 1));
    }

    #[test]
    fn alternating_terms_examples() {
        assert_eq!(alternating_product_term(0, 1, 3), (1, TripleType::new(0, 3, 0, 0), "i even, k odd"));
        assert_eq!(alternating_product_term(0, 2, 3), (1, TripleType::new(2, 3, 2, 2), "i even, k even"));
        assert_eq!(alternating_product_term(1, 2, 4), (1, TripleType::new(1, 0, 3, 0), "i odd, k even"));
        assert_eq!(alternating_product_term(0, 3, 3).0, 2);
        assert_eq!(alternating_product_term(0, 4, 4).0, 4);
        assert_eq!(alternating_product_term(0, 5, 5).0, 12);
    }

    #[test]
    fn lemma51_m3() {
        let f = fixture(3);
        let r = verify_lemma51(&f.ob, &f.dual, &f.dm).unwrap();
        assert_eq!(r.items.len(), 6);
        assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn centralizer_m2_and_m3() {
        for m in 2..=3 {
            let f = fixture(m);
            let r = verify_centralizer(&f.ob, &f.ctx).unwrap();
            assert!(r.passed(), "m={m}: {:?}", r.failures().collect::<Vec<_>>());
        }
        assert_eq!(stabilizer_generators(2).len(), 4);
    }

    #[test]
    fn generation_and_center() {
        for (m, dim) in [(1, 5), (2, 15), (3, 35)] {
            let f = fixture(m);
            let sc = structure_constants(&f.ob, &f.ctx).unwrap();
            let r = verify_generation(&f.ob, &sc, &f.dual, &f.dm).unwrap();
            assert!(r.passed(), "m={m}: {r:?}");
            assert_eq!(f.ob.len(), dim);
            let gens = generator_coordinates(&f.ob, &f.dual, &f.dm).unwrap();
            let center = center_dimension(&sc, &gens);
            if m == 3 {
                assert_eq!(center, 6);
            }
        }
    }

    #[test]
    fn a_proper_subset_of_generators_is_smaller() {
        let f = fixture(3);
        let sc = structure_constants(&f.ob, &f.ctx).unwrap();
        let gens = generator_coordinates(&f.ob, &f.dual, &f.dm).unwrap();
        // A_1 alone generates the Bose–Mesner algebra
        assert_eq!(generated_dimension(&sc, &identity_coordinates(&f.ob), &gens[..1]), 4);
    }

    #[test]
    fn broken_matrix_fails_report() {
        let f = fixture(2);
        let mut r = Report::new("x");
        r.push(check_equal(&f.ob, "bad".into(), f.dm.adjacency(), 1, estar_type(0, 2)));
        assert!(!r.passed());
        assert!(r.require().is_err());
    }
}
