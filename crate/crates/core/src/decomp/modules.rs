//! b-vector bases of the irreducible modules and their assembly into
//! homogeneous components.

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::binomial;
use crate::error::{Error, Result};
use crate::odd_graph::{GraphContext, TripleType};
use crate::terwilliger::{CheckItem, OrbitBasis, Report, SpectralData};

use super::seeds::{apply_block, dual_support, SeedSpace, SphereVector};

/// Label of the orbit matrix sending a seed on sphere `ν` to `b_k` on sphere `k`.
pub fn b_vector_type(nu: usize, k: usize, m: usize) -> TripleType {
    let e = k - nu;
    match (nu % 2, e % 2) {
        (0, 1) => TripleType::new((k - 1) / 2, (2 * m - nu) / 2, (e - 1) / 2, (e - 1) / 2),
        (0, _) => TripleType::new((2 * m - k) / 2, (2 * m - nu) / 2, (2 * m - k + nu) / 2, (2 * m - k) / 2),
        (_, 1) => TripleType::new((2 * m - k) / 2, (nu - 1) / 2, (e - 1) / 2, 0),
        _ => TripleType::new((k - 1) / 2, (nu - 1) / 2, (2 * m - k + nu) / 2, (nu - 1) / 2),
    }
}

/// `b_ν, .., b_m` for the seed `xi` on sphere `ν`. Each `b_k` is checked to
/// be nonzero; they are pairwise orthogonal because they sit on different
/// spheres.
pub fn build_b_vectors(xi: &SphereVector, ob: &OrbitBasis, ctx: &GraphContext) -> Result<Vec<SphereVector>> {
    let m = ctx.m();
    let nu = xi.sphere();
    (nu..=m)
        .map(|k| {
            let tt = b_vector_type(nu, k, m);
            let b = apply_block(&ob.get(tt)?.matrix, ctx, k, xi);
            if b.is_zero() {
                return Err(Error::consistency(format!("b-vector for ν = {nu}, k = {k} vanishes (type {tt})")));
            }
            Ok(b)
        })
        .collect()
}

/// One irreducible module: its b-basis and squared norms, `k = ν..m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleBasis {
    pub vectors: Vec<SphereVector>,
    pub squared_norms: Vec<BigInt>,
}

/// All copies of one isomorphism class `(μ, d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousComponent {
    pub mu: usize,
    pub d: usize,
    pub nu: usize,
    pub seeds: SeedSpace,
    pub modules: Vec<ModuleBasis>,
}

impl HomogeneousComponent {
    pub fn multiplicity(&self) -> usize {
        self.modules.len()
    }

    pub fn block_dim(&self) -> usize {
        self.d + 1
    }
}

pub fn build_component(mu: usize, d: usize, seeds: SeedSpace, ob: &OrbitBasis, ctx: &GraphContext) -> Result<HomogeneousComponent> {
    let modules = seeds
        .basis
        .par_iter()
        .map(|xi| {
            let vectors = build_b_vectors(xi, ob, ctx)?;
            let squared_norms = vectors.iter().map(SphereVector::norm2).collect();
            Ok(ModuleBasis { vectors, squared_norms })
        })
        .collect::<Result<_>>()?;
    Ok(HomogeneousComponent { mu, d, nu: seeds.nu, seeds, modules })
}

/// Total count and exact orthogonality of the whole b-vector collection.
/// Vectors on different spheres have disjoint supports; every pair on the
/// same sphere has its inner product computed.
pub fn check_orthogonal_basis(components: &[HomogeneousComponent], ctx: &GraphContext) -> Report {
    let m = ctx.m();
    let mut report = Report::new("orthogonal basis");
    let mut by_sphere: Vec<Vec<&SphereVector>> = vec![Vec::new(); m + 1];
    for c in components {
        for module in &c.modules {
            for v in &module.vectors {
                by_sphere[v.sphere()].push(v);
            }
        }
    }
    let total: usize = by_sphere.iter().map(Vec::len).sum();
    let expected = binomial(2 * m + 1, m);
    report.push(CheckItem::new("vector count", total == expected, format!("{total} vectors, |X| = {expected}")));
    let zero = by_sphere.iter().flatten().filter(|v| v.is_zero()).count();
    report.push(CheckItem::new("all vectors nonzero", zero == 0, format!("{zero} zero vectors")));
    for (k, vs) in by_sphere.iter().enumerate() {
        let size = ctx.sphere(k).len();
        let bad: usize = (0..vs.len())
            .into_par_iter()
            .map(|a| (a + 1..vs.len()).filter(|&b| !vs[a].dot(vs[b]).is_zero()).count())
            .sum();
        report.push(CheckItem::new(
            format!("Gram matrix on sphere {k} diagonal"),
            bad == 0 && vs.len() == size,
            format!("{} vectors on a sphere of size {size}, {bad} nonorthogonal pairs", vs.len()),
        ));
    }
    report
}

/// Structural witnesses per component: sphere support `ν..m`, dual support
/// `μ..μ+d` on every b-vector, and `E*_{k+1} A_1 b_k != 0`.
pub fn check_module_invariants(
    components: &[HomogeneousComponent],
    adjacency: &crate::linalg::IndicatorMatrix,
    sd: &SpectralData,
    ctx: &GraphContext,
) -> Result<Report> {
    let m = ctx.m();
    let mut report = Report::new("module invariants");
    for c in components {
        let label = format!("(μ,d)=({},{})", c.mu, c.d);
        let spheres_ok = c.modules.iter().all(|module| {
            module.vectors.iter().map(SphereVector::sphere).eq(c.nu..=m)
        });
        report.push(CheckItem::new(
            format!("{label} sphere support"),
            spheres_ok && c.nu + c.d == m,
            format!("E*_k nonzero exactly for {}..={m}", c.nu),
        ));
        let expected: Vec<usize> = (c.mu..=c.mu + c.d).collect();
        let supports: Vec<Vec<Vec<usize>>> = c
            .modules
            .par_iter()
            .map(|module| module.vectors.iter().map(|v| dual_support(ctx, sd, v)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        let mut dual_ok = true;
        for module in &supports {
            let mut union: Vec<usize> = module.iter().flatten().copied().collect();
            union.sort_unstable();
            union.dedup();
            dual_ok &= union == expected && module[0].first() == Some(&c.mu);
        }
        report.push(CheckItem::new(
            format!("{label} dual support"),
            dual_ok,
            format!("E_j nonzero exactly for {}..={}", c.mu, c.mu + c.d),
        ));
        let chain_ok = c.modules.iter().all(|module| {
            module.vectors[..c.d]
                .iter()
                .all(|b| !apply_block(adjacency, ctx, b.sphere() + 1, b).is_zero())
        });
        report.push(CheckItem::new(format!("{label} raising chain"), chain_ok, "E*_{k+1} A_1 b_k != 0"));
    }
    Ok(report)
}

/// For each idempotent index `i` (Q-polynomial order), the sum of `m(μ,d)`
/// over components with `μ <= i <= μ+d` against `trace(E_i)`.
pub fn check_multiplicities(components: &[HomogeneousComponent], sd: &SpectralData, m: usize) -> Report {
    let mut report = Report::new("multiplicity cross-check");
    for i in 0..=m {
        let from_modules: usize = components
            .iter()
            .filter(|c| c.mu <= i && i <= c.mu + c.d)
            .map(HomogeneousComponent::multiplicity)
            .sum();
        let trace = sd.ordered_multiplicity(i);
        report.push(CheckItem::new(
            format!("E_{i} (θ = {})", sd.ordered_eigenvalue(i)),
            from_modules == trace,
            format!("modules {from_modules}, trace {trace}"),
        ));
    }
    report
}
