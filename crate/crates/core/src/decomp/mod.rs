//! Homogeneous components of the standard module and the resulting
//! block-diagonalization of `T`.
//!
//! The pipeline runs per endpoint `ν`: the space `L_ν` on sphere `ν`, seeds
//! cut out of it by the primitive idempotents, then one b-basis per seed.
//! Every step is exact and checked; see [`decompose`].

mod blocks;
mod modules;
mod seeds;
mod upsilon;

pub use blocks::{representation_matrices, verify_block_structure, RepresentationBlocks};
pub use modules::{
    b_vector_type, build_b_vectors, build_component, check_module_invariants, check_multiplicities,
    check_orthogonal_basis, HomogeneousComponent, ModuleBasis,
};
pub use seeds::{
    apply_block, apply_sphere_local, compute_l_nu, dual_support, endpoint_seeds, idempotent_quadratic_forms,
    operator_product_images, project_lambda, SeedSpace, SphereVector,
};
pub use upsilon::{build_upsilon, in_upsilon, UpsilonSet};

use rayon::prelude::*;

use crate::binomial;
use crate::error::{Error, Result};
use crate::linalg::{Rational, RationalVector};
use crate::odd_graph::GraphContext;
use crate::terwilliger::{
    center_dimension, generator_coordinates, select_ordering, CheckItem, Report, SpectralData, TerwilligerAlgebra,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DecompOptions {
    /// Also project for every `(μ, d)` outside the classification, expecting
    /// nothing. Quadratic in cost, off by default.
    pub diagnostics: bool,
}

/// One line of the classification table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UpsilonRow {
    pub mu: usize,
    pub d: usize,
    pub block_dim: usize,
    pub multiplicity: usize,
}

/// Dimension accounting and every check run by [`decompose`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDiagReport {
    pub m: usize,
    pub rows: Vec<UpsilonRow>,
    /// `dim L_ν` for `ν = 0..m`.
    pub l_dims: Vec<usize>,
    /// `Σ m(μ,d) (d+1)`.
    pub vector_count: usize,
    /// `Σ (d+1)²`.
    pub block_square_sum: usize,
    /// Span of the elements acting as a scalar on every block.
    pub center_dimension: usize,
    /// Center of the algebra computed from structure constants alone.
    pub algebra_center_dimension: usize,
    /// Dimension of the projection for pairs outside the classification, when requested.
    pub negative_controls: Vec<((usize, usize), usize)>,
    pub checks: Vec<Report>,
}

impl BlockDiagReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Report::passed)
    }

    pub fn require(&self) -> Result<()> {
        self.checks.iter().try_for_each(Report::require)
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub upsilon: UpsilonSet,
    /// The spectral data with the ordering actually used.
    pub spectral: SpectralData,
    pub components: Vec<HomogeneousComponent>,
    pub blocks: RepresentationBlocks,
    pub report: BlockDiagReport,
}

impl Decomposition {
    /// Columns of the change of basis with their squared norms, grouped by
    /// component, then copy, then sphere.
    pub fn change_of_basis(&self, ctx: &GraphContext) -> Vec<(RationalVector, Rational)> {
        self.components
            .iter()
            .flat_map(|c| c.modules.iter())
            .flat_map(|module| module.vectors.iter().zip(&module.squared_norms))
            .map(|(v, n)| (v.to_global(ctx), Rational::from_integer(n.clone())))
            .collect()
    }
}

/// `table[ν][μ]`: seed spaces for every endpoint and dual endpoint.
fn seed_table(l: &[Vec<SphereVector>], sd: &SpectralData, ctx: &GraphContext) -> Vec<Vec<SeedSpace>> {
    l.par_iter().enumerate().map(|(nu, l_nu)| endpoint_seeds(nu, l_nu, sd, ctx)).collect()
}

/// Whether an ordering realizes the classification: every pair gets a
/// nonempty seed space and the copies fill the standard module.
fn ordering_conforms(upsilon: &UpsilonSet, l: &[Vec<SphereVector>], sd: &SpectralData, ctx: &GraphContext) -> bool {
    let m = ctx.m();
    let table = seed_table(l, sd, ctx);
    let counts: Vec<usize> = upsilon.pairs().iter().map(|&(mu, d)| table[m - d][mu].multiplicity()).collect();
    let filled: usize = counts.iter().zip(upsilon.pairs()).map(|(c, (_, d))| c * (d + 1)).sum();
    counts.iter().all(|&c| c > 0) && filled == binomial(2 * m + 1, m)
}

pub fn decompose(alg: &TerwilligerAlgebra, opts: DecompOptions) -> Result<Decomposition> {
    let ctx = &alg.ctx;
    let m = ctx.m();
    let upsilon = build_upsilon(m)?;
    let l: Vec<Vec<SphereVector>> = (0..=m).into_par_iter().map(|nu| compute_l_nu(nu, ctx, &alg.distance)).collect();

    let candidates = &alg.spectral.candidate_orderings;
    let spectral = if candidates.len() > 1 {
        let chosen = select_ordering(candidates, &alg.spectral.eigenvalues, |o| {
            ordering_conforms(&upsilon, &l, &alg.spectral.clone().with_ordering(o.to_vec()), ctx)
        })
        .expect("candidates are nonempty");
        alg.spectral.clone().with_ordering(chosen)
    } else {
        alg.spectral.clone()
    };

    let table = seed_table(&l, &spectral, ctx);
    let components: Vec<HomogeneousComponent> = upsilon
        .pairs()
        .iter()
        .map(|&(mu, d)| {
            let seeds = table[m - d][mu].clone();
            if seeds.basis.is_empty() {
                return Err(Error::consistency(format!("seed space for (μ,d) = ({mu},{d}) is empty")));
            }
            build_component(mu, d, seeds, &alg.orbit_basis, ctx)
        })
        .collect::<Result<_>>()?;

    let rows: Vec<UpsilonRow> = components
        .iter()
        .map(|c| UpsilonRow { mu: c.mu, d: c.d, block_dim: c.block_dim(), multiplicity: c.multiplicity() })
        .collect();
    let l_dims: Vec<usize> = l.iter().map(Vec::len).collect();
    let vector_count: usize = rows.iter().map(|r| r.multiplicity * r.block_dim).sum();
    let block_square_sum: usize = rows.iter().map(|r| r.block_dim * r.block_dim).sum();

    let mut accounting = Report::new("accounting");
    accounting.push(CheckItem::new(
        "every class occurs",
        rows.iter().all(|r| r.multiplicity >= 1),
        format!("{} classes", rows.len()),
    ));
    accounting.push(CheckItem::new(
        "Σ m(μ,d)(d+1) = |X|",
        vector_count == binomial(2 * m + 1, m),
        format!("{vector_count}"),
    ));
    accounting.push(CheckItem::new(
        "Σ (d+1)² = dim T",
        block_square_sum == alg.orbit_basis.len(),
        format!("{block_square_sum}"),
    ));
    accounting.push(CheckItem::new(
        "component count",
        rows.len() == (m + 2) * (m + 2) / 4,
        format!("{}", rows.len()),
    ));
    for nu in 0..=m {
        let from_rows: usize = rows.iter().filter(|r| r.d == m - nu).map(|r| r.multiplicity).sum();
        accounting.push(CheckItem::new(
            format!("dim L_{nu}"),
            from_rows == l_dims[nu],
            format!("kernel {}, seeds {from_rows}", l_dims[nu]),
        ));
    }

    let orthogonal = check_orthogonal_basis(&components, ctx);
    let invariants = check_module_invariants(&components, alg.distance.indicator(1), &spectral, ctx)?;
    let multiplicities = check_multiplicities(&components, &spectral, m);
    let (blocks, mut blockdiag, center) = verify_block_structure(&components, &alg.orbit_basis, ctx)?;

    let gens = generator_coordinates(&alg.orbit_basis, &alg.dual, &alg.distance)?;
    let algebra_center = center_dimension(&alg.structure, &gens);
    blockdiag.push(CheckItem::new(
        "center dimension",
        center == upsilon.len() && algebra_center == upsilon.len(),
        format!("block scalars {center}, commutant of generators {algebra_center}, |Υ| = {}", upsilon.len()),
    ));

    let mut negative_controls = Vec::new();
    let mut checks = vec![accounting, orthogonal, invariants, multiplicities, blockdiag];
    if opts.diagnostics {
        negative_controls = upsilon
            .complement()
            .iter()
            .map(|&(mu, d)| ((mu, d), table[m - d][mu].multiplicity()))
            .collect();
        let mut controls = Report::new("negative controls");
        for &((mu, d), dim) in &negative_controls {
            controls.push(CheckItem::new(format!("(μ,d)=({mu},{d})"), dim == 0, format!("dimension {dim}")));
        }
        checks.push(controls);
    }

    let report = BlockDiagReport {
        m,
        rows,
        l_dims,
        vector_count,
        block_square_sum,
        center_dimension: center,
        algebra_center_dimension: algebra_center,
        negative_controls,
        checks,
    };
    Ok(Decomposition { upsilon, spectral, components, blocks, report })
}
