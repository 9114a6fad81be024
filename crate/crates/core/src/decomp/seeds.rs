//! Vectors supported on one distance sphere. The seed spaces are cut out of
//! `L_ν` by the primitive idempotents.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{gram_schmidt_primitive, kernel_basis, IndicatorMatrix, Rational, RationalVector};
use crate::odd_graph::GraphContext;
use crate::terwilliger::{BoseMesnerElement, DistanceMatrices, SpectralData};

use super::upsilon::in_upsilon;

/// An integer vector supported on the distance-`sphere` sphere of the base
/// vertex, in sphere-local coordinates (the order of `ctx.sphere(sphere)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereVector {
    sphere: usize,
    entries: Vec<BigInt>,
}

impl SphereVector {
    pub fn new(sphere: usize, entries: Vec<BigInt>) -> Self {
        SphereVector { sphere, entries }
    }

    pub fn zeros(ctx: &GraphContext, sphere: usize) -> Self {
        SphereVector { sphere, entries: vec![BigInt::zero(); ctx.sphere(sphere).len()] }
    }

    pub fn sphere(&self) -> usize {
        self.sphere
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Zero for vectors on different spheres: the supports are disjoint.
    pub fn dot(&self, other: &SphereVector) -> BigInt {
        if self.sphere != other.sphere {
            return BigInt::zero();
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn norm2(&self) -> BigInt {
        self.dot(self)
    }

    pub fn to_local(&self) -> RationalVector {
        RationalVector::from_vec(self.entries.iter().cloned().map(Rational::from_integer).collect())
    }

    /// The vector in `R^X`.
    pub fn to_global(&self, ctx: &GraphContext) -> RationalVector {
        let mut out = vec![Rational::zero(); ctx.vertex_count()];
        for (&x, v) in ctx.sphere(self.sphere).iter().zip(&self.entries) {
            out[x] = Rational::from_integer(v.clone());
        }
        RationalVector::from_vec(out)
    }

    /// Primitive integer multiple of a local rational vector.
    pub fn primitive_from_local(sphere: usize, v: &RationalVector) -> Self {
        let p = v.to_primitive();
        SphereVector {
            sphere,
            entries: p.entries().iter().map(|x| x.to_integer()).collect(),
        }
    }
}

/// `(E*_target A E*_{v.sphere}) v` for a 0/1 matrix `A`, as a vector on `target`.
pub fn apply_block(ind: &IndicatorMatrix, ctx: &GraphContext, target: usize, v: &SphereVector) -> SphereVector {
    let entries = ctx
        .sphere(target)
        .iter()
        .map(|&x| {
            ind.row(x)
                .iter()
                .map(|&y| y as usize)
                .filter(|&y| ctx.sphere_of(y) == v.sphere)
                .map(|y| &v.entries[ctx.sphere_position(y)])
                .filter(|e| !e.is_zero())
                .sum()
        })
        .collect();
    SphereVector { sphere: target, entries }
}

/// `E*_k A_h E*_k v` for every `h`, where `k` is the sphere of `v`, as `out[h]`
/// local vectors. Integral because `v` is.
fn distance_sums(ctx: &GraphContext, v: &SphereVector) -> Vec<Vec<BigInt>> {
    let sphere = ctx.sphere(v.sphere);
    let m = ctx.m();
    let mut out = vec![vec![BigInt::zero(); sphere.len()]; m + 1];
    for (a, &x) in sphere.iter().enumerate() {
        for (b, &y) in sphere.iter().enumerate() {
            if !v.entries[b].is_zero() {
                out[ctx.distance(x, y)][a] += &v.entries[b];
            }
        }
    }
    out
}

/// `E*_k E E*_k v` for a Bose–Mesner element `E`, `k` the sphere of `v`.
pub fn apply_sphere_local(ctx: &GraphContext, e: &BoseMesnerElement, v: &SphereVector) -> RationalVector {
    combine(&distance_sums(ctx, v), e)
}

fn combine(sums: &[Vec<BigInt>], e: &BoseMesnerElement) -> RationalVector {
    let len = sums[0].len();
    let out = (0..len)
        .map(|a| {
            e.coeffs()
                .iter()
                .zip(sums)
                .filter(|(c, s)| !c.is_zero() && !s[a].is_zero())
                .map(|(c, s)| c * &s[a])
                .sum()
        })
        .collect();
    RationalVector::from_vec(out)
}

/// `vᵀ E_j v` for every idempotent, in Q-polynomial order. Each value is
/// `|E_j v|²`, so it vanishes exactly when `E_j v = 0`.
pub fn idempotent_quadratic_forms(ctx: &GraphContext, sd: &SpectralData, v: &SphereVector) -> Vec<Rational> {
    let sums = distance_sums(ctx, v);
    // g[h] = vᵀ A_h v restricted to the sphere
    let g: Vec<BigInt> = sums
        .iter()
        .map(|s| s.iter().zip(&v.entries).map(|(a, b)| a * b).sum())
        .collect();
    (0..=ctx.m())
        .map(|j| {
            sd.ordered_projector(j)
                .coeffs()
                .iter()
                .zip(&g)
                .map(|(c, gh)| c * Rational::from_integer(gh.clone()))
                .sum()
        })
        .collect()
}

/// Indices `j` (Q-polynomial order) with `E_j v != 0`.
pub fn dual_support(ctx: &GraphContext, sd: &SpectralData, v: &SphereVector) -> Result<Vec<usize>> {
    let forms = idempotent_quadratic_forms(ctx, sd, v);
    if forms.iter().any(Signed::is_negative) {
        return Err(Error::consistency("negative value of vᵀ E_j v"));
    }
    Ok(forms.iter().enumerate().filter(|(_, q)| !q.is_zero()).map(|(j, _)| j).collect())
}

/// Basis of `L_ν`: vectors on sphere `ν` killed by `E*_{ν-1} A_1`, i.e. the
/// kernel of the sphere-`(ν-1)` by sphere-`ν` block of `A_1`.
pub fn compute_l_nu(nu: usize, ctx: &GraphContext, dm: &DistanceMatrices) -> Vec<SphereVector> {
    let size = ctx.sphere(nu).len();
    if nu == 0 {
        return (0..size)
            .map(|k| {
                let mut e = vec![BigInt::zero(); size];
                e[k] = 1.into();
                SphereVector::new(0, e)
            })
            .collect();
    }
    let block = dm.adjacency().submatrix(ctx.sphere(nu - 1), ctx.sphere(nu));
    kernel_basis(&block)
        .iter()
        .map(|v| SphereVector::primitive_from_local(nu, v))
        .collect()
}

/// The orthogonal seed basis of one homogeneous component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeedSpace {
    pub nu: usize,
    pub mu: usize,
    pub basis: Vec<SphereVector>,
    pub squared_norms: Vec<BigInt>,
}

impl SeedSpace {
    pub fn multiplicity(&self) -> usize {
        self.basis.len()
    }
}

fn orthogonal_seeds(nu: usize, mu: usize, images: &[RationalVector]) -> SeedSpace {
    let (basis, squared_norms) = gram_schmidt_primitive(images)
        .into_iter()
        .map(|(v, n)| (SphereVector::primitive_from_local(nu, &v), n.to_integer()))
        .unzip();
    SeedSpace { nu, mu, basis, squared_norms }
}

/// Seed spaces of endpoint `ν` for `μ = 0..=m`, in order.
///
/// The seeds for `μ` span `E*_ν E_μ C_μ`, where `C_μ` is the orthogonal
/// complement in `L_ν` of all seeds found for smaller `μ`. On that complement
/// `E*_ν E_μ` acts as a nonzero scalar on the `(μ, m-ν)` part and kills the
/// rest, so the image is exactly that part.
pub fn endpoint_seeds(nu: usize, l_nu: &[SphereVector], sd: &SpectralData, ctx: &GraphContext) -> Vec<SeedSpace> {
    let mut found: Vec<(RationalVector, Rational)> = Vec::new();
    let mut out = Vec::with_capacity(ctx.m() + 1);
    for mu in 0..=ctx.m() {
        let images: Vec<RationalVector> = l_nu
            .iter()
            .map(|xi| {
                let mut w = xi.to_local();
                for (s, norm) in &found {
                    let c = w.dot(s) / norm;
                    if !c.is_zero() {
                        w.sub_scaled(&c, s);
                    }
                }
                let w = SphereVector::primitive_from_local(nu, &w);
                apply_sphere_local(ctx, sd.ordered_projector(mu), &w)
            })
            .collect();
        let seeds = orthogonal_seeds(nu, mu, &images);
        for (v, n) in seeds.basis.iter().zip(&seeds.squared_norms) {
            found.push((v.to_local(), Rational::from_integer(n.clone())));
        }
        out.push(seeds);
    }
    out
}

/// Images of `L_ν` under `E*_ν E_μ P` with the operator product
/// `P = (I - E*_ν E_lo)(I - E*_ν E_{lo+1}) .. (I - E*_ν E_{μ-1})`,
/// `lo = ⌊(ν+1)/2⌋`, the rightmost factor acting first.
///
/// Each factor only rescales the `(j, m-ν)` part of `L_ν` by `1 - λ`, with
/// `λ = |E_j ξ|² / |ξ|² < 1`, instead of removing it, so these images also
/// pick up lower classes whose dual support reaches `μ`. Kept for comparison;
/// [`endpoint_seeds`] is what the pipeline uses.
pub fn operator_product_images(
    nu: usize,
    mu: usize,
    l_nu: &[SphereVector],
    sd: &SpectralData,
    ctx: &GraphContext,
) -> SeedSpace {
    let lo = nu.div_ceil(2);
    let images: Vec<RationalVector> = l_nu
        .iter()
        .map(|xi| {
            let mut w = xi.clone();
            for j in (lo..mu).rev() {
                let ew = apply_sphere_local(ctx, sd.ordered_projector(j), &w);
                let rest = w.to_local().sub(&ew);
                w = SphereVector::primitive_from_local(nu, &rest);
            }
            apply_sphere_local(ctx, sd.ordered_projector(mu), &w)
        })
        .collect();
    orthogonal_seeds(nu, mu, &images)
}

/// Seed space of `(μ, m - ν)`, failing if it is empty for a pair in the
/// classification.
pub fn project_lambda(
    nu: usize,
    mu: usize,
    l_nu: &[SphereVector],
    sd: &SpectralData,
    ctx: &GraphContext,
) -> Result<SeedSpace> {
    let m = ctx.m();
    let seeds = endpoint_seeds(nu, l_nu, sd, ctx).swap_remove(mu);
    if seeds.basis.is_empty() && in_upsilon(m, mu, m - nu) {
        return Err(Error::consistency(format!("seed space for (μ,d) = ({mu},{}) is empty", m - nu)));
    }
    Ok(seeds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terwilliger::TerwilligerAlgebra;

    #[test]
    fn l_nu_dims_m3() {
        let alg = TerwilligerAlgebra::build(3).unwrap();
        let dims: Vec<usize> = (0..=3).map(|nu| compute_l_nu(nu, &alg.ctx, &alg.distance).len()).collect();
        assert_eq!(dims, vec![1, 3, 8, 6]);
    }

    #[test]
    fn l_nu_vectors_are_killed() {
        let alg = TerwilligerAlgebra::build(3).unwrap();
        for nu in 1..=3 {
            for v in compute_l_nu(nu, &alg.ctx, &alg.distance) {
                assert!(apply_block(alg.distance.indicator(1), &alg.ctx, nu - 1, &v).is_zero());
                assert!(!v.is_zero());
            }
        }
    }

    #[test]
    fn primary_seed() {
        let alg = TerwilligerAlgebra::build(3).unwrap();
        let l0 = compute_l_nu(0, &alg.ctx, &alg.distance);
        let seeds = project_lambda(0, 0, &l0, &alg.spectral, &alg.ctx).unwrap();
        assert_eq!(seeds.multiplicity(), 1);
        assert_eq!(seeds.basis[0].entries(), &[BigInt::from(1)]);
    }

    #[test]
    fn quadratic_forms_sum_to_norm() {
        let alg = TerwilligerAlgebra::build(3).unwrap();
        for v in compute_l_nu(2, &alg.ctx, &alg.distance) {
            let total: Rational = idempotent_quadratic_forms(&alg.ctx, &alg.spectral, &v).into_iter().sum();
            assert_eq!(total, Rational::from_integer(v.norm2()));
        }
    }

    #[test]
    fn endpoint_seed_counts_m3() {
        let alg = TerwilligerAlgebra::build(3).unwrap();
        let counts: Vec<Vec<usize>> = (0..=3)
            .map(|nu| {
                let l = compute_l_nu(nu, &alg.ctx, &alg.distance);
                endpoint_seeds(nu, &l, &alg.spectral, &alg.ctx).iter().map(SeedSpace::multiplicity).collect()
            })
            .collect();
        assert_eq!(counts, vec![vec![1, 0, 0, 0], vec![0, 3, 0, 0], vec![0, 2, 6, 0], vec![0, 0, 2, 4]]);
    }

    #[test]
    fn operator_product_overcounts() {
        // the second class at ν = 2 also receives the two copies of the first
        let alg = TerwilligerAlgebra::build(3).unwrap();
        let l = compute_l_nu(2, &alg.ctx, &alg.distance);
        assert_eq!(operator_product_images(2, 1, &l, &alg.spectral, &alg.ctx).multiplicity(), 2);
        assert_eq!(operator_product_images(2, 2, &l, &alg.spectral, &alg.ctx).multiplicity(), 8);
    }

    #[test]
    fn sphere_vector_dot() {
        let a = SphereVector::new(1, vec![1.into(), 2.into()]);
        let b = SphereVector::new(1, vec![3.into(), (-1).into()]);
        let c = SphereVector::new(2, vec![5.into(), 5.into()]);
        assert_eq!(a.dot(&b), BigInt::from(1));
        assert!(a.dot(&c).is_zero());
    }
}
