//! Eigenvalues, primitive idempotents, Krein parameters and the
//! Q-polynomial ordering.
//!
//! Idempotents live in the Bose–Mesner algebra, so they are carried as
//! coordinates over `A_0, .., A_m` and multiplied with the intersection
//! numbers. [`BoseMesnerElement::to_matrix`] materializes one when a full
//! `|X| × |X|` matrix is really needed.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{int, rank, solve, Rational, RationalMatrix, RationalVector};
use crate::odd_graph::GraphContext;

use super::distance::{BoseMesnerElement, DistanceMatrices};

/// Spectrum of `A_1` with its primitive idempotents.
///
/// `eigenvalues` and `projectors` are in discovery order (ascending
/// eigenvalue); `q_ordering[k]` is the discovery index of `E_k` in the
/// selected Q-polynomial order.
#[derive(Clone, Debug)]
pub struct SpectralData {
    pub eigenvalues: Vec<i64>,
    pub projectors: Vec<BoseMesnerElement>,
    pub multiplicities: Vec<usize>,
    /// `krein[h][i][j] = q^h_{ij}`, discovery indices.
    pub krein: Vec<Vec<Vec<Rational>>>,
    /// Every ordering satisfying the tridiagonal Krein condition.
    pub candidate_orderings: Vec<Vec<usize>>,
    pub q_ordering: Vec<usize>,
}

impl SpectralData {
    /// `E_k` in the Q-polynomial order.
    pub fn ordered_projector(&self, k: usize) -> &BoseMesnerElement {
        &self.projectors[self.q_ordering[k]]
    }

    pub fn ordered_eigenvalue(&self, k: usize) -> i64 {
        self.eigenvalues[self.q_ordering[k]]
    }

    pub fn ordered_eigenvalues(&self) -> Vec<i64> {
        self.q_ordering.iter().map(|&k| self.eigenvalues[k]).collect()
    }

    pub fn ordered_multiplicity(&self, k: usize) -> usize {
        self.multiplicities[self.q_ordering[k]]
    }

    /// `q^h_{ij}` with all three indices in Q-polynomial order.
    pub fn ordered_krein(&self, h: usize, i: usize, j: usize) -> &Rational {
        let o = &self.q_ordering;
        &self.krein[o[h]][o[i]][o[j]]
    }

    /// Re-selects the ordering; `ordering` must be one of the candidates.
    pub fn with_ordering(mut self, ordering: Vec<usize>) -> Self {
        debug_assert!(self.candidate_orderings.contains(&ordering));
        self.q_ordering = ordering;
        self
    }
}

/// Builds the spectral data, picking the lexicographically smallest eigenvalue
/// sequence among valid Q-polynomial orderings. Callers that can test module
/// structure may re-select with [`SpectralData::with_ordering`].
pub fn build_primitive_idempotents(
    ctx: &GraphContext,
    dm: &DistanceMatrices,
) -> Result<SpectralData> {
    let m = ctx.m();
    let n = ctx.vertex_count();
    let eigenvalues = scan_eigenvalues(dm);
    if eigenvalues.len() != m + 1 {
        return Err(Error::consistency(format!(
            "found {} integer eigenvalues of A_1, expected {}",
            eigenvalues.len(),
            m + 1
        )));
    }
    if m <= 3 {
        let full = scan_eigenvalues_full(dm);
        if full != eigenvalues {
            return Err(Error::consistency(format!(
                "eigenvalue scan on A_1 ({full:?}) disagrees with the intersection matrix ({eigenvalues:?})"
            )));
        }
    }

    let identity = BoseMesnerElement::basis(m, 0);
    let adjacency = BoseMesnerElement::basis(m, 1);
    let projectors: Vec<BoseMesnerElement> = eigenvalues
        .iter()
        .map(|&theta| {
            eigenvalues.iter().filter(|&&other| other != theta).fold(
                identity.clone(),
                |acc, &other| {
                    let factor = adjacency
                        .sub(&identity.scale(&int(other)))
                        .scale(&Rational::new(1.into(), (theta - other).into()));
                    dm.bm_mul(&acc, &factor)
                },
            )
        })
        .collect();
    check_idempotents(dm, &eigenvalues, &projectors)?;

    let multiplicities = projectors
        .iter()
        .map(|e| {
            let tr = e.trace(n);
            if !tr.is_integer() || !tr.is_positive() {
                return Err(Error::consistency(format!("idempotent trace {tr} is not a positive integer")));
            }
            Ok(tr.to_integer().try_into().expect("trace fits in usize"))
        })
        .collect::<Result<Vec<usize>>>()?;

    let krein = compute_krein_parameters(&projectors, n)?;
    let trivial = trivial_index(&eigenvalues, &projectors, m, n)?;
    let candidate_orderings = find_q_polynomial_orderings(&krein, trivial);
    if candidate_orderings.is_empty() {
        return Err(Error::consistency("no Q-polynomial ordering of the primitive idempotents"));
    }
    let q_ordering = select_ordering(&candidate_orderings, &eigenvalues, |_| true)
        .expect("candidates are nonempty");
    Ok(SpectralData {
        eigenvalues,
        projectors,
        multiplicities,
        krein,
        candidate_orderings,
        q_ordering,
    })
}

/// Integers `θ` in `[-(m+1), m+1]` for which `L - θI` is singular, where `L`
/// is the intersection matrix `L[h][j] = p^h_{1j}` (the action of `A_1` on the
/// Bose–Mesner algebra). `L` and `A_1` have the same minimal polynomial.
fn scan_eigenvalues(dm: &DistanceMatrices) -> Vec<i64> {
    let d = dm.diameter();
    let bound = (d + 1) as i64;
    (-bound..=bound)
        .filter(|&theta| {
            let triplets = (0..=d).flat_map(|h| {
                (0..=d).map(move |j| {
                    let mut v = int(dm.intersection_number(h, 1, j) as i64);
                    if h == j {
                        v -= int(theta);
                    }
                    (h, j, v)
                })
            });
            let l = RationalMatrix::from_triplets(d + 1, d + 1, triplets).expect("square");
            rank(&l) < d + 1
        })
        .collect()
}

/// Same scan done on the full adjacency matrix: `rank(A_1 - θI) < |X|`.
pub fn scan_eigenvalues_full(dm: &DistanceMatrices) -> Vec<i64> {
    let a = dm.adjacency();
    let n = a.rows();
    let bound = (dm.diameter() + 1) as i64;
    (-bound..=bound)
        .filter(|&theta| {
            let shifted = a.sub(&RationalMatrix::scalar(n, int(theta))).expect("square");
            rank(&shifted) < n
        })
        .collect()
}

fn check_idempotents(
    dm: &DistanceMatrices,
    eigenvalues: &[i64],
    projectors: &[BoseMesnerElement],
) -> Result<()> {
    let d = dm.diameter();
    let adjacency = BoseMesnerElement::basis(d, 1);
    let mut sum = BoseMesnerElement::zero(d);
    for (i, e) in projectors.iter().enumerate() {
        if e.is_zero() {
            return Err(Error::consistency(format!("E for θ = {} is zero", eigenvalues[i])));
        }
        if dm.bm_mul(&adjacency, e) != e.scale(&int(eigenvalues[i])) {
            return Err(Error::consistency(format!("A_1 E != θ E for θ = {}", eigenvalues[i])));
        }
        for (j, f) in projectors.iter().enumerate() {
            let prod = dm.bm_mul(e, f);
            let ok = if i == j { prod == *e } else { prod.is_zero() };
            if !ok {
                return Err(Error::consistency(format!(
                    "idempotents for θ = {} and θ = {} are not orthogonal idempotents",
                    eigenvalues[i], eigenvalues[j]
                )));
            }
        }
        sum = sum.add(e);
    }
    if sum != BoseMesnerElement::basis(d, 0) {
        return Err(Error::consistency("primitive idempotents do not sum to I"));
    }
    Ok(())
}

/// `q^h_{ij}` from `E_i ∘ E_j = (1/n) Σ_h q^h_{ij} E_h`, all in discovery order.
pub fn compute_krein_parameters(
    projectors: &[BoseMesnerElement],
    n: usize,
) -> Result<Vec<Vec<Vec<Rational>>>> {
    let size = projectors.len();
    // columns are the idempotents, rows the distance coordinates
    let basis = RationalMatrix::from_triplets(
        size,
        size,
        projectors.iter().enumerate().flat_map(|(h, e)| {
            e.coeffs().iter().enumerate().map(move |(k, v)| (k, h, v.clone()))
        }),
    )
    .expect("square");
    let mut q = vec![vec![vec![Rational::zero(); size]; size]; size];
    let scale = int(n as i64);
    for i in 0..size {
        for j in 0..size {
            let target = RationalVector::from_vec(projectors[i].hadamard(&projectors[j]).coeffs().to_vec());
            let lambda = solve(&basis, &target).ok_or_else(|| {
                Error::consistency("entrywise product left the Bose–Mesner algebra")
            })?;
            for h in 0..size {
                let value = &lambda[h] * &scale;
                if value.is_negative() {
                    return Err(Error::consistency(format!(
                        "negative Krein parameter q^{h}_{{{i}{j}}} = {value}"
                    )));
                }
                q[h][i][j] = value;
            }
        }
    }
    Ok(q)
}

fn trivial_index(
    eigenvalues: &[i64],
    projectors: &[BoseMesnerElement],
    m: usize,
    n: usize,
) -> Result<usize> {
    let valency = (m + 1) as i64;
    let k = eigenvalues
        .iter()
        .position(|&t| t == valency)
        .ok_or_else(|| Error::consistency("valency is not an eigenvalue"))?;
    let one_over_n = Rational::new(1.into(), (n as i64).into());
    if projectors[k].coeffs().iter().any(|c| *c != one_over_n) {
        return Err(Error::consistency("projector for the valency is not J/|X|"));
    }
    Ok(k)
}

/// All orderings `E_0, .., E_m` with `E_0 = J/|X|` such that `q^h_{1j}` vanishes
/// for `|h - j| > 1` and not for `|h - j| = 1`.
pub fn find_q_polynomial_orderings(krein: &[Vec<Vec<Rational>>], trivial: usize) -> Vec<Vec<usize>> {
    let size = krein.len();
    let mut found = Vec::new();
    let mut order = vec![trivial];
    let mut used = vec![false; size];
    used[trivial] = true;
    extend_ordering(krein, &mut order, &mut used, &mut found);
    found.sort();
    found
}

fn extend_ordering(
    krein: &[Vec<Vec<Rational>>],
    order: &mut Vec<usize>,
    used: &mut [bool],
    found: &mut Vec<Vec<usize>>,
) {
    if order.len() == krein.len() {
        found.push(order.clone());
        return;
    }
    for c in 0..krein.len() {
        if used[c] {
            continue;
        }
        order.push(c);
        if prefix_consistent(krein, order) {
            used[c] = true;
            extend_ordering(krein, order, used, found);
            used[c] = false;
        }
        order.pop();
    }
}

/// Checks the support condition among the positions placed so far. Only the
/// pairs involving the newest position need checking; earlier pairs were
/// checked when their later member was placed.
fn prefix_consistent(krein: &[Vec<Vec<Rational>>], order: &[usize]) -> bool {
    if order.len() < 2 {
        return true;
    }
    let e1 = order[1];
    let last = order.len() - 1;
    let ok = |h: usize, j: usize| {
        let zero = krein[order[h]][e1][order[j]].is_zero();
        match h.abs_diff(j) {
            0 => true,
            1 => !zero,
            _ => zero,
        }
    };
    // when E_1 itself was just placed, every earlier pair becomes checkable
    if last == 1 {
        return (0..order.len()).all(|h| (0..order.len()).all(|j| ok(h, j)));
    }
    (0..=last).all(|k| ok(last, k) && ok(k, last))
}

/// Tie-break among valid orderings: prefer those accepted by `conforms`, then
/// the lexicographically smallest eigenvalue sequence. Logs a warning when
/// the choice was ambiguous.
pub fn select_ordering<F>(candidates: &[Vec<usize>], eigenvalues: &[i64], conforms: F) -> Option<Vec<usize>>
where
    F: Fn(&[usize]) -> bool,
{
    let sequence = |o: &Vec<usize>| o.iter().map(|&k| eigenvalues[k]).collect::<Vec<i64>>();
    let mut pool: Vec<&Vec<usize>> = candidates.iter().filter(|o| conforms(o)).collect();
    if pool.is_empty() {
        pool = candidates.iter().collect();
    }
    if candidates.len() > 1 {
        log::warn!(
            "{} valid Q-polynomial orderings: {:?}",
            candidates.len(),
            candidates.iter().map(sequence).collect::<Vec<_>>()
        );
    }
    pool.into_iter().min_by_key(|o| sequence(o)).cloned()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::odd_graph::enum_vertices;
    use crate::terwilliger::build_distance_matrices;

    fn spectral(m: usize) -> (GraphContext, DistanceMatrices, SpectralData) {
        let ctx = enum_vertices(m).unwrap();
        let dm = build_distance_matrices(&ctx).unwrap();
        let sd = build_primitive_idempotents(&ctx, &dm).unwrap();
        (ctx, dm, sd)
    }

    #[test]
    fn petersen_spectrum() {
        let (_, _, sd) = spectral(2);
        assert_eq!(sd.eigenvalues, vec![-2, 1, 3]);
        assert_eq!(sd.multiplicities, vec![4, 5, 1]);
    }

    #[test]
    fn traces_and_valency() {
        for m in 1..=5 {
            let (ctx, _, sd) = spectral(m);
            let n = ctx.vertex_count();
            assert_eq!(sd.multiplicities.iter().sum::<usize>(), n);
            assert_eq!(sd.ordered_eigenvalue(0), (m + 1) as i64);
            let j_over_n = Rational::new(1.into(), (n as i64).into());
            assert!(sd.ordered_projector(0).coeffs().iter().all(|c| *c == j_over_n));
        }
    }

    #[test]
    fn krein_trivial_row_and_symmetry() {
        for m in 2..=4 {
            let (_, _, sd) = spectral(m);
            let size = m + 1;
            for h in 0..size {
                for j in 0..size {
                    let expected = if h == j { int(1) } else { int(0) };
                    assert_eq!(sd.ordered_krein(h, 0, j), &expected);
                    for i in 0..size {
                        assert_eq!(sd.krein[h][i][j], sd.krein[h][j][i]);
                    }
                }
            }
            // q^0_{jj} is the multiplicity
            for j in 0..size {
                assert_eq!(sd.ordered_krein(0, j, j), &int(sd.ordered_multiplicity(j) as i64));
            }
        }
    }

    #[test]
    fn projectors_as_matrices_m2() {
        let (ctx, dm, sd) = spectral(2);
        let n = ctx.vertex_count();
        let mats: Vec<RationalMatrix> = sd.projectors.iter().map(|e| e.to_matrix(&ctx)).collect();
        let mut sum = RationalMatrix::zeros(n, n);
        for (i, e) in mats.iter().enumerate() {
            assert_eq!(e.matmul(e).unwrap(), *e);
            let ae = dm.adjacency().matmul(e).unwrap();
            assert_eq!(ae, e.scale(&int(sd.eigenvalues[i])));
            sum = sum.add(e).unwrap();
        }
        assert_eq!(sum, RationalMatrix::identity(n));
    }

    #[test]
    fn q_polynomial_orderings_exist() {
        for m in 2..=5 {
            let (_, _, sd) = spectral(m);
            assert!(!sd.candidate_orderings.is_empty(), "m={m}");
            let o = &sd.q_ordering;
            for h in 0..=m {
                for j in 0..=m {
                    let q = sd.ordered_krein(h, 1, j);
                    if h.abs_diff(j) > 1 {
                        assert!(q.is_zero());
                    } else if h.abs_diff(j) == 1 {
                        assert!(!q.is_zero());
                    }
                }
            }
            assert_eq!(sd.eigenvalues[o[0]], (m + 1) as i64);
        }
    }
}
