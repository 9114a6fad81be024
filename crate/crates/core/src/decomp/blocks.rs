//! Representation blocks of the orbit basis on each homogeneous component and
//! the block-diagonalization checks.

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::Result;
use crate::linalg::{kernel_basis, rank, Rational, RationalMatrix};
use crate::odd_graph::GraphContext;
use crate::terwilliger::{CheckItem, OrbitBasis, OrbitBasisElement, Report};

use super::modules::{HomogeneousComponent, ModuleBasis};
use super::seeds::apply_block;

/// `blocks[a][c]`: the `(d+1) × (d+1)` matrix of orbit element `a` on
/// component `c`, in the b-basis of any one of its modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationBlocks {
    pub blocks: Vec<Vec<RationalMatrix>>,
}

/// Outcome of applying one element to one module.
struct ModuleAction {
    block: RationalMatrix,
    residual_zero: bool,
}

/// Row and column spheres of an orbit element. Every orbit matrix is supported
/// on a single sphere block.
fn element_spheres(e: &OrbitBasisElement, ctx: &GraphContext) -> (usize, usize) {
    let (x, y) = e.representative();
    (ctx.sphere_of(x), ctx.sphere_of(y))
}

fn act(e: &OrbitBasisElement, module: &ModuleBasis, nu: usize, d: usize, ctx: &GraphContext) -> ModuleAction {
    let (i, j) = element_spheres(e, ctx);
    let mut block = RationalMatrix::zeros(d + 1, d + 1);
    // element * b_k = 0 for k != j since b_k lives on sphere k
    if j < nu {
        return ModuleAction { block, residual_zero: true };
    }
    let w = apply_block(&e.matrix, ctx, i, &module.vectors[j - nu]);
    if i < nu {
        return ModuleAction { block, residual_zero: w.is_zero() };
    }
    let b = &module.vectors[i - nu];
    let norm = &module.squared_norms[i - nu];
    let inner = w.dot(b);
    // w - (inner / norm) b = 0, cleared of the denominator
    let residual_zero = w
        .entries()
        .iter()
        .zip(b.entries())
        .all(|(wx, bx)| wx * norm == &inner * bx);
    let coefficient = Rational::new(inner, norm.clone());
    if !coefficient.is_zero() {
        block = RationalMatrix::from_triplets(d + 1, d + 1, [(i - nu, j - nu, coefficient)]).expect("in range");
    }
    ModuleAction { block, residual_zero }
}

/// Matrices of `element` on every module of `component`, with a flag telling
/// whether the image stayed inside each module.
pub fn representation_matrices(
    component: &HomogeneousComponent,
    element: &OrbitBasisElement,
    ctx: &GraphContext,
) -> Vec<(RationalMatrix, bool)> {
    component
        .modules
        .iter()
        .map(|module| {
            let a = act(element, module, component.nu, component.d, ctx);
            (a.block, a.residual_zero)
        })
        .collect()
}

/// Zero residuals, identical blocks across copies, injectivity of the block
/// map, and the dimension of the block-scalar center.
pub fn verify_block_structure(
    components: &[HomogeneousComponent],
    ob: &OrbitBasis,
    ctx: &GraphContext,
) -> Result<(RepresentationBlocks, Report, usize)> {
    let per_element: Vec<(Vec<RationalMatrix>, Vec<CheckItem>)> = ob
        .elements()
        .par_iter()
        .map(|e| {
            let mut blocks = Vec::with_capacity(components.len());
            let mut failures = Vec::new();
            for c in components {
                let actions = representation_matrices(c, e, ctx);
                let label = format!("{} on (μ,d)=({},{})", e.label, c.mu, c.d);
                if actions.iter().any(|(_, ok)| !ok) {
                    failures.push(CheckItem::new(format!("{label} residual"), false, "image left its module"));
                }
                let first = actions[0].0.clone();
                if actions.iter().any(|(b, _)| *b != first) {
                    failures.push(CheckItem::new(format!("{label} copies"), false, "blocks differ across copies"));
                }
                blocks.push(first);
            }
            (blocks, failures)
        })
        .collect();

    let mut report = Report::new("blockdiag");
    let element_count = ob.len();
    let mut residual_failures = 0;
    let mut blocks = Vec::with_capacity(element_count);
    for (b, failures) in per_element {
        residual_failures += failures.len();
        for f in failures {
            report.push(f);
        }
        blocks.push(b);
    }
    report.push(CheckItem::new(
        "residuals and copies",
        residual_failures == 0,
        format!("{element_count} elements on {} components", components.len()),
    ));

    let flat = flatten_blocks(&blocks, components);
    let r = rank(&flat);
    report.push(CheckItem::new(
        "block map injective",
        r == element_count && flat.cols() == element_count,
        format!("rank {r}, Σ (d+1)² = {}", flat.cols()),
    ));
    let center = block_center_dimension(&blocks, components);
    Ok((RepresentationBlocks { blocks }, report, center))
}

/// Rows are elements, columns the concatenated block entries.
fn flatten_blocks(blocks: &[Vec<RationalMatrix>], components: &[HomogeneousComponent]) -> RationalMatrix {
    let offsets: Vec<usize> = components
        .iter()
        .scan(0, |acc, c| {
            let start = *acc;
            *acc += c.block_dim() * c.block_dim();
            Some(start)
        })
        .collect();
    let cols: usize = components.iter().map(|c| c.block_dim() * c.block_dim()).sum();
    let triplets = blocks.iter().enumerate().flat_map(|(a, per_component)| {
        per_component.iter().enumerate().flat_map({
            let offsets = &offsets;
            move |(c, b)| {
                let size = b.cols();
                b.triplets().map(move |(r, s, v)| (a, offsets[c] + r * size + s, v.clone()))
            }
        })
    });
    RationalMatrix::from_triplets(blocks.len(), cols, triplets).expect("in range")
}

/// Dimension of the space of combinations `Σ c_a M_a` whose block on every
/// component is a scalar matrix.
fn block_center_dimension(blocks: &[Vec<RationalMatrix>], components: &[HomogeneousComponent]) -> usize {
    let mut triplets = Vec::new();
    let mut row = 0;
    for (c, comp) in components.iter().enumerate() {
        let n = comp.block_dim();
        for r in 0..n {
            for s in 0..n {
                if r == 0 && s == 0 {
                    continue;
                }
                for (a, per_component) in blocks.iter().enumerate() {
                    let b = &per_component[c];
                    let value = if r == s { b.get(r, r) - b.get(0, 0) } else { b.get(r, s) };
                    if !value.is_zero() {
                        triplets.push((row, a, value));
                    }
                }
                row += 1;
            }
        }
    }
    let constraints = RationalMatrix::from_triplets(row, blocks.len(), triplets).expect("in range");
    kernel_basis(&constraints).len()
}
