//! The module decomposition against counts derived without it: sphere sizes
//! from breadth-first search and eigenvalue multiplicities from closed walks.

mod common;

use common::*;
use num_rational::BigRational;
use num_traits::Zero;
use otw_core::binomial;
use otw_core::decomp::{decompose, DecompOptions, Decomposition};
use otw_core::terwilliger::TerwilligerAlgebra;

fn run(m: usize) -> (TerwilligerAlgebra, Decomposition) {
    let alg = TerwilligerAlgebra::build(m).unwrap();
    let dec = decompose(&alg, DecompOptions { diagnostics: true }).unwrap();
    dec.report.require().unwrap();
    (alg, dec)
}

/// Pairs `(μ, d)` with `m - d <= 2μ <= 2(m - d)`, `d` descending then `μ`
/// ascending.
fn classes(m: usize) -> Vec<(usize, usize)> {
    (0..=m).rev().flat_map(|d| (0..=m - d).filter(move |mu| 2 * mu >= m - d).map(move |mu| (mu, d))).collect()
}

/// Solves for the multiplicities from three families of counts. A thin module
/// with endpoint `ν` meets each sphere `ν..=m` in one dimension, so the
/// modules starting at `ν` number `|S_ν| - |S_{ν-1}|`. A dual thin module
/// with dual endpoint `μ` and diameter `d` meets eigenspaces `μ..=μ+d`, so
/// eigenspace `i` collects `Σ m(μ,d)` over those classes. Finally, vectors on
/// sphere `ν` killed by lowering are the endpoint vectors of modules starting
/// at `ν`; since `E_μ` never kills the endpoint vector of a module with dual
/// endpoint `μ`, those also killed by `E_0, .., E_{μ-1}` span one dimension
/// per module with dual endpoint at least `μ`.
fn oracle_multiplicities(m: usize) -> (usize, Option<Vec<i64>>) {
    let vs = vertices(m);
    let adj = adjacency(&vs);
    let dist = bfs(&adj, 0);
    let mut sizes = vec![0i64; m + 1];
    dist.iter().for_each(|&d| sizes[d] += 1);
    let theta: Vec<i64> = (0..=m as i64).map(|i| (if i % 2 == 0 { 1 } else { -1 }) * (m as i64 + 1 - i)).collect();
    let mults = multiplicities_from_traces(&theta, &closed_walks(&adj, 2 * m + 1)).unwrap();

    let cls = classes(m);
    let mut a = Vec::new();
    let mut b = Vec::new();
    for nu in 0..=m {
        a.push(cls.iter().map(|&(_, d)| q(i64::from(d == m - nu))).collect());
        b.push(q(sizes[nu] - if nu > 0 { sizes[nu - 1] } else { 0 }));
    }
    for (i, &mult) in mults.iter().enumerate() {
        a.push(cls.iter().map(|&(mu, d)| q(i64::from(mu <= i && i <= mu + d))).collect());
        b.push(q(mult));
    }
    let idempotents: Vec<Vec<Vec<i128>>> = (0..=m).map(|i| idempotent_multiple(&adj, &theta, i)).collect();
    for nu in 0..=m {
        let sphere: Vec<usize> = (0..vs.len()).filter(|&x| dist[x] == nu).collect();
        let below: Vec<usize> = (0..vs.len()).filter(|&x| nu > 0 && dist[x] == nu - 1).collect();
        let mut constraints: Vec<Vec<BigRational>> = below
            .iter()
            .map(|&x| sphere.iter().map(|y| q(i64::from(adj[x].contains(y)))).collect())
            .collect();
        for mu in 0..=m + 1 {
            let dim = sphere.len() - rank(&constraints);
            a.push(cls.iter().map(|&(c_mu, d)| q(i64::from(d == m - nu && c_mu >= mu))).collect());
            b.push(q(dim as i64));
            if mu <= m {
                let e = &idempotents[mu];
                constraints.extend(e.iter().map(|row| sphere.iter().map(|&y| q(i64::try_from(row[y]).unwrap())).collect()));
            }
        }
    }
    let (rank, sol) = solve(&a, &b);
    let sol = sol.map(|s: Vec<BigRational>| s.iter().map(|x| i64::try_from(x.to_integer()).unwrap()).collect());
    (rank, sol)
}

#[test]
fn multiplicities_match_counting_oracle() {
    for m in [3, 4] {
        let (rank, sol) = oracle_multiplicities(m);
        assert_eq!(rank, classes(m).len(), "m={m}: counts determine the multiplicities");
        let (_, dec) = run(m);
        let lib: Vec<(usize, usize)> = dec.report.rows.iter().map(|r| (r.mu, r.d)).collect();
        assert_eq!(lib, classes(m));
        let lib: Vec<i64> = dec.report.rows.iter().map(|r| r.multiplicity as i64).collect();
        assert_eq!(Some(lib), sol, "m={m}");
    }
}

#[test]
fn m3_multiplicity_table() {
    let (_, dec) = run(3);
    let table: Vec<(usize, usize, usize, usize)> =
        dec.report.rows.iter().map(|r| (r.mu, r.d, r.block_dim, r.multiplicity)).collect();
    assert_eq!(table, vec![(0, 3, 4, 1), (1, 2, 3, 3), (1, 1, 2, 2), (2, 1, 2, 6), (2, 0, 1, 2), (3, 0, 1, 4)]);
    assert_eq!(dec.report.l_dims, vec![1, 3, 8, 6]);
}

#[test]
fn center_dimension_formula() {
    for m in [3, 4] {
        let (_, dec) = run(m);
        let expected = if m % 2 == 1 { (m + 1) * (m + 3) / 4 } else { (m + 2) * (m + 2) / 4 };
        assert_eq!(dec.report.center_dimension, expected);
        assert_eq!(dec.report.algebra_center_dimension, expected);
        assert_eq!(dec.upsilon.len(), expected);
    }
}

#[test]
fn negative_controls_vanish() {
    let (_, dec) = run(3);
    let outside: Vec<(usize, usize)> = dec.report.negative_controls.iter().map(|(p, _)| *p).collect();
    let inside = classes(3);
    assert_eq!(outside.len() + inside.len(), 16);
    assert!(outside.iter().all(|p| !inside.contains(p)));
    assert!(dec.report.negative_controls.iter().all(|(_, dim)| *dim == 0));
}

/// The change of basis in global coordinates: columns are pairwise
/// orthogonal, and each orbit matrix, applied by dense multiplication, maps
/// every column to the combination its block predicts.
#[test]
fn blocks_reproduce_dense_action() {
    let m = 3;
    let (alg, dec) = run(m);
    let n = alg.ctx.vertex_count();
    let cols = dec.change_of_basis(&alg.ctx);
    assert_eq!(cols.len(), binomial(2 * m + 1, m));
    for a in 0..cols.len() {
        assert_eq!(cols[a].0.dot(&cols[a].0), cols[a].1);
        for b in a + 1..cols.len() {
            assert!(cols[a].0.dot(&cols[b].0).is_zero());
        }
    }
    for (e, per_class) in alg.orbit_basis.elements().iter().zip(&dec.blocks.blocks) {
        for (c, block) in dec.components.iter().zip(per_class) {
            for module in &c.modules {
                let basis: Vec<Vec<BigRational>> =
                    module.vectors.iter().map(|v| v.to_global(&alg.ctx).into_entries()).collect();
                for (k, bk) in basis.iter().enumerate() {
                    let mut image = vec![BigRational::zero(); n];
                    e.matrix.positions().for_each(|(x, y)| image[x] += &bk[y]);
                    let mut predicted = vec![BigRational::zero(); n];
                    for (r, br) in basis.iter().enumerate() {
                        let coeff = block.get(r, k);
                        if !coeff.is_zero() {
                            predicted.iter_mut().zip(br).for_each(|(p, x)| *p += &coeff * x);
                        }
                    }
                    assert_eq!(image, predicted, "{} on ({},{})", e.label, c.mu, c.d);
                }
            }
        }
    }
}
