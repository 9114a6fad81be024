//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's graph or algebra code.

#![allow(dead_code)]

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// All m-subsets of `{1, .., 2m+1}` as sorted vectors, base vertex first.
pub fn vertices(m: usize) -> Vec<Vec<usize>> {
    let base: Vec<usize> = (1..=m).collect();
    let mut all: Vec<Vec<usize>> = (1..=2 * m + 1).combinations(m).filter(|v| *v != base).collect();
    all.insert(0, base);
    all
}

pub fn meet(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| b.contains(x)).count()
}

/// Adjacency lists: two vertices are adjacent iff disjoint.
pub fn adjacency(vs: &[Vec<usize>]) -> Vec<Vec<usize>> {
    vs.iter()
        .map(|a| (0..vs.len()).filter(|&j| meet(a, &vs[j]) == 0).collect())
        .collect()
}

pub fn bfs(adj: &[Vec<usize>], start: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[start] = 0;
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

/// `tr(A^k)` for `k = 0..=kmax` by counting closed walks.
pub fn closed_walks(adj: &[Vec<usize>], kmax: usize) -> Vec<BigInt> {
    let n = adj.len();
    let mut traces = vec![BigInt::from(n)];
    // walks[x][y] for the current length
    let mut walks: Vec<Vec<i128>> = (0..n).map(|x| (0..n).map(|y| i128::from(x == y)).collect()).collect();
    for _ in 1..=kmax {
        walks = walks
            .iter()
            .map(|row| {
                let mut next = vec![0i128; n];
                for (z, &count) in row.iter().enumerate() {
                    if count != 0 {
                        for &y in &adj[z] {
                            next[y] += count;
                        }
                    }
                }
                next
            })
            .collect();
        traces.push(BigInt::from((0..n).map(|x| walks[x][x]).sum::<i128>()));
    }
    traces
}

pub fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Row-reduces `[a | b]`. Returns the rank of `a` and, when the system is
/// consistent with full column rank, its unique solution.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational]) -> (usize, Option<Vec<BigRational>>) {
    let cols = a.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<BigRational>> =
        a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
    let mut rank = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = BigRational::one() / rows[rank][c].clone();
        rows[rank].iter_mut().for_each(|x| *x = &*x * &inv);
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_zero() {
                let f = rows[r][c].clone();
                let pivot_row = rows[rank].clone();
                rows[r].iter_mut().zip(&pivot_row).for_each(|(x, y)| *x = &*x - &f * y);
            }
        }
        pivots.push(c);
        rank += 1;
    }
    let consistent = rows[rank..].iter().all(|r| r[cols].is_zero());
    if !consistent || rank < cols {
        return (rank, None);
    }
    (rank, Some((0..cols).map(|c| rows[c][cols].clone()).collect()))
}

/// Eigenvalue multiplicities from `tr(A^k)`, given the distinct eigenvalues.
/// The traces beyond the Vandermonde system must also match.
pub fn multiplicities_from_traces(eigenvalues: &[i64], traces: &[BigInt]) -> Option<Vec<i64>> {
    let k = eigenvalues.len();
    let a: Vec<Vec<BigRational>> =
        (0..k).map(|p| eigenvalues.iter().map(|&t| q(t).pow(p as i32)).collect()).collect();
    let b: Vec<BigRational> = traces[..k].iter().map(|t| BigRational::from_integer(t.clone())).collect();
    let (_, sol) = solve(&a, &b);
    let sol = sol?;
    if sol.iter().any(|x| !x.is_integer() || x.is_negative()) {
        return None;
    }
    let mults: Vec<i64> = sol.iter().map(|x| i64::try_from(x.to_integer()).unwrap()).collect();
    for (p, t) in traces.iter().enumerate() {
        let sum: BigInt = eigenvalues.iter().zip(&mults).map(|(&e, &m)| BigInt::from(e).pow(p as u32) * m).sum();
        if &sum != t {
            return None;
        }
    }
    Some(mults)
}

/// Every permutation of `{1, .., n}` as an image table indexed from 1.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    (1..=n)
        .permutations(n)
        .map(|p| std::iter::once(0).chain(p).collect())
        .collect()
}

pub fn image(perm: &[usize], set: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = set.iter().map(|&e| perm[e]).collect();
    out.sort_unstable();
    out
}

/// `Π_{j != i} (A - θ_j I)`, an integer multiple of the projector `E_i`.
pub fn idempotent_multiple(adj: &[Vec<usize>], eigenvalues: &[i64], i: usize) -> Vec<Vec<i128>> {
    let n = adj.len();
    let mut acc: Vec<Vec<i128>> = (0..n).map(|x| (0..n).map(|y| i128::from(x == y)).collect()).collect();
    for (j, &t) in eigenvalues.iter().enumerate() {
        if j == i {
            continue;
        }
        acc = acc
            .iter()
            .map(|row| {
                (0..n)
                    .map(|y| adj[y].iter().map(|&z| row[z]).sum::<i128>() - i128::from(t) * row[y])
                    .collect()
            })
            .collect();
    }
    acc
}

pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let zeros = vec![BigRational::zero(); rows.len()];
    solve(rows, &zeros).0
}
