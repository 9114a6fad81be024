use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use otw_core::decomp::{decompose, DecompOptions};
use otw_core::terwilliger::TerwilligerAlgebra;

fn build(c: &mut Criterion) {
    let mut group = c.benchmark_group("build");
    group.sample_size(10);
    for m in [3, 4] {
        group.bench_function(format!("m={m}"), |b| b.iter(|| TerwilligerAlgebra::build(black_box(m)).unwrap()));
    }
    group.finish();
}

fn decomposition(c: &mut Criterion) {
    let mut group = c.benchmark_group("decompose");
    group.sample_size(10);
    for m in [3, 4] {
        let alg = TerwilligerAlgebra::build(m).unwrap();
        group.bench_function(format!("m={m}"), |b| {
            b.iter(|| decompose(black_box(&alg), DecompOptions::default()).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, build, decomposition);
criterion_main!(benches);
