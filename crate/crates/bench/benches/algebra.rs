use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use qrf_core::group::DEFAULT_DIM_CAP;
use qrf_core::perspectives::table1;
use qrf_core::symmetry::symmetric_algebra;
use qrf_core::{shift_representation, SymmetryKind, Tolerance};

fn symmetric_algebras(c: &mut Criterion) {
    let tol = Tolerance::default();
    let mut group = c.benchmark_group("symmetric_algebra");
    for (n, k) in [(2, 2), (3, 2), (2, 3)] {
        let rep = shift_representation(n, k).unwrap();
        group.bench_with_input(BenchmarkId::new("weak", format!("z{n}^{k}")), &rep, |b, rep| {
            b.iter(|| symmetric_algebra(black_box(rep), SymmetryKind::Weak, &tol).unwrap())
        });
    }
    group.finish();
}

fn structure(c: &mut Criterion) {
    let tol = Tolerance::default();
    let rep = shift_representation(3, 2).unwrap();
    let weak = symmetric_algebra(&rep, SymmetryKind::Weak, &tol).unwrap();
    c.bench_function("commutant/z3^2 weak", |b| b.iter(|| black_box(&weak).commutant()));
    c.bench_function("blocks/z3^2 weak", |b| {
        b.iter(|| {
            // fresh copy so the cached decomposition is not reused
            let alg = symmetric_algebra(&rep, SymmetryKind::Weak, &tol).unwrap();
            alg.block_decomposition().map(|s| s.blocks.len()).unwrap()
        })
    });
}

fn table(c: &mut Criterion) {
    let tol = Tolerance::default();
    let mut group = c.benchmark_group("table1");
    group.sample_size(10);
    for (n, k) in [(2, 2), (3, 2)] {
        group.bench_function(format!("z{n}^{k}"), |b| b.iter(|| table1(n, k, &tol, DEFAULT_DIM_CAP).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, symmetric_algebras, structure, table);
criterion_main!(benches);
