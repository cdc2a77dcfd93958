use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use maxpair_core::linalg::{lu_solve, thomas_solve, Tridiagonal};
use maxpair_core::models::{example18, single_birth_q, ARule, SingleBirthSpec};
use maxpair_core::{algorithm17, shift_tridiagonal, sii_q, DenseMatrix, IterationConfig, TridiagonalQ, Variant};

fn diagonally_dominant(n: usize) -> DenseMatrix<f64> {
    DenseMatrix::from_fn(n, |i, j| if i == j { n as f64 } else { ((i * 7 + j * 3) % 5) as f64 / 5.0 }).unwrap()
}

fn linear_solves(c: &mut Criterion) {
    let mut g = c.benchmark_group("solve");
    for n in [50, 200] {
        let m = diagonally_dominant(n);
        let rhs = vec![1.0; n];
        g.bench_with_input(BenchmarkId::new("lu", n), &n, |b, _| b.iter(|| lu_solve(black_box(&m), &rhs).unwrap()));
    }
    for n in [1_000, 100_000] {
        let t = Tridiagonal::new(vec![-1.0; n - 1], vec![3.0; n], vec![-1.0; n - 1]).unwrap();
        let rhs = vec![1.0; n];
        g.bench_with_input(BenchmarkId::new("thomas", n), &n, |b, _| {
            b.iter(|| thomas_solve(black_box(&t), &rhs).unwrap())
        });
    }
    g.finish();
}

fn engines(c: &mut Criterion) {
    let mut g = c.benchmark_group("engine");
    g.sample_size(10);
    let cfg = IterationConfig::default();
    for n in [100, 500] {
        let q = single_birth_q(SingleBirthSpec { n, rule: ARule::Reciprocal }).unwrap();
        g.bench_with_input(BenchmarkId::new("sii_q_single_birth", n), &n, |b, _| {
            b.iter(|| sii_q(black_box(&q), &cfg).unwrap())
        });
    }
    let (q, m) = shift_tridiagonal(&example18().unwrap()).unwrap();
    for (name, v) in [("tri17a", Variant::A), ("tri17b", Variant::B)] {
        g.bench_function(BenchmarkId::new(name, "example18"), |b| {
            b.iter(|| algorithm17(black_box(&q), m, v, &cfg).unwrap())
        });
    }
    let n = 10_000;
    let chain = TridiagonalQ::new(vec![1.0; n], vec![1.0; n + 1], vec![0.0; n + 1]).unwrap();
    g.bench_function(BenchmarkId::new("tri17b", n), |b| {
        b.iter(|| algorithm17(black_box(&chain), 0.0, Variant::B, &cfg).unwrap())
    });
    g.finish();
}

criterion_group!(benches, linear_solves, engines);
criterion_main!(benches);
