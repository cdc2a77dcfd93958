#![allow(dead_code)]

use maxpair_core::{is_primitive, DenseMatrix, TridiagonalQ};
use rand::Rng;

/// Nonnegative `n × n` matrix with a positive diagonal and a positive
/// cycle, so it is irreducible with positive trace and hence primitive.
pub fn random_primitive<R: Rng>(rng: &mut R, n: usize) -> DenseMatrix<f64> {
    loop {
        let a = DenseMatrix::from_fn(n, |i, j| {
            if i == j || j == (i + 1) % n {
                rng.gen_range(0.1..2.0)
            } else if rng.gen_bool(0.5) {
                rng.gen_range(0.0..2.0)
            } else {
                0.0
            }
        })
        .unwrap();
        if is_primitive(&a, None).primitive {
            return a;
        }
    }
}

/// Irreducible Q-matrix with random killing on a random subset of states.
pub fn random_q<R: Rng>(rng: &mut R, n: usize) -> DenseMatrix<f64> {
    let mut rows = vec![vec![0.0; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            if j == (i + 1) % n {
                *x = rng.gen_range(0.1..2.0);
            } else if i != j && rng.gen_bool(0.4) {
                *x = rng.gen_range(0.0..2.0);
            }
        }
    }
    let killed = rng.gen_range(0..n);
    for (i, row) in rows.iter_mut().enumerate() {
        let kill = if i == killed || rng.gen_bool(0.3) { rng.gen_range(0.05..1.0) } else { 0.0 };
        let out: f64 = row.iter().sum();
        row[i] = -out - kill;
    }
    DenseMatrix::from_rows(&rows).unwrap()
}

/// Tridiagonal Q-matrix on states `0..=n` with interior killing and
/// no `b_N`, the shape produced by shifting a nonnegative tridiagonal matrix.
pub fn random_tridiagonal_q<R: Rng>(rng: &mut R, n: usize) -> TridiagonalQ {
    let a = (0..n).map(|_| rng.gen_range(0.2..2.0)).collect();
    let mut b: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..2.0)).collect();
    b.push(0.0);
    let mut c: Vec<f64> = (0..=n).map(|_| if rng.gen_bool(0.5) { rng.gen_range(0.0..1.5) } else { 0.0 }).collect();
    let k = rng.gen_range(0..=n);
    c[k] = rng.gen_range(0.1..1.5);
    TridiagonalQ::new(a, b, c).unwrap()
}

/// Smallest real part in the spectrum of `-Q`.
pub fn lambda_min(q: &DenseMatrix<f64>) -> f64 {
    maxpair_core::eig_oracle(&q.scale(-1.0)).unwrap().last().unwrap().re
}
