//! Dense LU factorization with partial (row) pivoting.

use super::{DenseMatrix, Scalar};
use crate::error::{Error, Result};

/// Packed `PA = LU` factors; `L` has an implicit unit diagonal.
#[derive(Debug, Clone)]
pub struct LuFactors<T> {
    n: usize,
    lu: Vec<T>,
    perm: Vec<usize>,
}

impl<T: Scalar> LuFactors<T> {
    pub fn factor(m: &DenseMatrix<T>) -> Result<Self> {
        let n = m.n();
        let mut lu = m.as_slice().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            // Pivot: largest modulus in column k at or below the diagonal; first wins ties.
            let mut p = k;
            let mut best = lu[k * n + k].modulus();
            for i in k + 1..n {
                let v = lu[i * n + k].modulus();
                if v > best {
                    best = v;
                    p = i;
                }
            }
            if !(best >= f64::MIN_POSITIVE) {
                return Err(Error::SingularSystem { pivot: k });
            }
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            let (upper, lower) = lu.split_at_mut((k + 1) * n);
            let pivot_row = &upper[k * n..];
            let inv = T::one() / pivot_row[k];
            for row in lower.chunks_exact_mut(n) {
                let l = row[k] * inv;
                row[k] = l;
                if l == T::zero() {
                    continue;
                }
                for (x, &u) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                    *x -= l * u;
                }
            }
        }
        Ok(Self { n, lu, perm })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn solve(&self, rhs: &[T]) -> Result<Vec<T>> {
        let n = self.n;
        if rhs.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: rhs.len() });
        }
        let mut x: Vec<T> = self.perm.iter().map(|&p| rhs[p]).collect();
        for i in 0..n {
            let row = &self.lu[i * n..i * n + i];
            let s = row.iter().zip(&x[..i]).fold(T::zero(), |acc, (&l, &y)| acc + l * y);
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let row = &self.lu[i * n..(i + 1) * n];
            let s = row[i + 1..]
                .iter()
                .zip(&x[i + 1..])
                .fold(T::zero(), |acc, (&u, &y)| acc + u * y);
            x[i] = (x[i] - s) / row[i];
        }
        if let Some(k) = x.iter().position(|v| !v.is_finite()) {
            return Err(Error::SingularSystem { pivot: k });
        }
        Ok(x)
    }
}

/// Solves `M w = rhs` by partial-pivoting LU followed by one step of
/// iterative refinement.
pub fn lu_solve<T: Scalar>(m: &DenseMatrix<T>, rhs: &[T]) -> Result<Vec<T>> {
    if rhs.len() != m.n() {
        return Err(Error::DimensionMismatch { expected: m.n(), found: rhs.len() });
    }
    let f = LuFactors::factor(m)?;
    let mut w = f.solve(rhs)?;
    refine(&f, |x| m.matvec(x), rhs, &mut w)?;
    Ok(w)
}

pub(crate) fn refine<T: Scalar>(
    f: &LuFactors<T>,
    apply: impl Fn(&[T]) -> Result<Vec<T>>,
    rhs: &[T],
    w: &mut [T],
) -> Result<()> {
    let mw = apply(w)?;
    let r: Vec<T> = rhs.iter().zip(&mw).map(|(&b, &a)| b - a).collect();
    let d = f.solve(&r)?;
    for (x, dx) in w.iter_mut().zip(d) {
        *x += dx;
    }
    Ok(())
}

pub(crate) fn inf_norm<T: Scalar>(v: &[T]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.modulus()))
}

/// Normwise backward error `|Mw - rhs| / (|M| |w| + |rhs|)` in the infinity norm.
pub fn backward_error<T: Scalar>(m: &DenseMatrix<T>, w: &[T], rhs: &[T]) -> Result<f64> {
    let mw = m.matvec(w)?;
    let r: Vec<T> = rhs.iter().zip(&mw).map(|(&b, &a)| b - a).collect();
    Ok(inf_norm(&r) / (m.norm_inf() * inf_norm(w) + inf_norm(rhs)))
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;
    use proptest::prelude::*;

    use super::*;

    fn residual(m: &DenseMatrix<f64>, w: &[f64], rhs: &[f64]) -> f64 {
        let mw = m.matvec(w).unwrap();
        inf_norm(&mw.iter().zip(rhs).map(|(a, b)| a - b).collect::<Vec<_>>())
    }

    #[test]
    fn identity_returns_rhs() {
        let rhs = [1.5, -2.0, 3.25];
        assert_eq!(lu_solve(&DenseMatrix::identity(3), &rhs).unwrap(), rhs.to_vec());
    }

    #[test]
    fn diagonal_system() {
        let m = DenseMatrix::diagonal(&[2.0, 4.0]).unwrap();
        assert_eq!(lu_solve(&m, &[2.0, 4.0]).unwrap(), vec![1.0, 1.0]);
    }

    #[test]
    fn needs_pivoting() {
        let m = DenseMatrix::from_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert_eq!(lu_solve(&m, &[3.0, 5.0]).unwrap(), vec![5.0, 3.0]);
    }

    #[test]
    fn singular_reports_pivot() {
        let m = DenseMatrix::from_rows(&[[1.0, 1.0], [1.0, 1.0]]).unwrap();
        assert_eq!(lu_solve(&m, &[1.0, 2.0]), Err(Error::SingularSystem { pivot: 1 }));
    }

    #[test]
    fn complex_system() {
        let i = Complex64::i();
        let one = Complex64::new(1.0, 0.0);
        let m = DenseMatrix::from_rows(&[[one, i], [-i, 2.0 * one]]).unwrap();
        let x = [Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.25)];
        let rhs = m.matvec(&x).unwrap();
        let w = lu_solve(&m, &rhs).unwrap();
        for (a, b) in w.iter().zip(&x) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    proptest! {
        #[test]
        fn residual_contract_on_diagonally_dominant(
            n in 1usize..25,
            seed in proptest::collection::vec(-1.0f64..1.0, 625),
            rhs in proptest::collection::vec(-10.0f64..10.0, 25),
        ) {
            let m = DenseMatrix::from_fn(n, |i, j| {
                let v = seed[i * 25 + j];
                if i == j { v.signum() * (n as f64 + 1.0) + v } else { v }
            }).unwrap();
            let rhs = &rhs[..n];
            let w = lu_solve(&m, rhs).unwrap();
            prop_assert!(residual(&m, &w, rhs) <= 1e-10 * (1.0 + inf_norm(rhs)));
        }
    }
}
