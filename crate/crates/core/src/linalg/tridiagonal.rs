use super::{lu::inf_norm, lu_solve, DenseMatrix};
use crate::error::{Error, Result};

/// Pivot magnitude below which elimination hands over to dense LU.
pub const THOMAS_PIVOT_FLOOR: f64 = 1e-13;

/// A general tridiagonal matrix given by its three bands.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    /// `sub[i]` sits at `(i + 1, i)`.
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    /// `sup[i]` sits at `(i, i + 1)`.
    pub sup: Vec<f64>,
}

impl Tridiagonal {
    pub fn new(sub: Vec<f64>, diag: Vec<f64>, sup: Vec<f64>) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        for band in [&sub, &sup] {
            if band.len() != n - 1 {
                return Err(Error::DimensionMismatch { expected: n - 1, found: band.len() });
            }
        }
        Ok(Self { sub, diag, sup })
    }

    pub fn n(&self) -> usize {
        self.diag.len()
    }

    pub fn shifted(&self, shift: f64) -> Self {
        Self {
            sub: self.sub.clone(),
            diag: self.diag.iter().map(|d| d + shift).collect(),
            sup: self.sup.clone(),
        }
    }

    pub fn negated(&self) -> Self {
        let neg = |v: &[f64]| v.iter().map(|x| -x).collect();
        Self { sub: neg(&self.sub), diag: neg(&self.diag), sup: neg(&self.sup) }
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        let n = self.n();
        if x.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: x.len() });
        }
        Ok((0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.sub[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.sup[i] * x[i + 1];
                }
                s
            })
            .collect())
    }

    pub fn to_dense(&self) -> DenseMatrix<f64> {
        let n = self.n();
        DenseMatrix::from_fn(n, |i, j| match j as isize - i as isize {
            0 => self.diag[i],
            1 => self.sup[i],
            -1 => self.sub[j],
            _ => 0.0,
        })
        .expect("bands are finite")
    }

    pub fn norm_inf(&self) -> f64 {
        (0..self.n())
            .map(|i| {
                let mut s = self.diag[i].abs();
                if i > 0 {
                    s += self.sub[i - 1].abs();
                }
                if i + 1 < self.n() {
                    s += self.sup[i].abs();
                }
                s
            })
            .fold(0.0, f64::max)
    }

    /// Normwise backward error of `w` as a solution of `self * w = rhs`.
    pub fn backward_error(&self, w: &[f64], rhs: &[f64]) -> Result<f64> {
        let r: Vec<f64> = self.matvec(w)?.iter().zip(rhs).map(|(a, b)| b - a).collect();
        Ok(inf_norm(&r) / (self.norm_inf() * inf_norm(w) + inf_norm(rhs)))
    }
}

/// Tridiagonal elimination without pivoting; returns `None` when a pivot
/// falls below [`THOMAS_PIVOT_FLOOR`].
fn eliminate(t: &Tridiagonal, rhs: &[f64]) -> Option<Vec<f64>> {
    let n = t.n();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut pivot = t.diag[0];
    if pivot.abs() < THOMAS_PIVOT_FLOOR {
        return None;
    }
    if n > 1 {
        c[0] = t.sup[0] / pivot;
    }
    d[0] = rhs[0] / pivot;
    for i in 1..n {
        pivot = t.diag[i] - t.sub[i - 1] * c[i - 1];
        if pivot.abs() < THOMAS_PIVOT_FLOOR {
            return None;
        }
        if i + 1 < n {
            c[i] = t.sup[i] / pivot;
        }
        d[i] = (rhs[i] - t.sub[i - 1] * d[i - 1]) / pivot;
    }
    for i in (0..n - 1).rev() {
        d[i] -= c[i] * d[i + 1];
    }
    d.iter().all(|x| x.is_finite()).then_some(d)
}

/// Solves `T w = rhs` in O(n), with one refinement step. Falls back to
/// partial-pivoting dense LU when elimination meets a tiny pivot.
pub fn thomas_solve(t: &Tridiagonal, rhs: &[f64]) -> Result<Vec<f64>> {
    if rhs.len() != t.n() {
        return Err(Error::DimensionMismatch { expected: t.n(), found: rhs.len() });
    }
    let Some(mut w) = eliminate(t, rhs) else {
        return lu_solve(&t.to_dense(), rhs);
    };
    let tw = t.matvec(&w)?;
    let r: Vec<f64> = rhs.iter().zip(&tw).map(|(b, a)| b - a).collect();
    if let Some(dw) = eliminate(t, &r) {
        for (x, d) in w.iter_mut().zip(dw) {
            *x += d;
        }
    }
    Ok(w)
}

/// Tridiagonal sub-Markovian generator on states `0..=N`.
///
/// Row `i` has `a_i` at `(i, i-1)` (for `i >= 1`), `b_i` at `(i, i+1)`
/// (for `i < N`), and diagonal `-(a_i + b_i + c_i)`. The last rate `b_N`
/// has no column to land in and acts as killing at state `N`; matrices
/// in the reduced form carry all their killing there with `c ≡ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalQ {
    a: Vec<f64>,
    b: Vec<f64>,
    c: Vec<f64>,
}

impl TridiagonalQ {
    /// `a` holds `a_1..=a_N`; `b` and `c` hold indices `0..=N`.
    pub fn new(a: Vec<f64>, b: Vec<f64>, c: Vec<f64>) -> Result<Self> {
        if b.len() < 2 {
            return Err(Error::InvalidRates("need at least two states (N >= 1)".into()));
        }
        let n = b.len() - 1;
        if a.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: a.len() });
        }
        if c.len() != n + 1 {
            return Err(Error::DimensionMismatch { expected: n + 1, found: c.len() });
        }
        if let Some(i) = a.iter().position(|&x| !(x > 0.0 && x.is_finite())) {
            return Err(Error::InvalidRates(format!("a_{} must be positive", i + 1)));
        }
        if let Some(i) = b[..n].iter().position(|&x| !(x > 0.0 && x.is_finite())) {
            return Err(Error::InvalidRates(format!("b_{i} must be positive")));
        }
        if !(b[n] >= 0.0 && b[n].is_finite()) {
            return Err(Error::InvalidRates(format!("b_{n} must be nonnegative")));
        }
        if let Some(i) = c.iter().position(|&x| !(x >= 0.0 && x.is_finite())) {
            return Err(Error::InvalidRates(format!("c_{i} must be nonnegative")));
        }
        if c.iter().sum::<f64>() + b[n] <= 0.0 {
            return Err(Error::InvalidRates("killing rates are identically zero".into()));
        }
        Ok(Self { a, b, c })
    }

    /// Reduced form: killing only at the last state, through `b_N`.
    pub fn reduced(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        let c = vec![0.0; b.len()];
        Self::new(a, b, c)
    }

    /// Largest state index `N`; the matrix has order `N + 1`.
    pub fn last(&self) -> usize {
        self.b.len() - 1
    }

    pub fn order(&self) -> usize {
        self.b.len()
    }

    /// `a_i` for `1 <= i <= N`.
    pub fn a(&self, i: usize) -> f64 {
        self.a[i - 1]
    }

    pub fn b(&self, i: usize) -> f64 {
        self.b[i]
    }

    pub fn c(&self, i: usize) -> f64 {
        self.c[i]
    }

    pub fn a_slice(&self) -> &[f64] {
        &self.a
    }

    pub fn b_slice(&self) -> &[f64] {
        &self.b
    }

    pub fn c_slice(&self) -> &[f64] {
        &self.c
    }

    pub fn diag(&self, i: usize) -> f64 {
        let a = if i == 0 { 0.0 } else { self.a(i) };
        -(a + self.b[i] + self.c[i])
    }

    /// Killing at the last state, `b_N + c_N`.
    pub fn last_killing(&self) -> f64 {
        self.b[self.last()] + self.c[self.last()]
    }

    /// True when `c ≡ 0`, i.e. the matrix is already in reduced form.
    pub fn is_reduced(&self) -> bool {
        self.c.iter().all(|&x| x == 0.0)
    }

    pub fn to_tridiagonal(&self) -> Tridiagonal {
        let n = self.last();
        Tridiagonal {
            sub: self.a.clone(),
            diag: (0..=n).map(|i| self.diag(i)).collect(),
            sup: self.b[..n].to_vec(),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix<f64> {
        self.to_tridiagonal().to_dense()
    }

    /// Reads a dense tridiagonal Q-matrix: nonnegative off-diagonals, row sums `<= 0`.
    /// Killing `-(row sum)` goes to `c`, and `b_N = 0`.
    pub fn from_dense(q: &DenseMatrix<f64>) -> Result<Self> {
        if let Some((row, col)) = q.off_tridiagonal_entry() {
            return Err(Error::NotTridiagonal { row, col });
        }
        let n = q.n();
        if n < 2 {
            return Err(Error::InvalidRates("need at least two states (N >= 1)".into()));
        }
        let a = (1..n).map(|i| q.get(i, i - 1)).collect();
        let mut b: Vec<f64> = (0..n - 1).map(|i| q.get(i, i + 1)).collect();
        b.push(0.0);
        let c = q
            .row_sums()
            .iter()
            .enumerate()
            .map(|(i, &s)| if s > 0.0 { Err(Error::RowSumViolation { row: i, sum: s }) } else { Ok(-s) })
            .collect::<Result<Vec<_>>>()?;
        Self::new(a, b, c)
    }
}
