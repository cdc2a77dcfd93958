//! Example generators and the matrices printed with the reference experiments.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

/// Down-jump rate rule `k -> a_k` of the single-birth generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ARule {
    /// `a_k = 1/(k+1)`
    Reciprocal,
    /// `a_k = 1`
    One,
    /// `a_k = k`
    Linear,
    /// `a_k = k^2`
    Quadratic,
}

impl ARule {
    pub fn rate(self, k: usize) -> f64 {
        let k = k as f64;
        match self {
            ARule::Reciprocal => 1.0 / (k + 1.0),
            ARule::One => 1.0,
            ARule::Linear => k,
            ARule::Quadratic => k * k,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ARule::Reciprocal => "reciprocal",
            ARule::One => "one",
            ARule::Linear => "linear",
            ARule::Quadratic => "quadratic",
        }
    }
}

impl std::str::FromStr for ARule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reciprocal" => Ok(ARule::Reciprocal),
            "one" => Ok(ARule::One),
            "linear" => Ok(ARule::Linear),
            "quadratic" => Ok(ARule::Quadratic),
            other => Err(Error::InvalidParameter(format!("unknown a-rule `{other}`"))),
        }
    }
}

/// Single-birth Q-matrix on the `n` states `0..n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingleBirthSpec {
    pub n: usize,
    pub rule: ARule,
}

/// Builds the single-birth generator: state `i` jumps up to `i+1` at rate
/// `i+1` and down to `0` at rate `a_i`. The top state `n-1` keeps its
/// up-rate `n` as killing, so every row sums to zero except the last, which
/// sums to `-n`.
pub fn single_birth_q(spec: SingleBirthSpec) -> Result<DenseMatrix<f64>> {
    let n = spec.n;
    if n < 2 {
        return Err(Error::InvalidParameter("single-birth model needs n >= 2".into()));
    }
    let mut q = DenseMatrix::zeros(n);
    for i in 0..n {
        let down = if i == 0 { 0.0 } else { spec.rule.rate(i) };
        if i > 0 {
            q.set(i, 0, down);
        }
        if i + 1 < n {
            q.set(i, i + 1, (i + 1) as f64);
        }
        let d = q.get(i, i);
        q.set(i, i, d - down - (i + 1) as f64);
    }
    Ok(q)
}

/// Branching generator killed at 0, on states `1..=n`, with offspring law
/// `p_0 = alpha/2`, `p_1 = 0`, `p_k = (2-alpha)/2^k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchingSpec {
    pub n: usize,
    pub alpha: f64,
}

impl BranchingSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParameter("branching model needs n >= 2".into()));
        }
        if !(self.alpha > 0.0 && self.alpha < 2.0) {
            return Err(Error::InvalidParameter(format!("alpha {} not in (0, 2)", self.alpha)));
        }
        Ok(())
    }

    pub fn p(&self, k: usize) -> f64 {
        match k {
            0 => self.alpha / 2.0,
            1 => 0.0,
            _ => (2.0 - self.alpha) * 0.5f64.powi(k as i32),
        }
    }

    /// `sum_{k >= from} p_k` for `from >= 2`, in closed form.
    pub fn tail(&self, from: usize) -> f64 {
        debug_assert!(from >= 2);
        (2.0 - self.alpha) * 0.5f64.powi(from as i32 - 1)
    }
}

pub fn branching_q(spec: BranchingSpec) -> Result<DenseMatrix<f64>> {
    spec.validate()?;
    let n = spec.n;
    let mut q = DenseMatrix::zeros(n);
    // Row r is state i = r + 1.
    for r in 0..n {
        let i = r + 1;
        let fi = i as f64;
        if r > 0 {
            q.set(r, r - 1, fi * spec.p(0));
        }
        if i < n {
            q.set(r, r, -fi);
            for j in i + 1..n {
                q.set(r, j - 1, fi * spec.p(j - i + 1));
            }
            q.set(r, n - 1, fi * spec.tail(n - i + 1));
        } else {
            q.set(r, r, -fi * spec.p(0));
        }
    }
    Ok(q)
}

/// 5×5 Q-matrix whose last-row killing is `b4`.
pub fn example1(b4: f64) -> Result<DenseMatrix<f64>> {
    if !(b4 >= 0.0 && b4.is_finite()) {
        return Err(Error::InvalidParameter(format!("b4 = {b4} must be nonnegative")));
    }
    DenseMatrix::from_rows(&[
        [-3.0, 2.0, 0.0, 1.0, 0.0],
        [4.0, -7.0, 3.0, 0.0, 0.0],
        [0.0, 5.0, -5.0, 0.0, 0.0],
        [10.0, 0.0, 0.0, -16.0, 6.0],
        [0.0, 0.0, 0.0, 11.0, -11.0 - b4],
    ])
}

/// Real 3×3 matrix with negative entries whose square is positive.
pub fn example6() -> Result<DenseMatrix<f64>> {
    DenseMatrix::from_rows(&[[-1.0, 8.0, -1.0], [8.0, 8.0, 8.0], [-1.0, 8.0, 8.0]])
}

/// Complex 3×3 matrix with spectrum {3, -2-i, 1+i}, coefficients to four decimals.
pub fn example9() -> Result<DenseMatrix<Complex64>> {
    let c = Complex64::new;
    DenseMatrix::from_rows(&[
        [c(0.75, -1.125), c(0.5882, -0.1471), c(1.0735, 1.4191)],
        [c(-0.5, -1.0), c(2.1765, 0.7059), c(2.1471, -0.4118)],
        [c(2.75, -0.125), c(0.5882, -0.1471), c(-0.9265, 0.4191)],
    ])
}

/// Nonnegative tridiagonal 6×6 matrix.
pub fn example18() -> Result<DenseMatrix<f64>> {
    DenseMatrix::from_rows(&[
        [2.334, 0.9962, 0.0, 0.0, 0.0, 0.0],
        [0.5142, 2.6725, 0.1111, 0.0, 0.0, 0.0],
        [0.0, 0.2115, 2.263, 0.1405, 0.0, 0.0],
        [0.0, 0.0, 0.8442, 2.8457, 0.7595, 0.0],
        [0.0, 0.0, 0.0, 0.2347, 2.2257, 0.0781],
        [0.0, 0.0, 0.0, 0.0, 0.9837, 2.1582],
    ])
}

/// Values of `b4` printed for [`example1`].
pub const EXAMPLE1_B4: [f64; 4] = [0.01, 1.0, 100.0, 1e4];

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FixtureName {
    Example1 { b4: f64 },
    Example6,
    Example9,
    Example18,
}

impl FixtureName {
    /// Parses `example1`, `example6`, `example9`, `example18`; `example1` needs `b4`.
    pub fn parse(name: &str, b4: Option<f64>) -> Result<Self> {
        match name {
            "example1" => {
                let b4 = b4.ok_or_else(|| Error::InvalidParameter("example1 needs b4".into()))?;
                if !EXAMPLE1_B4.contains(&b4) {
                    return Err(Error::InvalidParameter(format!(
                        "example1 is printed for b4 in {EXAMPLE1_B4:?}, got {b4}"
                    )));
                }
                Ok(Self::Example1 { b4 })
            }
            "example6" => Ok(Self::Example6),
            "example9" => Ok(Self::Example9),
            "example18" => Ok(Self::Example18),
            other => Err(Error::UnknownFixture(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Fixture {
    Real(DenseMatrix<f64>),
    Complex(DenseMatrix<Complex64>),
}

pub fn fixture(name: FixtureName) -> Result<Fixture> {
    Ok(match name {
        FixtureName::Example1 { b4 } => Fixture::Real(example1(b4)?),
        FixtureName::Example6 => Fixture::Real(example6()?),
        FixtureName::Example9 => Fixture::Complex(example9()?),
        FixtureName::Example18 => Fixture::Real(example18()?),
    })
}
