//! JSON matrix files.
//!
//! ```json
//! {"kind": "dense", "rows": [[1, 2], [3, 4]]}
//! {"kind": "dense_complex", "rows": [[[1, 0], [0, 1]], [[0, -1], [1, 0]]]}
//! {"kind": "tridiagonal", "a": [1], "b": [1, 0], "c": [0, 1]}
//! ```
//!
//! Tridiagonal files describe a Q-matrix: `a` holds the sub-diagonal rates
//! `a_1..a_N`, `b` the super-diagonal rates `b_0..b_N` (the last one is
//! killing at state `N`), and `c` the killing rates `c_0..c_N`.

use std::path::Path;

use maxpair_core::{Complex64, DenseMatrix, TridiagonalQ};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};
use crate::format::{json_f64_rows, json_f64_vec, json_pair_rows};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MatrixFile {
    Dense {
        #[serde(serialize_with = "json_f64_rows")]
        rows: Vec<Vec<f64>>,
    },
    DenseComplex {
        #[serde(serialize_with = "json_pair_rows")]
        rows: Vec<Vec<[f64; 2]>>,
    },
    Tridiagonal {
        #[serde(serialize_with = "json_f64_vec")]
        a: Vec<f64>,
        #[serde(serialize_with = "json_f64_vec")]
        b: Vec<f64>,
        #[serde(serialize_with = "json_f64_vec")]
        c: Vec<f64>,
    },
}

/// A validated matrix ready for the engines.
#[derive(Debug, Clone, PartialEq)]
pub enum Matrix {
    Real(DenseMatrix<f64>),
    Complex(DenseMatrix<Complex64>),
    Tridiagonal(TridiagonalQ),
}

impl MatrixFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::BadInput(format!("malformed matrix file: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::BadInput(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix files always serialize")
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = self.to_json();
        text.push('\n');
        std::fs::write(path, text)?;
        Ok(())
    }

    pub fn from_real(m: &DenseMatrix<f64>) -> Self {
        MatrixFile::Dense { rows: m.to_rows() }
    }

    pub fn from_complex(m: &DenseMatrix<Complex64>) -> Self {
        let rows = m.to_rows().into_iter().map(|r| r.into_iter().map(|z| [z.re, z.im]).collect()).collect();
        MatrixFile::DenseComplex { rows }
    }

    pub fn from_tridiagonal(q: &TridiagonalQ) -> Self {
        MatrixFile::Tridiagonal { a: q.a_slice().to_vec(), b: q.b_slice().to_vec(), c: q.c_slice().to_vec() }
    }

    pub fn into_matrix(self) -> Result<Matrix> {
        Ok(match self {
            MatrixFile::Dense { rows } => Matrix::Real(DenseMatrix::from_rows(&rows)?),
            MatrixFile::DenseComplex { rows } => {
                let rows: Vec<Vec<Complex64>> =
                    rows.into_iter().map(|r| r.into_iter().map(|[re, im]| Complex64::new(re, im)).collect()).collect();
                Matrix::Complex(DenseMatrix::from_rows(&rows)?)
            }
            MatrixFile::Tridiagonal { a, b, c } => Matrix::Tridiagonal(TridiagonalQ::new(a, b, c)?),
        })
    }
}
