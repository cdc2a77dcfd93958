//! The `gen` subcommand: write model matrices and printed fixtures to disk.

use maxpair_core::models::{branching_q, fixture, single_birth_q, ARule, BranchingSpec, Fixture, FixtureName, SingleBirthSpec};

use crate::error::{CliError, Result};
use crate::matrix_file::MatrixFile;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    SingleBirth,
    Branching,
    Fixture,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenOptions {
    pub model: Model,
    pub n: Option<usize>,
    pub a_rule: ARule,
    pub alpha: Option<f64>,
    pub name: Option<String>,
    pub b4: Option<f64>,
}

fn missing(flag: &str) -> CliError {
    CliError::BadInput(format!("missing --{flag}"))
}

pub fn generate(opts: &GenOptions) -> Result<MatrixFile> {
    Ok(match opts.model {
        Model::SingleBirth => {
            let n = opts.n.ok_or_else(|| missing("n"))?;
            MatrixFile::from_real(&single_birth_q(SingleBirthSpec { n, rule: opts.a_rule })?)
        }
        Model::Branching => {
            let n = opts.n.ok_or_else(|| missing("n"))?;
            let alpha = opts.alpha.ok_or_else(|| missing("alpha"))?;
            MatrixFile::from_real(&branching_q(BranchingSpec { n, alpha })?)
        }
        Model::Fixture => {
            let name = opts.name.as_deref().ok_or_else(|| missing("name"))?;
            match fixture(FixtureName::parse(name, opts.b4)?)? {
                Fixture::Real(a) => MatrixFile::from_real(&a),
                Fixture::Complex(a) => MatrixFile::from_complex(&a),
            }
        }
    })
}
