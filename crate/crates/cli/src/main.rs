use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use maxpair_cli::gen::{generate, GenOptions, Model};
use maxpair_cli::matrix_file::MatrixFile;
use maxpair_cli::solve::{self, OutputFormat, SolveOptions};
use maxpair_cli::tables::{table, DEFAULT_MAX_N};
use maxpair_cli::CliError;
use maxpair_core::models::ARule;
use maxpair_core::{AlgorithmId, StopRule};

#[derive(Parser)]
#[command(name = "maxpair", version, about = "Maximal eigenpairs by globally initialized shifted inverse iteration")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one engine on a matrix file and print its trace.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        algorithm: Algorithm,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[arg(long, default_value_t = 100)]
        max_iter: usize,
        /// Blend weight for the initial shift of `sii`/`sii-q`.
        #[arg(long)]
        xi: Option<f64>,
        #[arg(long, value_enum)]
        stop_rule: Option<Rule>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Regenerate one of the reference experiment tables as CSV.
    Table {
        #[arg(long)]
        id: u32,
        /// Largest model size to run.
        #[arg(long, default_value_t = DEFAULT_MAX_N)]
        max_n: usize,
    },
    /// Write a model matrix or a printed fixture as a matrix file.
    Gen {
        #[arg(long, value_enum)]
        model: GenModel,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Rate::Reciprocal)]
        a_rule: Rate,
        #[arg(long)]
        alpha: Option<f64>,
        /// Fixture name: example1, example6, example9 or example18.
        #[arg(long)]
        name: Option<String>,
        /// `b4` parameter of example1.
        #[arg(long)]
        b4: Option<f64>,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    Rqi,
    Sii,
    RqiQ,
    SiiQ,
    Complex,
    Tri17a,
    Tri17b,
}

impl From<Algorithm> for AlgorithmId {
    fn from(a: Algorithm) -> Self {
        match a {
            Algorithm::Rqi => AlgorithmId::Rqi,
            Algorithm::Sii => AlgorithmId::Sii,
            Algorithm::RqiQ => AlgorithmId::RqiQ,
            Algorithm::SiiQ => AlgorithmId::SiiQ,
            Algorithm::Complex => AlgorithmId::SiiComplex,
            Algorithm::Tri17a => AlgorithmId::Tri17a,
            Algorithm::Tri17b => AlgorithmId::Tri17b,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    RatioGap,
    ShiftDelta,
    YDelta,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenModel {
    SingleBirth,
    Branching,
    Fixture,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rate {
    Reciprocal,
    One,
    Linear,
    Quadratic,
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Solve { input, algorithm, tol, max_iter, xi, stop_rule, format } => {
            let matrix = MatrixFile::read(&input)?.into_matrix()?;
            let opts = SolveOptions {
                algorithm: algorithm.into(),
                tol,
                max_iter,
                xi,
                stop_rule: stop_rule.map(|r| match r {
                    Rule::RatioGap => StopRule::RatioGap,
                    Rule::ShiftDelta => StopRule::ShiftDelta,
                    Rule::YDelta => StopRule::ComplexYDelta,
                }),
            };
            let report = solve::run(&matrix, &opts)?;
            let format = if format == Format::Json { OutputFormat::Json } else { OutputFormat::Csv };
            match format {
                OutputFormat::Json => println!("{}", report.to_json()),
                OutputFormat::Csv => print!("{}", report.to_csv()?),
            }
            if report.exit_code() != 0 {
                eprintln!("stopped without convergence: {}", report.stop_reason);
            }
            Ok(report.exit_code())
        }
        Command::Table { id, max_n } => {
            print!("{}", table(id, max_n)?.to_csv()?);
            Ok(0)
        }
        Command::Gen { model, n, a_rule, alpha, name, b4, out } => {
            let opts = GenOptions {
                model: match model {
                    GenModel::SingleBirth => Model::SingleBirth,
                    GenModel::Branching => Model::Branching,
                    GenModel::Fixture => Model::Fixture,
                },
                n,
                a_rule: match a_rule {
                    Rate::Reciprocal => ARule::Reciprocal,
                    Rate::One => ARule::One,
                    Rate::Linear => ARule::Linear,
                    Rate::Quadratic => ARule::Quadratic,
                },
                alpha,
                name,
                b4,
            };
            generate(&opts)?.write(&out)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
