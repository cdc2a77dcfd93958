//! Command-line front end for `maxpair-core`: matrix files, engine runs,
//! and table reproduction.

pub mod error;
pub mod format;
pub mod gen;
pub mod matrix_file;
pub mod solve;
pub mod tables;

pub use error::{CliError, Result};
