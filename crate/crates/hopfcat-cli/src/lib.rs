//! hopfcat: command-line front end for the cocommutative Hopf algebra
//! engine — file format, catalog addressing, and the reproducible
//! property-suite runner.
//!
//! Exit-code contract shared by the binary and the test harness:
//! 0 = success, 1 = a mathematical property failed on well-formed input,
//! 2 = the input itself was unusable (bad file, unknown group, bad flags).

use thiserror::Error;

pub mod catalog;
pub mod format;
pub mod suite;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(#[from] std::io::Error),

    #[error("syntax error in {path}: {detail}")]
    Syntax { path: String, detail: String },

    #[error("unsupported format version {0:?} (expected \"1\")")]
    Version(String),

    #[error("invalid file: {0}")]
    File(String),

    #[error("invalid argument: {0}")]
    Arg(String),

    #[error(transparent)]
    Core(#[from] hopfcat_core::Error),
}

impl CliError {
    /// 1 for mathematical failures on well-formed input, 2 for input errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(hopfcat_core::Error::AxiomsFailed { .. }) => 1,
            CliError::Core(hopfcat_core::Error::NotCat1) => 1,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
