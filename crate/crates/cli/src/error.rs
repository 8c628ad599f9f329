use std::path::PathBuf;

use graded_cotangent::algebroid::AlgebroidError;
use graded_cotangent::dirac::DiracError;
use graded_cotangent::kernel::KernelError;
use graded_cotangent::ruth_lk::RuthError;
use graded_cotangent::symplectic::SymplecticError;
use thiserror::Error;

/// Anything that stops a document from being evaluated. All of these map to
/// exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed document: {0}")]
    Syntax(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("cannot start worker threads: {0}")]
    Threads(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
    #[error(transparent)]
    Algebroid(#[from] AlgebroidError),
    #[error(transparent)]
    Dirac(#[from] DiracError),
    #[error(transparent)]
    Ruth(#[from] RuthError),
}

pub type Result<T> = std::result::Result<T, CliError>;

pub(crate) fn schema(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}
