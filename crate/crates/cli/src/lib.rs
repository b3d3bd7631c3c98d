//! Library side of the `mssc` command: file formats, instance generation,
//! solving, and batch experiments.

pub mod experiment;
pub mod format;
pub mod gen;
pub mod solve;

use mssc_core::MsscError;
use thiserror::Error;

pub use format::FormatError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Format(#[from] FormatError),
    #[error("{0}")]
    Core(#[from] MsscError),
}

impl CliError {
    /// 2 for unusable input, 3 when an exact solver refuses the size, 4 when
    /// the LP solver gives up, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Format(_) => 2,
            CliError::Core(MsscError::GuardExceeded(_)) => 3,
            CliError::Core(MsscError::Solver(_)) => 4,
            CliError::Core(MsscError::InvalidInstance(_)) => 2,
            CliError::Core(_) | CliError::Io { .. } => 1,
        }
    }
}
