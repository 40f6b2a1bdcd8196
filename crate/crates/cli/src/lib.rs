//! Library side of the `mbspline` command: resolving bases from the command
//! line, CSV formats, the reconstruction job and the HTTP endpoint.

pub mod job;
pub mod server;
pub mod space;
pub mod table;

use mbspline::basis::BasisError;
use mbspline::sampling::SamplingError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad arguments or input shape; exit code 2.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Basis(#[from] BasisError),
    #[error(transparent)]
    Sampling(#[from] SamplingError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}
