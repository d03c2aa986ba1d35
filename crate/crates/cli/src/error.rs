use std::io;
use std::path::PathBuf;

use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("csv error in {path}: {message}")]
    Csv { path: PathBuf, message: String },
    #[error(transparent)]
    Numerical(#[from] scfem_core::Error),
    #[error("not converged after {iterations} iterations: estimate {estimate:e} vs tolerance {tolerance:e}")]
    NotConverged {
        iterations: usize,
        estimate: f64,
        tolerance: f64,
    },
    #[error("traces are not comparable: {0}")]
    Mismatch(String),
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Serialize)]
struct ErrorReport<'a> {
    kind: &'a str,
    exit_code: i32,
    message: String,
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// 2 for bad input, 3 for numerical failures, 4 for runs that stop unconverged.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Mismatch(_) | CliError::Csv { .. } => 2,
            CliError::Numerical(scfem_core::Error::InvalidConfig(_)) => 2,
            CliError::Io { .. } | CliError::Numerical(_) => 3,
            CliError::NotConverged { .. } => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Io { .. } => "io",
            CliError::Csv { .. } => "csv",
            CliError::Numerical(scfem_core::Error::InvalidConfig(_)) => "config",
            CliError::Numerical(_) => "numerical",
            CliError::NotConverged { .. } => "not-converged",
            CliError::Mismatch(_) => "mismatch",
        }
    }

    /// One-line JSON object for stderr.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ErrorReport {
            kind: self.kind(),
            exit_code: self.exit_code(),
            message: self.to_string(),
        })
        .expect("error report serialises")
    }
}
