use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Validation(String),

    #[error(transparent)]
    Numerical(nlip::Error),

    #[error("{failed} of {total} verification checks failed")]
    Verify { failed: usize, total: usize },

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl From<nlip::Error> for CliError {
    fn from(e: nlip::Error) -> Self {
        use nlip::Error::*;
        match e {
            AlphaRange(_) | InvalidDomain(_) | Overlap(..) | Index { .. } | Precondition(_) => {
                CliError::Validation(e.to_string())
            }
            other => CliError::Numerical(other),
        }
    }
}

#[derive(Serialize)]
struct Report<'a> {
    error: &'a str,
    message: String,
    exit_code: i32,
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Validation(_) => "validation",
            CliError::Numerical(_) => "numerical",
            CliError::Verify { .. } => "verify",
            CliError::Io { .. } => "io",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Validation(_) | CliError::Io { .. } => 1,
            CliError::Numerical(_) => 2,
            CliError::Verify { .. } => 3,
        }
    }

    /// Single-line JSON for stderr.
    pub fn to_json(&self) -> String {
        let r = Report {
            error: self.kind(),
            message: self.to_string(),
            exit_code: self.exit_code(),
        };
        serde_json::to_string(&r).expect("plain struct serializes")
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
