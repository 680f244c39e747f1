use std::path::PathBuf;

/// Failures of the harness, split by exit code: input and contract problems
/// exit with 2, everything that goes wrong while computing or writing exits
/// with 1.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },

    #[error("{path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Core(#[from] nbspec_core::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        use nbspec_core::Error as C;
        match self {
            Error::Read { .. } | Error::Parse { .. } | Error::Input(_) => 2,
            Error::Write { .. } | Error::Json(_) => 1,
            Error::Core(e) => match e {
                C::Overflow(_)
                | C::NumericalDegeneracy { .. }
                | C::NoConvergence { .. }
                | C::RetryBudgetExceeded { .. } => 1,
                _ => 2,
            },
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
