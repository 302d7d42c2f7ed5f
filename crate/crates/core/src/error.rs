use thiserror::Error;

/// Crate-wide error type. The CLI maps these onto process exit codes:
/// domain-style failures exit 2, a refused certification exits 3, and
/// numerical non-convergence exits 4.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("generation failed after {attempts} attempts: {reason}")]
    Generation { attempts: u64, reason: String },

    #[error("structure error: {0}")]
    Structure(String),

    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("degenerate test-function family: {0}")]
    Degenerate(String),

    #[error("certification refused: graph girth {got} < required girth {required}")]
    CertificationRefused { required: usize, got: usize },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CertificationRefused { .. } => 3,
            Error::Numerical(_) => 4,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
