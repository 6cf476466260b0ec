use std::path::PathBuf;
use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A Fock index fell outside the certified part of the truncated space.
    #[error("Fock level {n} is outside the certified subspace (safe_dim = {safe_dim})")]
    LevelOutOfRange { n: usize, safe_dim: usize },

    /// A requested displacement cannot be represented faithfully in the
    /// truncated space.
    #[error(
        "displacement amplitude |alpha| = {alpha_abs:.4} exceeds the certified \
         capacity of the truncated space (dim = {dim}, safe_dim = {safe_dim}, \
         max certified |alpha| = {alpha_cap:.4})"
    )]
    Truncation {
        alpha_abs: f64,
        alpha_cap: f64,
        dim: usize,
        safe_dim: usize,
    },

    /// A configuration value failed validation.
    #[error("invalid {field}: {message}")]
    Validation { field: String, message: String },

    /// Structured-text input could not be parsed.
    #[error("config parse error: {0}")]
    Parse(String),

    /// A requested frequency does not sit on an exact bin of the grid.
    #[error(
        "frequency {omega:.12} is not an exact bin of the spectral grid \
         (bin width {d_omega:.12}); refusing to interpolate"
    )]
    GridMismatch { omega: f64, d_omega: f64 },

    /// Least-squares fit could not be carried out.
    #[error("poisson fit failed: {0}")]
    Fit(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Process exit code class used by the CLI: 1 = validation/parse/IO,
    /// 2 = truncation. Verification failure (3) is handled by the CLI itself.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Truncation { .. } | Error::LevelOutOfRange { .. } => 2,
            _ => 1,
        }
    }

    pub(crate) fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
