use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid chain, disorder, or sweep parameters.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("dimension mismatch: {what} has length {got}, expected {expected}")]
    Dimension {
        what: &'static str,
        got: usize,
        expected: usize,
    },

    /// The symmetric eigensolver did not converge.
    #[error(
        "eigendecomposition of {dim}x{dim} generator did not converge \
         (max |K| = {max_abs:.3e}, frobenius = {frobenius:.3e})"
    )]
    Eigen {
        dim: usize,
        max_abs: f64,
        frobenius: f64,
    },

    #[error("norm drift {drift:.3e} exceeds unitarity budget {budget:.1e}")]
    Unitarity { drift: f64, budget: f64 },

    #[error("segment {segment}: {source}")]
    Segment {
        segment: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("realization with seed {seed:#018x}: {source}")]
    Realization {
        seed: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("concurrence {0} outside [0, 1]")]
    Domain(f64),

    #[error("full-space oracle limited to {max} sites, got {got}")]
    OracleSize { got: usize, max: usize },

    #[error("usage error in `{key}`: {message}")]
    Usage { key: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn usage(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Usage {
            key: key.into(),
            message: message.into(),
        }
    }
}
