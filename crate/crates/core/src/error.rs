use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("matrix is exactly singular")]
    Singular,

    #[error("eigenvalue iteration did not converge after {iterations} sweeps")]
    NonConvergence { iterations: usize },

    #[error("Cholesky factorization failed after jitter {jitter:e}")]
    CholeskyFailure { jitter: f64 },

    #[error("inner field value {value} outside outer grid [-{half_width}, {half_width}]")]
    OutOfRange { value: f64, half_width: f64 },

    #[error("adaptive quadrature exceeded depth cap ({depth})")]
    QuadratureFailure { depth: usize },

    #[error("{failed} of {total} samples failed to converge")]
    TooManyFailures { failed: usize, total: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error("thread pool: {0}")]
    ThreadPool(#[from] rayon::ThreadPoolBuildError),
}

impl Error {
    /// Process exit code for the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::InvalidParameter(_) | Error::OutOfRange { .. } => 1,
            Error::Io(_) | Error::Json(_) | Error::ThreadPool(_) => 1,
            Error::Singular
            | Error::NonConvergence { .. }
            | Error::CholeskyFailure { .. }
            | Error::QuadratureFailure { .. }
            | Error::TooManyFailures { .. } => 2,
        }
    }
}
