use thiserror::Error;

/// Errors surfaced by matrix kernels, map evaluation and inequality checkers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("eigensolver did not converge: off-diagonal norm {off_norm:.3e} after {sweeps} sweeps (matrix norm {norm:.3e})")]
    EigNonConvergence {
        norm: f64,
        off_norm: f64,
        sweeps: usize,
    },

    #[error("eigenvalue {eigenvalue} outside function domain {domain}")]
    DomainViolation { eigenvalue: f64, domain: String },

    #[error("matrix is singular or not strictly positive (min eigenvalue {min_eig:.3e})")]
    Singular { min_eig: f64 },

    #[error("fixed-point iteration did not converge: residual {residual:.3e} after {iterations} iterations")]
    NonConvergence { residual: f64, iterations: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
