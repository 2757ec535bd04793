use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("matrix is numerically singular (pivot {pivot:e} below cutoff {cutoff:e}): {context}")]
    Singular { context: String, pivot: f64, cutoff: f64 },

    #[error("QR iteration did not converge after {iterations} sweeps ({} of {size} eigenvalues found)", partial.len())]
    NoConvergence {
        iterations: usize,
        size: usize,
        partial: Vec<Complex64>,
    },

    #[error("invalid basis: {0}")]
    InvalidBasis(String),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("node recipe undefined: {0}")]
    RecipeUndefined(String),

    #[error("problem too large: {0}")]
    TooLarge(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
