//! Dense complex linear algebra: matrices, subordinate norms, LU-based
//! inverse norms and the eigenvalue oracle used for verification.

mod eig;
mod lu;
mod matrix;
mod polyeig;

pub use eig::{dense_eigenvalues, spectral_distance, Spectrum, SWEEPS_PER_EIGENVALUE};
pub use lu::{determinant, inverse, inverse_norm, Lu, SINGULAR_PIVOT_RTOL};
pub use matrix::{inf_norm, one_norm, ComplexMatrix, Norm};
pub use polyeig::{block_companion, polyeig_oracle};
