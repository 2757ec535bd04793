//! Eigenvalue inclusion regions for matrix polynomials written in
//! generalized scalar bases (power, Newton, three-node quadratic).
//!
//! The pipeline is: build or read a matrix polynomial, rewrite it in a
//! chosen basis, compute the union of disks that holds every eigenvalue,
//! count eigenvalues per connected component and check the result against
//! a dense companion-matrix eigensolver.
//!
//! ```
//! use eigregion::{bases::GeneralizedBasis, problems, regions, Norm};
//!
//! let p = problems::mass_spring(6, 1.0, 8.0).unwrap();
//! let nodes = problems::mass_spring_nodes(1.0, 8.0);
//! let (a, b, c) = nodes.general_nodes.unwrap();
//! let basis = GeneralizedBasis::quadratic_general(a, b, c);
//! let coeffs = eigregion::bases::convert_to_basis(&p, &basis).unwrap();
//! let region = regions::inclusion_region(&coeffs, Norm::One).unwrap();
//! assert_eq!(region.predicted_counts, vec![0, 6, 6]);
//! let report = regions::verify_containment(&p, &region).unwrap();
//! assert!(report.contained);
//! ```

pub mod bases;
pub mod cauchy;
pub mod cli;
pub mod error;
pub mod json;
pub mod linalg;
pub mod poly;
pub mod problems;
pub mod regions;
pub mod svg;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, Norm, Spectrum};
pub use num_complex::Complex64;
pub use poly::{BasisCoefficients, MatrixPolynomial};
