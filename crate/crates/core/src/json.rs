//! JSON encodings shared by the CLI and FFI layers. Complex numbers are
//! `[re, im]` pairs; matrices are arrays of rows of pairs.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::poly::MatrixPolynomial;

pub type Pair = [f64; 2];

pub fn pair(z: Complex64) -> Pair {
    [z.re, z.im]
}

pub fn complex(p: Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

pub fn matrix_to_json(m: &ComplexMatrix) -> Vec<Vec<Pair>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().copied().map(pair).collect())
        .collect()
}

pub fn matrix_from_json(rows: &[Vec<Pair>]) -> Result<ComplexMatrix> {
    let rows: Vec<Vec<Complex64>> = rows.iter().map(|r| r.iter().copied().map(complex).collect()).collect();
    ComplexMatrix::from_rows(&rows)
}

/// Power-basis coefficient file: `{"coefficients": [A_0, A_1, ..., A_n]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoefficientFile {
    pub coefficients: Vec<Vec<Vec<Pair>>>,
}

impl CoefficientFile {
    pub fn from_polynomial(p: &MatrixPolynomial) -> Self {
        let p = p.to_power_basis();
        Self {
            coefficients: p.coefficients().iter().map(matrix_to_json).collect(),
        }
    }

    pub fn to_polynomial(&self) -> Result<MatrixPolynomial> {
        let mats = self
            .coefficients
            .iter()
            .map(|m| matrix_from_json(m))
            .collect::<Result<Vec<_>>>()?;
        if mats.iter().any(|m| m.is_empty()) {
            return Err(Error::Dimension("empty coefficient matrix".into()));
        }
        MatrixPolynomial::power(mats)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coefficient_file_round_trip() {
        let a0 = ComplexMatrix::from_rows(&[
            [Complex64::new(1.0, -2.0), Complex64::new(0.5, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(3.0, 1e-17)],
        ])
        .unwrap();
        let p = MatrixPolynomial::monic_quadratic(a0.clone(), a0).unwrap();
        let text = serde_json::to_string(&CoefficientFile::from_polynomial(&p)).unwrap();
        let back: CoefficientFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_polynomial().unwrap(), p);
    }

    #[test]
    fn ragged_matrix_rejected() {
        let bad = CoefficientFile {
            coefficients: vec![vec![vec![[1.0, 0.0]], vec![]], vec![vec![[1.0, 0.0]]]],
        };
        assert!(bad.to_polynomial().is_err());
    }
}
