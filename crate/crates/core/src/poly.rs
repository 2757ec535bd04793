//! Matrix polynomials `Σ C_j q_j(z)` over a generalized scalar basis.

use num_complex::Complex64;

use crate::bases::GeneralizedBasis;
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Square matrix coefficients `C_0..C_n` together with the basis
/// `q_0..q_n` they multiply. With the power basis these are the ordinary
/// coefficients `A_0..A_n` of `Σ A_j z^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixPolynomial {
    coefficients: Vec<ComplexMatrix>,
    basis: GeneralizedBasis,
}

/// Coefficients of a polynomial re-expressed in a non-power basis.
pub type BasisCoefficients = MatrixPolynomial;

impl MatrixPolynomial {
    /// Power-basis polynomial from ascending coefficients `A_0..A_n`.
    pub fn power(coefficients: Vec<ComplexMatrix>) -> Result<Self> {
        let n = coefficients.len().saturating_sub(1);
        Self::new(coefficients, GeneralizedBasis::power(n))
    }

    pub fn new(coefficients: Vec<ComplexMatrix>, basis: GeneralizedBasis) -> Result<Self> {
        if coefficients.len() < 2 {
            return Err(Error::Invalid(format!(
                "a matrix polynomial needs degree >= 1, got {} coefficient(s)",
                coefficients.len()
            )));
        }
        let m = coefficients[0].rows();
        if m == 0 {
            return Err(Error::Dimension("coefficients must be nonempty".into()));
        }
        for (j, c) in coefficients.iter().enumerate() {
            if c.rows() != m || c.cols() != m {
                return Err(Error::Dimension(format!(
                    "coefficient {j} is {}x{}, expected {m}x{m}",
                    c.rows(),
                    c.cols()
                )));
            }
        }
        let n = coefficients.len() - 1;
        if basis.degree() != n {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: basis.degree(),
            });
        }
        Ok(Self { coefficients, basis })
    }

    /// Monic quadratic `I z^2 + A1 z + A0` in the power basis.
    pub fn monic_quadratic(a1: ComplexMatrix, a0: ComplexMatrix) -> Result<Self> {
        let m = a1.rows();
        Self::power(vec![a0, a1, ComplexMatrix::identity(m)])
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Size `m` of the square coefficients.
    pub fn size(&self) -> usize {
        self.coefficients[0].rows()
    }

    pub fn coefficients(&self) -> &[ComplexMatrix] {
        &self.coefficients
    }

    pub fn coefficient(&self, j: usize) -> &ComplexMatrix {
        &self.coefficients[j]
    }

    pub fn leading(&self) -> &ComplexMatrix {
        &self.coefficients[self.degree()]
    }

    pub fn basis(&self) -> &GeneralizedBasis {
        &self.basis
    }

    pub fn is_power_basis(&self) -> bool {
        matches!(self.basis, GeneralizedBasis::Power { .. })
    }

    /// Evaluates `Σ C_j q_j(z)`.
    pub fn eval(&self, z: Complex64) -> ComplexMatrix {
        let q = self.basis.eval_all(z, self.degree());
        let m = self.size();
        let mut out = ComplexMatrix::zeros(m, m);
        for (c, qj) in self.coefficients.iter().zip(q) {
            for (o, &x) in out.as_mut_slice().iter_mut().zip(c.as_slice()) {
                *o += x * qj;
            }
        }
        out
    }

    /// Re-expands into the power basis: `A_k = Σ_{j≥k} C_j [z^k] q_j`.
    pub fn to_power_basis(&self) -> Self {
        if self.is_power_basis() {
            return self.clone();
        }
        let n = self.degree();
        let m = self.size();
        let mut power = vec![ComplexMatrix::zeros(m, m); n + 1];
        for (j, c) in self.coefficients.iter().enumerate() {
            let q = self.basis.power_coefficients(j);
            for (k, &qk) in q.iter().enumerate() {
                if qk == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for (dst, &x) in power[k].as_mut_slice().iter_mut().zip(c.as_slice()) {
                    *dst += x * qk;
                }
            }
        }
        Self {
            coefficients: power,
            basis: GeneralizedBasis::power(n),
        }
    }

    /// Reversed power-basis polynomial `z^n P(1/z) = Σ A_{n-j} z^j`.
    pub fn reversed(&self) -> Self {
        let p = self.to_power_basis();
        let mut coefficients = p.coefficients;
        coefficients.reverse();
        Self {
            coefficients,
            basis: p.basis,
        }
    }

    /// Multiplies every coefficient on the left by `M`.
    pub fn left_multiply(&self, m: &ComplexMatrix) -> Result<Self> {
        let coefficients = self
            .coefficients
            .iter()
            .map(|c| m.matmul(c))
            .collect::<Result<Vec<_>>>()?;
        Self::new(coefficients, self.basis.clone())
    }
}
