use num_complex::Complex64;

use super::eig::{dense_eigenvalues, Spectrum};
use super::lu::Lu;
use super::matrix::ComplexMatrix;
use crate::error::Result;
use crate::poly::MatrixPolynomial;

/// First-block-row companion matrix of the monicized polynomial
/// `I z^n + B_{n-1} z^{n-1} + ... + B_0` with `B_j = A_n⁻¹ A_j`:
///
/// ```text
/// [ -B_{n-1}  -B_{n-2}  ...  -B_0 ]
/// [    I         0      ...    0  ]
/// [    0         I      ...    0  ]
/// [   ...                         ]
/// ```
pub fn block_companion(p: &MatrixPolynomial) -> Result<ComplexMatrix> {
    let p = p.to_power_basis();
    let n = p.degree();
    let m = p.size();
    let lu = Lu::new(p.leading())?;
    let size = n * m;
    let mut comp = ComplexMatrix::zeros(size, size);
    for j in 0..n {
        let b = lu.solve_matrix(p.coefficient(j))?;
        // B_j occupies block column n-1-j of the first block row.
        let col0 = (n - 1 - j) * m;
        for r in 0..m {
            for c in 0..m {
                comp[(r, col0 + c)] = -b[(r, c)];
            }
        }
    }
    for k in 1..n {
        for d in 0..m {
            comp[(k * m + d, (k - 1) * m + d)] = Complex64::new(1.0, 0.0);
        }
    }
    Ok(comp)
}

/// All `n·m` finite eigenvalues of a matrix polynomial with nonsingular
/// leading coefficient. Non-power bases are re-expanded first.
pub fn polyeig_oracle(p: &MatrixPolynomial) -> Result<Spectrum> {
    dense_eigenvalues(&block_companion(p)?)
}
