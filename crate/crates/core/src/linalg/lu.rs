use num_complex::Complex64;

use super::matrix::{ComplexMatrix, Norm};
use crate::error::{Error, Result};

/// Relative pivot cutoff: a pivot whose modulus falls below this multiple of
/// the largest initial column norm marks the matrix as singular.
pub const SINGULAR_PIVOT_RTOL: f64 = 1e-13;

/// LU factorization with partial pivoting, `P A = L U`, packed in place.
#[derive(Clone, Debug)]
pub struct Lu {
    factors: ComplexMatrix,
    perm: Vec<usize>,
    swaps: usize,
}

impl Lu {
    pub fn new(a: &ComplexMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Dimension(format!(
                "LU needs a square matrix, got {}x{}",
                a.rows(),
                a.cols()
            )));
        }
        let n = a.rows();
        if n == 0 {
            return Err(Error::Dimension("LU of an empty matrix".into()));
        }
        let max_col = super::one_norm(a)?;
        let cutoff = SINGULAR_PIVOT_RTOL * max_col;

        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut swaps = 0;
        for k in 0..n {
            let (p, pmag) =
                (k..n)
                    .map(|i| (i, lu[(i, k)].norm()))
                    .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pmag <= cutoff || pmag == 0.0 {
                return Err(Error::Singular {
                    context: format!("pivot in column {k} of a {n}x{n} matrix"),
                    pivot: pmag,
                    cutoff,
                });
            }
            if p != k {
                let s = lu.as_mut_slice();
                for j in 0..n {
                    s.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                swaps += 1;
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let l = div(lu[(i, k)], pivot);
                lu[(i, k)] = l;
                if l == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let s = lu.as_mut_slice();
                let (top, bottom) = s.split_at_mut(i * n);
                let src = &top[k * n + k + 1..k * n + n];
                let dst = &mut bottom[k + 1..n];
                for (d, &u) in dst.iter_mut().zip(src) {
                    *d -= l * u;
                }
            }
        }
        Ok(Self {
            factors: lu,
            perm,
            swaps,
        })
    }

    pub fn size(&self) -> usize {
        self.factors.rows()
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.size();
        if b.len() != n {
            return Err(Error::Dimension(format!(
                "right-hand side of length {} for a {n}x{n} system",
                b.len()
            )));
        }
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let row = self.factors.row(i);
            let s: Complex64 = row[..i].iter().zip(&x[..i]).map(|(l, y)| l * y).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let row = self.factors.row(i);
            let s: Complex64 = row[i + 1..].iter().zip(&x[i + 1..]).map(|(u, y)| u * y).sum();
            x[i] = div(x[i] - s, row[i]);
        }
        Ok(x)
    }

    /// Solves `A X = B` column by column.
    pub fn solve_matrix(&self, b: &ComplexMatrix) -> Result<ComplexMatrix> {
        let n = self.size();
        if b.rows() != n {
            return Err(Error::Dimension(format!(
                "right-hand side with {} rows for a {n}x{n} system",
                b.rows()
            )));
        }
        let mut out = ComplexMatrix::zeros(n, b.cols());
        let mut col = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..b.cols() {
            for (i, c) in col.iter_mut().enumerate() {
                *c = b[(i, j)];
            }
            let x = self.solve(&col)?;
            for (i, v) in x.into_iter().enumerate() {
                out[(i, j)] = v;
            }
        }
        Ok(out)
    }

    pub fn inverse(&self) -> Result<ComplexMatrix> {
        self.solve_matrix(&ComplexMatrix::identity(self.size()))
    }

    pub fn determinant(&self) -> Complex64 {
        let d: Complex64 = (0..self.size()).map(|i| self.factors[(i, i)]).product();
        if self.swaps % 2 == 1 {
            -d
        } else {
            d
        }
    }
}

/// `‖M⁻¹‖` in the requested norm, via LU and explicit column solves.
pub fn inverse_norm(m: &ComplexMatrix, norm: Norm) -> Result<f64> {
    Lu::new(m)?.inverse()?.norm(norm)
}

pub fn inverse(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    Lu::new(m)?.inverse()
}

pub fn determinant(m: &ComplexMatrix) -> Result<Complex64> {
    match Lu::new(m) {
        Ok(lu) => Ok(lu.determinant()),
        Err(Error::Singular { .. }) => Ok(Complex64::new(0.0, 0.0)),
        Err(e) => Err(e),
    }
}

/// Complex division without the underflow of `a * conj(b) / |b|^2`.
fn div(a: Complex64, b: Complex64) -> Complex64 {
    if b.re.abs() >= b.im.abs() {
        let r = b.im / b.re;
        let d = b.re + b.im * r;
        Complex64::new((a.re + a.im * r) / d, (a.im - a.re * r) / d)
    } else {
        let r = b.re / b.im;
        let d = b.re * r + b.im;
        Complex64::new((a.re * r + a.im) / d, (a.im * r - a.re) / d)
    }
}
