//! Dense nonsymmetric eigenvalues: balancing, Householder reduction to upper
//! Hessenberg form and single-shift complex QR iteration with Givens
//! rotations. Only eigenvalues are computed, so each QR sweep touches the
//! active diagonal window and nothing else.

use num_complex::Complex64;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};

/// Total QR sweeps allowed per unit of matrix size.
pub const SWEEPS_PER_EIGENVALUE: usize = 30;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Eigenvalues with multiplicity, in no particular order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Spectrum {
    pub values: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(values: Vec<Complex64>) -> Self {
        Self { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Complex64> {
        self.values.iter()
    }

    /// Lexicographic order by real part, then imaginary part.
    pub fn sorted(&self) -> Vec<Complex64> {
        let mut v = self.values.clone();
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    pub fn sum(&self) -> Complex64 {
        self.values.iter().sum()
    }

    pub fn product(&self) -> Complex64 {
        self.values.iter().product()
    }
}

/// Pairs each eigenvalue of `a` with its nearest unused counterpart in `b`
/// (greedy over globally sorted pair distances) and returns the largest
/// paired distance. Infinite when the lengths differ.
pub fn spectral_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            pairs.push(((x - y).norm(), i, j));
        }
    }
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0));
    let mut used_a = vec![false; a.len()];
    let mut used_b = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    let mut matched = 0;
    for (d, i, j) in pairs {
        if used_a[i] || used_b[j] {
            continue;
        }
        used_a[i] = true;
        used_b[j] = true;
        worst = worst.max(d);
        matched += 1;
        if matched == a.len() {
            break;
        }
    }
    worst
}

/// All eigenvalues of a square complex matrix.
pub fn dense_eigenvalues(m: &ComplexMatrix) -> Result<Spectrum> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "eigenvalues need a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Spectrum::default());
    }
    let mut h = m.clone();
    balance(&mut h);
    reduce_to_hessenberg(&mut h);
    hessenberg_qr(&mut h).map(Spectrum::new)
}

/// Diagonal similarity scaling by powers of two so that off-diagonal row and
/// column norms are comparable. Exact in floating point.
fn balance(a: &mut ComplexMatrix) {
    const RADIX: f64 = 2.0;
    let n = a.rows();
    let mut converged = false;
    let mut rounds = 0;
    while !converged && rounds < 100 {
        converged = true;
        rounds += 1;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].norm();
                    r += a[(i, j)].norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= RADIX * RADIX;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= RADIX * RADIX;
            }
            if (c + r) / f < 0.95 * s {
                converged = false;
                let inv = 1.0 / f;
                for j in 0..n {
                    a[(i, j)] *= inv;
                    a[(j, i)] *= f;
                }
            }
        }
    }
}

fn reduce_to_hessenberg(a: &mut ComplexMatrix) {
    let n = a.rows();
    if n < 3 {
        return;
    }
    let mut v = vec![ZERO; n];
    let mut w = vec![ZERO; n];
    for k in 0..n - 2 {
        let len = n - k - 1;
        let xnorm = (k + 1..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * xnorm;
        let v = &mut v[..len];
        for (t, vi) in v.iter_mut().enumerate() {
            *vi = a[(k + 1 + t, k)];
        }
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for vi in v.iter_mut() {
            *vi /= vnorm;
        }

        // Left: A[k+1.., k..] -= 2 v (v^H A[k+1.., k..])
        let w = &mut w[..n];
        for j in k..n {
            let mut s = ZERO;
            for (t, vi) in v.iter().enumerate() {
                s += vi.conj() * a[(k + 1 + t, j)];
            }
            w[j] = s * 2.0;
        }
        for (t, vi) in v.iter().enumerate() {
            let row = k + 1 + t;
            for j in k..n {
                let wj = w[j];
                a[(row, j)] -= vi * wj;
            }
        }

        // Right: A[.., k+1..] -= 2 (A[.., k+1..] v) v^H
        for i in 0..n {
            let row = a.row(i);
            let s: Complex64 = row[k + 1..].iter().zip(v.iter()).map(|(x, vi)| x * vi).sum();
            let s = s * 2.0;
            for (t, vi) in v.iter().enumerate() {
                a[(i, k + 1 + t)] -= s * vi.conj();
            }
        }

        a[(k + 1, k)] = alpha;
        for i in k + 2..n {
            a[(i, k)] = ZERO;
        }
    }
}

/// Rotation `[c s; -conj(s) c]` that maps `(x, y)` to `(r, 0)`.
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    let ax = x.norm();
    let ay = y.norm();
    if ay == 0.0 {
        return (1.0, ZERO);
    }
    if ax == 0.0 {
        return (0.0, y.conj() / ay);
    }
    let r = ax.hypot(ay);
    (ax / r, (x / ax) * y.conj() / r)
}

fn hessenberg_qr(h: &mut ComplexMatrix) -> Result<Vec<Complex64>> {
    let n = h.rows();
    let eps = f64::EPSILON;
    let max_sweeps = SWEEPS_PER_EIGENVALUE * n;
    let hnorm = h.max_abs();
    let mut eigenvalues = Vec::with_capacity(n);
    let mut sweeps = 0;
    let mut since_deflation = 0;
    let mut hi = n - 1;

    loop {
        if hi == 0 {
            eigenvalues.push(h[(0, 0)]);
            break;
        }

        // Locate the top of the unreduced active block.
        let mut lo = 0;
        for l in (1..=hi).rev() {
            let sub = h[(l, l - 1)].norm();
            let mut scale = h[(l - 1, l - 1)].norm() + h[(l, l)].norm();
            if scale == 0.0 {
                scale = hnorm;
            }
            if sub <= eps * scale || sub < f64::MIN_POSITIVE {
                h[(l, l - 1)] = ZERO;
                lo = l;
                break;
            }
        }

        if lo == hi {
            eigenvalues.push(h[(hi, hi)]);
            hi -= 1;
            since_deflation = 0;
            continue;
        }

        if sweeps >= max_sweeps {
            return Err(Error::NoConvergence {
                iterations: sweeps,
                size: n,
                partial: eigenvalues,
            });
        }
        sweeps += 1;
        since_deflation += 1;

        let shift = if since_deflation % 11 == 0 {
            // Exceptional shift to break cycles.
            let s = 0.75 * h[(hi, hi - 1)].re.abs() + if hi >= 2 { h[(hi - 1, hi - 2)].re.abs() } else { 0.0 };
            h[(hi, hi)] + s
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        qr_sweep(h, lo, hi, shift);
    }
    Ok(eigenvalues)
}

/// Eigenvalue of `[[a, b], [c, d]]` closer to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mean = (a + d) * 0.5;
    let l1 = mean + disc;
    let l2 = mean - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// One implicit single-shift QR sweep over the window `lo..=hi`.
fn qr_sweep(h: &mut ComplexMatrix, lo: usize, hi: usize, shift: Complex64) {
    let mut x = h[(lo, lo)] - shift;
    let mut y = h[(lo + 1, lo)];
    for k in lo..hi {
        let (c, s) = givens(x, y);
        let col_start = if k == lo { lo } else { k - 1 };
        for j in col_start..=hi {
            let u = h[(k, j)];
            let v = h[(k + 1, j)];
            h[(k, j)] = u * c + s * v;
            h[(k + 1, j)] = -s.conj() * u + v * c;
        }
        let row_end = (k + 2).min(hi);
        for i in lo..=row_end {
            let p = h[(i, k)];
            let q = h[(i, k + 1)];
            h[(i, k)] = p * c + q * s.conj();
            h[(i, k + 1)] = -p * s + q * c;
        }
        if k + 1 < hi {
            x = h[(k + 1, k)];
            y = h[(k + 2, k)];
        }
    }
}
