//! Cauchy radius: the unique positive root of
//! `c x^n - b_{n-1} x^{n-1} - ... - b_1 x - b_0` with `c = 1/‖A_n⁻¹‖` and
//! `b_j = ‖A_j‖`.

use serde::Serialize;

use crate::error::{Error, Result};

const MAX_BRACKET_STEPS: usize = 2100;
const MAX_BISECTIONS: usize = 200;
const BISECTION_RTOL: f64 = 1e-14;
const NEWTON_STEPS: usize = 3;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CauchyResult {
    pub rho: f64,
    /// Defining function evaluated at `rho`.
    pub residual: f64,
    pub iterations: usize,
    pub bracket: (f64, f64),
}

/// The majorant `f(x) = c x^n - Σ b_j x^j` with `b = [b_0, ..., b_{n-1}]`.
#[derive(Clone, Copy, Debug)]
pub struct Majorant<'a> {
    pub leading: f64,
    pub lower: &'a [f64],
}

impl Majorant<'_> {
    pub fn degree(&self) -> usize {
        self.lower.len()
    }

    /// Compensated Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        let mut s = self.leading;
        let mut corr = 0.0f64;
        for &b in self.lower.iter().rev() {
            let p = s * x;
            let pe = s.mul_add(x, -p);
            let t = p - b;
            let z = t - p;
            let se = (p - (t - z)) + (-b - z);
            s = t;
            corr = corr.mul_add(x, pe + se);
        }
        s + corr
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let n = self.degree();
        let mut d = self.leading * n as f64;
        for j in (1..n).rev() {
            d = d * x - self.lower[j] * j as f64;
        }
        d
    }

    /// Largest coefficient magnitude, floored at one.
    pub fn scale(&self) -> f64 {
        self.lower.iter().copied().fold(self.leading.max(1.0), f64::max)
    }
}

/// Solves for the Cauchy radius given `‖A_n⁻¹‖` and the lower coefficient
/// norms `[‖A_0‖, ..., ‖A_{n-1}‖]`.
///
/// Brackets by doubling (or halving) from `x = 1`, bisects to relative width
/// `1e-14`, then polishes with three Newton steps kept inside the bracket.
pub fn cauchy_radius(inv_leading_norm: f64, lower_norms: &[f64]) -> Result<CauchyResult> {
    if !(inv_leading_norm.is_finite() && inv_leading_norm > 0.0) {
        return Err(Error::Precondition(format!(
            "inverse leading norm must be finite and positive, got {inv_leading_norm}"
        )));
    }
    if lower_norms.is_empty() {
        return Err(Error::Precondition("polynomial degree must be at least 1".into()));
    }
    if let Some(b) = lower_norms.iter().find(|b| !(b.is_finite() && **b >= 0.0)) {
        return Err(Error::Precondition(format!(
            "coefficient norms must be finite and nonnegative, got {b}"
        )));
    }
    if lower_norms.iter().all(|&b| b == 0.0) {
        return Ok(CauchyResult {
            rho: 0.0,
            residual: 0.0,
            iterations: 0,
            bracket: (0.0, 0.0),
        });
    }

    let f = Majorant {
        leading: 1.0 / inv_leading_norm,
        lower: lower_norms,
    };
    let mut iterations = 0;

    // f(x) <= 0 on (0, rho] and f(x) > 0 beyond it.
    let (mut lo, mut hi) = if f.eval(1.0) > 0.0 {
        let mut hi = 1.0;
        while f.eval(hi * 0.5) > 0.0 && iterations < MAX_BRACKET_STEPS {
            hi *= 0.5;
            iterations += 1;
        }
        (hi * 0.5, hi)
    } else {
        let mut lo = 1.0;
        while f.eval(lo * 2.0) <= 0.0 {
            lo *= 2.0;
            iterations += 1;
            if iterations >= MAX_BRACKET_STEPS || !lo.is_finite() {
                return Err(Error::Precondition("Cauchy radius overflows f64".into()));
            }
        }
        (lo, lo * 2.0)
    };
    let bracket = (lo, hi);

    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= BISECTION_RTOL * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f.eval(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
    }

    let mut best = hi;
    let mut best_res = f.eval(hi);
    let lo_res = f.eval(lo);
    if lo_res.abs() < best_res.abs() {
        best = lo;
        best_res = lo_res;
    }
    let mut x = best;
    for _ in 0..NEWTON_STEPS {
        let d = f.derivative(x);
        if !(d.is_finite() && d != 0.0) {
            break;
        }
        let next = x - f.eval(x) / d;
        iterations += 1;
        if !(next.is_finite() && next > 0.0) {
            break;
        }
        x = next;
        let r = f.eval(x);
        if r.abs() < best_res.abs() {
            best = x;
            best_res = r;
        }
    }

    Ok(CauchyResult {
        rho: best,
        residual: best_res,
        iterations,
        bracket,
    })
}
