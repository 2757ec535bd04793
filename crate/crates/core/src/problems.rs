//! Benchmark quadratic eigenvalue problems and the node-selection recipes
//! that pick Newton / three-node bases for them.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::{complex, Pair};
use crate::linalg::{ComplexMatrix, Norm};
use crate::poly::MatrixPolynomial;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Relative tolerance under which two root-selection criteria tie.
pub const TIE_RTOL: f64 = 1e-12;

/// Absolute convergence tolerance of the adaptive Simpson rule.
pub const QUADRATURE_TOL: f64 = 1e-12;

const MAX_PANELS: usize = 1 << 26;

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Roots of `z^2 + p z + q`, computed without cancellation. Real
/// coefficients with negative discriminant give exact conjugates.
pub fn quadratic_roots(p: Complex64, q: Complex64) -> [Complex64; 2] {
    let disc = p * p - 4.0 * q;
    if p.im == 0.0 && q.im == 0.0 {
        if disc.re < 0.0 {
            let re = -0.5 * p.re;
            let im = 0.5 * (-disc.re).sqrt();
            return [Complex64::new(re, im), Complex64::new(re, -im)];
        }
        let t = -0.5 * (p.re + p.re.signum() * disc.re.sqrt());
        if t == 0.0 {
            return [ZERO, ZERO];
        }
        return [real(t), real(q.re / t)];
    }
    let mut s = disc.sqrt();
    if (p.conj() * s).re < 0.0 {
        s = -s;
    }
    let t = -0.5 * (p + s);
    if t == ZERO {
        return [ZERO, ZERO];
    }
    [t, q / t]
}

/// Index (0 or 1) of the root with the smaller criterion. Ties go to the
/// root with nonnegative imaginary part, then to the smaller real part.
fn pick_root(roots: &[Complex64; 2], crit: &[f64; 2]) -> usize {
    let tie = (crit[0] - crit[1]).abs() <= TIE_RTOL * crit[0].max(crit[1]);
    if !tie {
        return if crit[0] <= crit[1] { 0 } else { 1 };
    }
    let (x, y) = (roots[0], roots[1]);
    match (x.im >= 0.0, y.im >= 0.0) {
        (true, false) => 0,
        (false, true) => 1,
        _ => {
            if y.re < x.re {
                1
            } else {
                0
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NodeDiagnostics {
    /// Selection criterion at the chosen root.
    pub chosen_criterion: f64,
    /// Selection criterion at the other root.
    pub rejected_criterion: f64,
    /// Why no three-node basis was produced, if it was not.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub general_unavailable: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NodeSelection {
    pub newton_nodes: (Complex64, Complex64),
    pub general_nodes: Option<(Complex64, Complex64, Complex64)>,
    pub diagnostics: NodeDiagnostics,
}

impl NodeSelection {
    /// The three-node triple, or the reason the recipe could not give one.
    pub fn general_triple(&self) -> Result<(Complex64, Complex64, Complex64)> {
        self.general_nodes.ok_or_else(|| {
            Error::RecipeUndefined(
                self.diagnostics
                    .general_unavailable
                    .clone()
                    .unwrap_or_else(|| "no three-node recipe".into()),
            )
        })
    }
}

/// Damped mass-spring chain: `I z^2 + τ T z + κ T` with
/// `T = tridiag(-1, 3, -1)` of size `m`.
pub fn mass_spring(m: usize, tau: f64, kappa: f64) -> Result<MatrixPolynomial> {
    if m < 2 {
        return Err(Error::Invalid(format!("mass-spring size must be at least 2, got {m}")));
    }
    let t = ComplexMatrix::tridiag(m, real(-1.0), real(3.0), real(-1.0));
    MatrixPolynomial::monic_quadratic(t.scale_real(tau), t.scale_real(kappa))
}

/// Nodes for the mass-spring chain. Newton: the zeros of
/// `a^2 + 3τa + 3κ`, with `a` the one minimizing `|aτ + κ|`. Three-node:
/// `a = -κ/τ` and `b, c` the same two zeros.
pub fn mass_spring_nodes(tau: f64, kappa: f64) -> NodeSelection {
    let roots = quadratic_roots(real(3.0 * tau), real(3.0 * kappa));
    let crit = [(roots[0] * tau + kappa).norm(), (roots[1] * tau + kappa).norm()];
    let i = pick_root(&roots, &crit);
    let (a, b) = (roots[i], roots[1 - i]);
    let (general_nodes, general_unavailable) = if tau == 0.0 {
        (None, Some("tau = 0 leaves a = -kappa/tau undefined".to_string()))
    } else {
        (Some((real(-kappa / tau), a, b)), None)
    };
    NodeSelection {
        newton_nodes: (a, b),
        general_nodes,
        diagnostics: NodeDiagnostics {
            chosen_criterion: crit[i],
            rejected_criterion: crit[1 - i],
            general_unavailable,
        },
    }
}

/// Centre of the smallest axis-aligned box containing `values`: the
/// real and imaginary parts are minimaxed separately.
pub fn midpoint_minimax(values: &[Complex64]) -> Result<Complex64> {
    if values.is_empty() {
        return Err(Error::Invalid("midpoint of an empty list".into()));
    }
    let fold = |f: fn(&Complex64) -> f64| {
        values
            .iter()
            .map(f)
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)))
    };
    let (re_lo, re_hi) = fold(|z| z.re);
    let (im_lo, im_hi) = fold(|z| z.im);
    Ok(Complex64::new(0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi)))
}

/// Newton nodes for a monic quadratic `I z^2 + B1 z + B0` with non-constant
/// diagonals: `a + b = -μ_1` and `a` the root of `a^2 + μ_1 a + μ_0` that
/// minimizes `‖a B1 + B0 + a^2 I‖`, with `μ_j` the diagonal midpoints.
pub fn general_nodes(b1: &ComplexMatrix, b0: &ComplexMatrix, norm: Norm) -> Result<NodeSelection> {
    if !b1.is_square() || !b0.is_square() || b1.rows() != b0.rows() || b1.is_empty() {
        return Err(Error::Dimension(format!(
            "node selection needs square coefficients of equal size, got {}x{} and {}x{}",
            b1.rows(),
            b1.cols(),
            b0.rows(),
            b0.cols()
        )));
    }
    let mu1 = midpoint_minimax(&b1.diag())?;
    let mu0 = midpoint_minimax(&b0.diag())?;
    let roots = quadratic_roots(mu1, mu0);
    let criterion = |a: Complex64| -> Result<f64> { (&b1.scale(a) + b0).shift_diagonal(a * a).norm(norm) };
    let crit = [criterion(roots[0])?, criterion(roots[1])?];
    let i = pick_root(&roots, &crit);
    let a = roots[i];
    Ok(NodeSelection {
        newton_nodes: (a, -mu1 - a),
        general_nodes: None,
        diagnostics: NodeDiagnostics {
            chosen_criterion: crit[i],
            rejected_criterion: crit[1 - i],
            general_unavailable: Some("recipe only defines Newton nodes".into()),
        },
    })
}

/// Finite-element acoustic problem on the unit square, in raw and
/// monicized form.
#[derive(Clone, Debug, PartialEq)]
pub struct AcousticProblem {
    /// `A_2 z^2 + A_1 z + A_0`.
    pub raw: MatrixPolynomial,
    /// `B_1 = A_2⁻¹ A_1`.
    pub b1: ComplexMatrix,
    /// `B_0 = A_2⁻¹ A_0`.
    pub b0: ComplexMatrix,
}

impl AcousticProblem {
    /// `I z^2 + B_1 z + B_0`.
    pub fn monic(&self) -> MatrixPolynomial {
        MatrixPolynomial::monic_quadratic(self.b1.clone(), self.b0.clone()).expect("B_1, B_0 share a size")
    }
}

/// Acoustic wave problem with `ℓ = 1/h` and impedance `ζ`; the coefficient
/// size is `ℓ(ℓ - 1)`.
pub fn acoustic(ell: usize, zeta: Complex64) -> Result<AcousticProblem> {
    if ell < 2 {
        return Err(Error::Invalid(format!("acoustic problem needs ell >= 2, got {ell}")));
    }
    if zeta == ZERO || !zeta.re.is_finite() || !zeta.im.is_finite() {
        return Err(Error::Invalid("impedance zeta must be nonzero and finite".into()));
    }
    let l = ell as f64;
    let mut s = ComplexMatrix::tridiag(ell, real(-1.0), real(4.0), real(-1.0));
    s[(ell - 1, ell - 1)] = real(2.0);
    let t = ComplexMatrix::tridiag(ell - 1, real(-1.0), ZERO, real(-1.0));
    let mut e = ComplexMatrix::zeros(ell, ell);
    e[(ell - 1, ell - 1)] = real(1.0);
    let id_l = ComplexMatrix::identity(ell);
    let id_l1 = ComplexMatrix::identity(ell - 1);

    let a0 = &id_l1.kron(&s) + &t.kron(&(&e.scale_real(0.5) - &id_l));
    let a1 = id_l1.kron(&e).scale(real(2.0 * PI / l) / zeta);
    let a2 = id_l1
        .kron(&(&id_l - &e.scale_real(0.5)))
        .scale_real(-4.0 * PI * PI / (l * l));

    let scale_rows = |m: &ComplexMatrix| ComplexMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)] / a2[(i, i)]);
    let b1 = scale_rows(&a1);
    let b0 = scale_rows(&a0);
    Ok(AcousticProblem {
        raw: MatrixPolynomial::power(vec![a0, a1, a2])?,
        b1,
        b0,
    })
}

/// Composite Simpson estimate of `∫_a^b f` on `panels` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    assert!(
        panels >= 2 && panels.is_multiple_of(2),
        "Simpson needs an even panel count"
    );
    let h = (b - a) / panels as f64;
    let mut odd = 0.0;
    let mut even = 0.0;
    for k in 1..panels {
        let v = f(a + k as f64 * h);
        if k % 2 == 1 {
            odd += v;
        } else {
            even += v;
        }
    }
    h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even)
}

/// Simpson's rule with panel doubling until two successive estimates differ
/// by less than `tol`. Returns the estimate and the final panel count.
pub fn adaptive_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, min_panels: usize, tol: f64) -> (f64, usize) {
    let mut n = min_panels.max(2).next_power_of_two();
    let mut h = (b - a) / n as f64;
    let mut trap = h * (0.5 * (f(a) + f(b)) + (1..n).map(|k| f(a + k as f64 * h)).sum::<f64>());
    let mut prev: Option<f64> = None;
    loop {
        let half = 0.5 * h;
        let mids: f64 = (0..n).map(|k| f(a + (2 * k + 1) as f64 * half)).sum();
        let refined = 0.5 * trap + half * mids;
        let s = (4.0 * refined - trap) / 3.0;
        n *= 2;
        h = half;
        trap = refined;
        if let Some(p) = prev {
            if (s - p).abs() < tol || n >= MAX_PANELS {
                return (s, n);
            }
        }
        prev = Some(s);
    }
}

fn string_weight(x: f64, delta: f64) -> f64 {
    let y = x * (PI - x);
    y * y - delta
}

/// `∫_0^π (x²(π-x)² - δ) cos(p x) dx` by adaptive Simpson, with the
/// panel count at which it converged.
pub fn string_cosine_moment(p: usize, delta: f64) -> (f64, usize) {
    let pf = p as f64;
    let min_panels = (16 * (p + 1)).max(64);
    adaptive_simpson(
        |x| string_weight(x, delta) * (pf * x).cos(),
        0.0,
        PI,
        min_panels,
        QUADRATURE_TOL,
    )
}

/// Galerkin model of a damped string: `I z^2 + A_1 z + A_0` with
/// `A_0 = π diag(j^2)` and
/// `(A_1)_kl = 2ε ∫_0^π (x²(π-x)² - δ) sin(kx) sin(lx) dx`.
///
/// Uses `2 sin(kx) sin(lx) = cos((k-l)x) - cos((k+l)x)`, so only the
/// moments for `p = 0..2n` are integrated.
pub fn string_galerkin(n_basis: usize, eps: f64, delta: f64) -> Result<MatrixPolynomial> {
    if n_basis == 0 {
        return Err(Error::Invalid(
            "string problem needs at least one basis function".into(),
        ));
    }
    if !(eps > 0.0 && delta > 0.0 && eps.is_finite() && delta.is_finite()) {
        return Err(Error::Invalid("eps and delta must be positive".into()));
    }
    let moments: Vec<f64> = (0..=2 * n_basis).map(|p| string_cosine_moment(p, delta).0).collect();
    let a1 = ComplexMatrix::from_fn(n_basis, n_basis, |i, j| {
        let (k, l) = (i + 1, j + 1);
        real(eps * (moments[k.abs_diff(l)] - moments[k + l]))
    });
    let a0 = ComplexMatrix::diagonal(&(1..=n_basis).map(|j| real(PI * (j * j) as f64)).collect::<Vec<_>>());
    MatrixPolynomial::monic_quadratic(a1, a0)
}

/// JSON problem descriptor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ProblemDescriptor {
    MassSpring { m: usize, tau: f64, kappa: f64 },
    Acoustic { ell: usize, zeta: Pair },
    String { n_basis: usize, eps: f64, delta: f64 },
}

/// A generated benchmark with the polynomial used for localization and the
/// recipe-derived nodes.
#[derive(Clone, Debug)]
pub struct Benchmark {
    /// Monic polynomial on which regions are computed.
    pub polynomial: MatrixPolynomial,
    pub nodes: NodeSelection,
}

impl ProblemDescriptor {
    pub fn build(&self, norm: Norm) -> Result<Benchmark> {
        match *self {
            Self::MassSpring { m, tau, kappa } => Ok(Benchmark {
                polynomial: mass_spring(m, tau, kappa)?,
                nodes: mass_spring_nodes(tau, kappa),
            }),
            Self::Acoustic { ell, zeta } => {
                let problem = acoustic(ell, complex(zeta))?;
                let nodes = general_nodes(&problem.b1, &problem.b0, norm)?;
                Ok(Benchmark {
                    polynomial: problem.monic(),
                    nodes,
                })
            }
            Self::String { n_basis, eps, delta } => {
                let polynomial = string_galerkin(n_basis, eps, delta)?;
                let nodes = general_nodes(polynomial.coefficient(1), polynomial.coefficient(0), norm)?;
                Ok(Benchmark { polynomial, nodes })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::one_norm;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn quadratic_roots_cases() {
        let r = quadratic_roots(real(-3.0), real(2.0));
        assert_eq!(r, [real(2.0), real(1.0)]);
        assert!(r.iter().all(|z| z.im.to_bits() == 0));
        let r = quadratic_roots(real(1e8), real(1.0));
        assert!((r[1] - real(-1e-8)).norm() <= 1e-22);
        let r = quadratic_roots(real(0.0), real(4.0));
        assert_eq!(r, [c(0.0, 2.0), c(0.0, -2.0)]);
        let (p, q) = (c(1.0, -2.0), c(0.5, 3.0));
        for z in quadratic_roots(p, q) {
            assert!((z * z + p * z + q).norm() < 1e-14);
        }
        assert_eq!(quadratic_roots(ZERO, ZERO), [ZERO, ZERO]);
    }

    #[test]
    fn mass_spring_coefficients() {
        let p = mass_spring(3, 1.0, 2.0).unwrap();
        assert_eq!(one_norm(p.coefficient(1)).unwrap(), 5.0);
        assert_eq!(p.coefficient(2), &ComplexMatrix::identity(3));
        let p = mass_spring(2, 2.0, 1.0).unwrap();
        assert_eq!(one_norm(p.coefficient(1)).unwrap(), 8.0);
        let p = mass_spring(50, 0.0, 5.0).unwrap();
        assert!(p.coefficient(1).is_zero());
        let p = mass_spring(50, 3.0, 5.0).unwrap();
        assert_eq!(p.coefficient(1), &p.coefficient(1).transpose());
        assert_eq!(p.coefficient(0), &p.coefficient(0).transpose());
        assert!(mass_spring(1, 1.0, 1.0).is_err());
    }

    #[test]
    fn mass_spring_nodes_real_roots() {
        let sel = mass_spring_nodes(10.0, 5.0);
        let (a, b) = sel.newton_nodes;
        let s = 210f64.sqrt();
        assert!((a - real(-15.0 + s)).norm() < 1e-12);
        assert!((b - real(-15.0 - s)).norm() < 1e-12);
        assert!((a.re - -0.5086).abs() < 1e-4);
        assert!((sel.diagnostics.chosen_criterion - 0.0862325).abs() < 1e-6);
        assert!(sel.diagnostics.rejected_criterion > 289.0);
    }

    #[test]
    fn mass_spring_nodes_conjugate_tie() {
        let sel = mass_spring_nodes(1.0, 8.0);
        let h = 87f64.sqrt() / 2.0;
        assert_eq!(sel.newton_nodes, (c(-1.5, h), c(-1.5, -h)));
        assert_eq!(sel.general_nodes, Some((c(-8.0, 0.0), c(-1.5, h), c(-1.5, -h))));
    }

    #[test]
    fn mass_spring_nodes_without_damping() {
        let sel = mass_spring_nodes(0.0, 4.0);
        assert!(sel.general_nodes.is_none());
        assert!(matches!(sel.general_triple(), Err(Error::RecipeUndefined(_))));
        assert!(sel.diagnostics.general_unavailable.is_some());
        let (a, b) = sel.newton_nodes;
        assert!((a * a + 12.0).norm() < 1e-12 && (b * b + 12.0).norm() < 1e-12);
    }

    #[test]
    fn node_recipes_satisfy_their_relations() {
        for (tau, kappa) in [
            (3.0, 5.0),
            (10.0, 5.0),
            (1.0, 8.0),
            (5.0, 20.0),
            (5.0, 30.0),
            (5.0, 80.0),
            (2.0, 3.0),
        ] {
            let sel = mass_spring_nodes(tau, kappa);
            let (a, b) = sel.newton_nodes;
            for r in [a, b] {
                let terms = r.norm_sqr() + 3.0 * tau * r.norm() + 3.0 * kappa;
                assert!((r * r + r * (3.0 * tau) + 3.0 * kappa).norm() <= 1e-12 * terms);
            }
            let (_, gb, gc) = sel.general_nodes.unwrap();
            assert!((gb + gc + 3.0 * tau).norm() <= 1e-12 * (3.0 * tau));
            assert!((gb * gc - 3.0 * kappa).norm() <= 1e-12 * (3.0 * kappa));
        }
    }

    #[test]
    fn midpoints() {
        assert_eq!(midpoint_minimax(&[real(1.0), real(2.0), real(3.0)]).unwrap(), real(2.0));
        assert_eq!(midpoint_minimax(&[real(0.0), c(1.0, 1.0)]).unwrap(), c(0.5, 0.5));
        assert_eq!(midpoint_minimax(&[c(-2.0, 7.0)]).unwrap(), c(-2.0, 7.0));
        assert!(midpoint_minimax(&[]).is_err());
    }

    #[test]
    fn general_nodes_examples() {
        let b1 = ComplexMatrix::diagonal(&[real(2.0), real(4.0)]);
        let b0 = ComplexMatrix::zeros(2, 2);
        let sel = general_nodes(&b1, &b0, Norm::One).unwrap();
        assert_eq!(sel.newton_nodes, (real(0.0), real(-3.0)));
        assert_eq!(sel.diagnostics.chosen_criterion, 0.0);
        assert_eq!(sel.diagnostics.rejected_criterion, 3.0);

        // B1 = -5 I, B0 = 6 I: a^2 - 5a + 6 = 0 at a = 2, 3, both annihilate.
        let id = ComplexMatrix::identity(3);
        let sel = general_nodes(&id.scale_real(-5.0), &id.scale_real(6.0), Norm::One).unwrap();
        assert!(sel.diagnostics.chosen_criterion < 1e-14);
        assert!(sel.diagnostics.rejected_criterion < 1e-14);
        assert!((sel.newton_nodes.0 - real(2.0)).norm() < 1e-14);
        assert!((sel.newton_nodes.1 - real(3.0)).norm() < 1e-14);

        assert!(general_nodes(&id, &ComplexMatrix::identity(2), Norm::One).is_err());
    }

    #[test]
    fn general_nodes_choose_the_smaller_criterion() {
        let b1 = ComplexMatrix::from_rows(&[[c(1.0, 2.0), c(0.3, 0.0)], [c(-0.2, 0.1), c(-0.5, 1.0)]]).unwrap();
        let b0 = ComplexMatrix::from_rows(&[[c(3.0, 0.0), c(0.0, 0.4)], [c(1.0, 0.0), c(7.0, -2.0)]]).unwrap();
        let sel = general_nodes(&b1, &b0, Norm::One).unwrap();
        assert!(sel.diagnostics.chosen_criterion <= sel.diagnostics.rejected_criterion);
        let mu1 = midpoint_minimax(&b1.diag()).unwrap();
        assert!((sel.newton_nodes.0 + sel.newton_nodes.1 + mu1).norm() < 1e-12);
    }

    #[test]
    fn acoustic_smallest_case() {
        let zeta = c(0.3, -0.7);
        let p = acoustic(2, zeta).unwrap();
        let a = &p.raw;
        assert_eq!(a.size(), 2);
        let a0 = ComplexMatrix::from_real_rows(&[[4.0, -1.0], [-1.0, 2.0]]).unwrap();
        assert_eq!(a.coefficient(0), &a0);
        let a1 = ComplexMatrix::diagonal(&[real(0.0), real(PI) / zeta]);
        assert!((a.coefficient(1) - &a1).max_abs() < 1e-15);
        let a2 = ComplexMatrix::diagonal(&[real(-PI * PI), real(-PI * PI / 2.0)]);
        assert!((a.coefficient(2) - &a2).max_abs() < 1e-14);
    }

    #[test]
    fn acoustic_sizes_and_monicization() {
        for ell in [3, 5, 20] {
            let p = acoustic(ell, c(2.0, 2.0)).unwrap();
            assert_eq!(p.raw.size(), ell * (ell - 1));
            let a2 = p.raw.coefficient(2);
            let off_diag = (0..a2.rows())
                .flat_map(|i| (0..a2.cols()).map(move |j| (i, j)))
                .filter(|(i, j)| i != j)
                .all(|(i, j)| a2[(i, j)] == ZERO);
            assert!(off_diag);
            let residual = (&a2.matmul(&p.b0).unwrap() - p.raw.coefficient(0))
                .norm(Norm::One)
                .unwrap();
            assert!(residual <= 1e-12 * p.raw.coefficient(0).norm(Norm::One).unwrap());
        }
        assert_eq!(acoustic(20, c(0.1, 0.1)).unwrap().raw.size(), 380);
        assert!(acoustic(4, ZERO).is_err());
        assert!(acoustic(1, c(1.0, 0.0)).is_err());
    }

    #[test]
    fn string_damping_structure() {
        let eps = 0.1;
        let p1 = string_galerkin(6, eps, 2.7).unwrap();
        let p2 = string_galerkin(6, eps, 1.2).unwrap();
        let a1 = p1.coefficient(1);
        assert!((a1 - &a1.transpose()).max_abs() <= 1e-12);
        // The δ term only moves the diagonal, by -2εδ·π/2.
        for i in 0..6 {
            for j in 0..6 {
                let d = (a1[(i, j)] - p2.coefficient(1)[(i, j)]).re;
                let expected = if i == j {
                    -2.0 * eps * (2.7 - 1.2) * PI / 2.0
                } else {
                    0.0
                };
                assert!((d - expected).abs() < 1e-11, "({i},{j}) {d}");
            }
        }
        assert_eq!(p1.coefficient(0)[(2, 2)], real(9.0 * PI));
    }

    #[test]
    fn string_moments_stable_under_doubling() {
        for p in [0, 1, 7, 40, 100] {
            let (v, panels) = string_cosine_moment(p, 2.7);
            let pf = p as f64;
            let doubled = simpson(|x| string_weight(x, 2.7) * (pf * x).cos(), 0.0, PI, 2 * panels);
            assert!((v - doubled).abs() <= 1e-12, "p={p}: {v} vs {doubled}");
        }
    }

    #[test]
    fn adaptive_simpson_polynomial_exact() {
        let (v, _) = adaptive_simpson(|x| x * x * x, 0.0, 2.0, 2, 1e-14);
        assert!((v - 4.0).abs() < 1e-14);
    }

    #[test]
    fn descriptor_json() {
        let d: ProblemDescriptor =
            serde_json::from_str(r#"{"family":"mass_spring","m":50,"tau":1,"kappa":8}"#).unwrap();
        assert_eq!(
            d,
            ProblemDescriptor::MassSpring {
                m: 50,
                tau: 1.0,
                kappa: 8.0
            }
        );
        let a = ProblemDescriptor::Acoustic {
            ell: 5,
            zeta: [0.1, 0.1],
        };
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"{"family":"acoustic","ell":5,"zeta":[0.1,0.1]}"#);
    }
}
