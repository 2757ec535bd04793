//! Generalized scalar polynomial bases `q_0 = 1, q_1, ..., q_n` with
//! `deg q_j = j`, every `q_j` monic.
//!
//! A basis is usable for inclusion regions when there are nonnegative weights
//! `α_i^(j)` with `Σ_i α_i^(j) ≤ γ` such that, away from the zeros `r_ij`
//! of `q_j`,
//!
//! ```text
//! |q_{j-1}(z) / q_j(z)| ≤ Σ_i α_i^(j) / |z - r_ij|
//! ```
//!
//! Each variant below carries (or derives) its zeros, weights and `γ`.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::{complex, pair, Pair};
use crate::linalg::ComplexMatrix;
use crate::poly::{BasisCoefficients, MatrixPolynomial};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Relative tolerance for treating two basis zeros as the same point.
pub const MERGE_RTOL: f64 = 1e-10;

/// Sample points closer than this to any basis zero are skipped.
pub const SAMPLE_EXCLUSION: f64 = 1e-6;

/// Slack below `-CONDITION_TOL` counts as a violated basis condition.
pub const CONDITION_TOL: f64 = 1e-10;

/// Ring radii, as multiples of `1 + |r|`, used by the condition sampler.
pub const SAMPLE_RING_FACTORS: [f64; 3] = [0.1, 1.0, 10.0];

/// Angles per ring used by the condition sampler.
pub const SAMPLE_ANGLES: usize = 36;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "BasisDocument", try_from = "BasisDocument")]
pub enum GeneralizedBasis {
    /// `q_j = z^j`.
    Power { degree: usize },
    /// `q_j = (z - a_1)...(z - a_j)`.
    Newton { nodes: Vec<Complex64> },
    /// `{1, z - a, (z - b)(z - c)}` with `b ≠ c`.
    QuadraticGeneral { a: Complex64, b: Complex64, c: Complex64 },
    /// User-supplied zeros per degree with matching weights and `γ`.
    Generic {
        zeros: Vec<Vec<Complex64>>,
        alphas: Vec<Vec<f64>>,
        gamma: f64,
    },
}

impl GeneralizedBasis {
    pub fn power(degree: usize) -> Self {
        Self::Power { degree }
    }

    pub fn newton(nodes: Vec<Complex64>) -> Self {
        Self::Newton { nodes }
    }

    /// Three-node quadratic basis. Coincident `b` and `c` collapse it to the
    /// Newton basis with all three nodes equal to `b`.
    pub fn quadratic_general(a: Complex64, b: Complex64, c: Complex64) -> Self {
        let tol = MERGE_RTOL * (1.0 + a.norm().max(b.norm()).max(c.norm()));
        if (b - c).norm() <= tol {
            Self::Newton { nodes: vec![b, b] }
        } else {
            Self::QuadraticGeneral { a, b, c }
        }
    }

    pub fn generic(zeros: Vec<Vec<Complex64>>, alphas: Vec<Vec<f64>>, gamma: f64) -> Result<Self> {
        let basis = Self::Generic { zeros, alphas, gamma };
        basis.validate()?;
        Ok(basis)
    }

    /// Checks the structural invariants of the variant.
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Power { degree } if *degree == 0 => Err(Error::InvalidBasis("power basis of degree 0".into())),
            Self::Newton { nodes } if nodes.is_empty() => Err(Error::InvalidBasis("Newton basis without nodes".into())),
            Self::QuadraticGeneral { .. } => self.gamma().map(|_| ()),
            Self::Generic { zeros, alphas, gamma } => {
                if zeros.is_empty() {
                    return Err(Error::InvalidBasis("generic basis without zeros".into()));
                }
                if !(gamma.is_finite() && *gamma > 0.0) {
                    return Err(Error::InvalidBasis(format!("gamma must be positive, got {gamma}")));
                }
                if alphas.len() != zeros.len() {
                    return Err(Error::InvalidBasis(format!(
                        "{} weight lists for {} degrees",
                        alphas.len(),
                        zeros.len()
                    )));
                }
                for (j, (z, a)) in zeros.iter().zip(alphas).enumerate() {
                    let degree = j + 1;
                    if z.len() != degree || a.len() != degree {
                        return Err(Error::InvalidBasis(format!(
                            "q_{degree} needs {degree} zeros and weights, got {} and {}",
                            z.len(),
                            a.len()
                        )));
                    }
                    if a.iter().any(|&x| !(x >= 0.0 && x.is_finite())) {
                        return Err(Error::InvalidBasis(format!(
                            "negative or non-finite weight for q_{degree}"
                        )));
                    }
                    let sum: f64 = a.iter().sum();
                    if sum > gamma * (1.0 + 1e-12) {
                        return Err(Error::InvalidBasis(format!(
                            "weights of q_{degree} sum to {sum}, exceeding gamma {gamma}"
                        )));
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Highest degree `n` the basis defines.
    pub fn degree(&self) -> usize {
        match self {
            Self::Power { degree } => *degree,
            Self::Newton { nodes } => nodes.len(),
            Self::QuadraticGeneral { .. } => 2,
            Self::Generic { zeros, .. } => zeros.len(),
        }
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            Self::Power { .. } => "power",
            Self::Newton { .. } => "newton",
            Self::QuadraticGeneral { .. } => "quadratic_general",
            Self::Generic { .. } => "generic",
        }
    }

    /// Zeros `r_1j, ..., r_jj` of `q_j`, for `1 ≤ j ≤ degree`.
    pub fn zeros_of(&self, j: usize) -> Vec<Complex64> {
        assert!(j <= self.degree(), "q_{j} is beyond the basis degree {}", self.degree());
        match self {
            Self::Power { .. } => vec![ZERO; j],
            Self::Newton { nodes } => nodes[..j].to_vec(),
            Self::QuadraticGeneral { a, b, c } => match j {
                0 => vec![],
                1 => vec![*a],
                _ => vec![*b, *c],
            },
            Self::Generic { zeros, .. } => {
                if j == 0 {
                    vec![]
                } else {
                    zeros[j - 1].clone()
                }
            }
        }
    }

    /// Weights `α_i^(j)` aligned with [`zeros_of`](Self::zeros_of).
    pub fn alphas(&self, j: usize) -> Result<Vec<f64>> {
        match self {
            Self::Power { .. } | Self::Newton { .. } => {
                let mut a = vec![0.0; j];
                if j > 0 {
                    a[j - 1] = 1.0;
                }
                Ok(a)
            }
            Self::QuadraticGeneral { a, b, c } => {
                let d = (c - b).norm();
                if d == 0.0 {
                    return Err(Error::InvalidBasis("quadratic basis with b = c".into()));
                }
                Ok(match j {
                    0 => vec![],
                    1 => vec![1.0],
                    _ => vec![(a - b).norm() / d, (a - c).norm() / d],
                })
            }
            Self::Generic { alphas, .. } => Ok(if j == 0 { vec![] } else { alphas[j - 1].clone() }),
        }
    }

    /// The constant `γ` bounding every weight sum.
    pub fn gamma(&self) -> Result<f64> {
        match self {
            Self::Power { .. } | Self::Newton { .. } => Ok(1.0),
            Self::QuadraticGeneral { a, b, c } => {
                let d = (c - b).norm();
                let tol = MERGE_RTOL * (1.0 + a.norm().max(b.norm()).max(c.norm()));
                if d <= tol {
                    return Err(Error::InvalidBasis(
                        "quadratic basis with b = c must be normalized to a Newton basis".into(),
                    ));
                }
                Ok((a - b).norm() / d + (a - c).norm() / d)
            }
            Self::Generic { gamma, .. } => Ok(*gamma),
        }
    }

    /// `q_j(z)`.
    pub fn eval(&self, j: usize, z: Complex64) -> Complex64 {
        self.zeros_of(j).iter().map(|r| z - r).product()
    }

    /// `[q_0(z), ..., q_n(z)]`.
    pub fn eval_all(&self, z: Complex64, n: usize) -> Vec<Complex64> {
        (0..=n).map(|j| self.eval(j, z)).collect()
    }

    /// Ascending power coefficients of the monic `q_j` (length `j + 1`).
    pub fn power_coefficients(&self, j: usize) -> Vec<Complex64> {
        let mut coeffs = vec![ONE];
        for r in self.zeros_of(j) {
            // multiply by (z - r)
            let mut next = vec![ZERO; coeffs.len() + 1];
            for (k, &c) in coeffs.iter().enumerate() {
                next[k + 1] += c;
                next[k] -= c * r;
            }
            coeffs = next;
        }
        coeffs
    }

    fn merge_tolerance(&self, n: usize) -> f64 {
        let max_mod = (1..=n)
            .flat_map(|j| self.zeros_of(j))
            .map(|r| r.norm())
            .fold(0.0, f64::max);
        MERGE_RTOL * (1.0 + max_mod)
    }
}

/// A distinct zero of `q_1..q_n` with the degrees at which it occurs.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisZero {
    pub center: Complex64,
    pub degrees: BTreeSet<usize>,
    /// Multiplicity as a zero of `q_n`.
    pub qn_multiplicity: usize,
}

/// Deduplicated zeros of `q_1, ..., q_n` in order of first appearance.
pub fn basis_zeros(basis: &GeneralizedBasis, n: usize) -> Result<Vec<BasisZero>> {
    if n == 0 || n > basis.degree() {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: basis.degree(),
        });
    }
    basis.validate()?;
    let tol = basis.merge_tolerance(n);
    let mut out: Vec<BasisZero> = Vec::new();
    for j in 1..=n {
        for r in basis.zeros_of(j) {
            let idx = match out.iter().position(|z| (z.center - r).norm() <= tol) {
                Some(i) => i,
                None => {
                    out.push(BasisZero {
                        center: r,
                        degrees: BTreeSet::new(),
                        qn_multiplicity: 0,
                    });
                    out.len() - 1
                }
            };
            out[idx].degrees.insert(j);
            if j == n {
                out[idx].qn_multiplicity += 1;
            }
        }
    }
    Ok(out)
}

/// `γ` of the basis; see [`GeneralizedBasis::gamma`].
pub fn basis_gamma(basis: &GeneralizedBasis) -> Result<f64> {
    basis.gamma()
}

fn check_square_pair(a1: &ComplexMatrix, a0: &ComplexMatrix) -> Result<usize> {
    let m = a1.rows();
    if !a1.is_square() || !a0.is_square() || a0.rows() != m || m == 0 {
        return Err(Error::Dimension(format!(
            "quadratic coefficients must be square of equal size, got {}x{} and {}x{}",
            a1.rows(),
            a1.cols(),
            a0.rows(),
            a0.cols()
        )));
    }
    Ok(m)
}

/// Coefficients of the monic quadratic `I z^2 + A1 z + A0` in a degree-2
/// basis, using the closed-form change of basis.
pub fn convert_quadratic(
    a1: &ComplexMatrix,
    a0: &ComplexMatrix,
    basis: &GeneralizedBasis,
) -> Result<BasisCoefficients> {
    let m = check_square_pair(a1, a0)?;
    if basis.degree() != 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            found: basis.degree(),
        });
    }
    let (c1, c0) = match basis {
        GeneralizedBasis::Power { .. } => (a1.clone(), a0.clone()),
        GeneralizedBasis::Newton { nodes } => {
            let (a, b) = (nodes[0], nodes[1]);
            let c1 = a1.shift_diagonal(a + b);
            let c0 = (&a1.scale(a) + a0).shift_diagonal(a * a);
            (c1, c0)
        }
        GeneralizedBasis::QuadraticGeneral { a, b, c } => {
            let c1 = a1.shift_diagonal(b + c);
            let c0 = (&a1.scale(*a) + a0).shift_diagonal(a * (b + c) - b * c);
            (c1, c0)
        }
        GeneralizedBasis::Generic { .. } => {
            let p = MatrixPolynomial::monic_quadratic(a1.clone(), a0.clone())?;
            return convert_to_basis(&p, basis);
        }
    };
    MatrixPolynomial::new(vec![c0, c1, ComplexMatrix::identity(m)], basis.clone())
}

/// Re-expresses a polynomial in `basis` by back substitution on the unit
/// upper-triangular change-of-basis system.
pub fn convert_to_basis(p: &MatrixPolynomial, basis: &GeneralizedBasis) -> Result<BasisCoefficients> {
    let p = p.to_power_basis();
    let n = p.degree();
    if basis.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: basis.degree(),
        });
    }
    basis.validate()?;
    let q: Vec<Vec<Complex64>> = (0..=n).map(|j| basis.power_coefficients(j)).collect();
    let mut c: Vec<ComplexMatrix> = p.coefficients().to_vec();
    // A_k = Σ_{j≥k} C_j q_j[k], so C_k = A_k - Σ_{j>k} C_j q_j[k].
    for k in (0..n).rev() {
        for (j, qj) in q.iter().enumerate().skip(k + 1) {
            let w = qj[k];
            if w == ZERO {
                continue;
            }
            let (lower, upper) = c.split_at_mut(j);
            for (dst, &x) in lower[k].as_mut_slice().iter_mut().zip(upper[0].as_slice()) {
                *dst -= x * w;
            }
        }
    }
    MatrixPolynomial::new(c, basis.clone())
}

/// Outcome of sampling the basis hypothesis.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionReport {
    pub holds: bool,
    /// Minimum of `Σ α_i/|z - r_ij| - |q_{j-1}(z)/q_j(z)|` over all samples.
    pub worst_slack: f64,
    /// Largest `|slack|` over all samples; zero for an exactly tight basis.
    pub max_abs_slack: f64,
    /// Sample point attaining the worst slack, when the condition fails.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "ser_opt_pair")]
    pub witness: Option<Complex64>,
    pub points_checked: usize,
}

fn ser_opt_pair<S: serde::Serializer>(w: &Option<Complex64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    w.map(pair).serialize(s)
}

/// Numerically samples the basis hypothesis for `j = 1..n`.
///
/// Points lie on rings of radius `{0.1, 1, 10}·(1 + |r|)` around every
/// distinct zero `r`, 36 angles per ring. Round 0 uses the nominal rings;
/// each further round rotates the angles and jitters the radii by a seeded
/// random amount.
pub fn verify_basis_condition(
    basis: &GeneralizedBasis,
    n: usize,
    samples: usize,
    seed: u64,
) -> Result<ConditionReport> {
    let zeros = basis_zeros(basis, n)?;
    let all_zeros: Vec<Complex64> = zeros.iter().map(|z| z.center).collect();
    let per_degree: Vec<(Vec<Complex64>, Vec<f64>)> = (1..=n)
        .map(|j| Ok((basis.zeros_of(j), basis.alphas(j)?)))
        .collect::<Result<_>>()?;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::INFINITY;
    let mut witness = ZERO;
    let mut max_abs = 0.0f64;
    let mut checked = 0;
    for round in 0..samples.max(1) {
        for center in &all_zeros {
            for factor in SAMPLE_RING_FACTORS {
                let (offset, jitter) = if round == 0 {
                    (0.0, 1.0)
                } else {
                    (
                        rng.gen_range(0.0..2.0 * PI / SAMPLE_ANGLES as f64),
                        rng.gen_range(0.9..1.1),
                    )
                };
                let radius = factor * jitter * (1.0 + center.norm());
                for k in 0..SAMPLE_ANGLES {
                    let theta = offset + 2.0 * PI * k as f64 / SAMPLE_ANGLES as f64;
                    let z = center + Complex64::from_polar(radius, theta);
                    if all_zeros.iter().any(|r| (z - r).norm() < SAMPLE_EXCLUSION) {
                        continue;
                    }
                    for (j, (rs, alphas)) in per_degree.iter().enumerate() {
                        let lhs = (basis.eval(j, z) / basis.eval(j + 1, z)).norm();
                        let rhs: f64 = rs.iter().zip(alphas).map(|(r, a)| a / (z - r).norm()).sum();
                        let slack = rhs - lhs;
                        checked += 1;
                        max_abs = max_abs.max(slack.abs());
                        if slack < worst {
                            worst = slack;
                            witness = z;
                        }
                    }
                }
            }
        }
    }
    let holds = worst >= -CONDITION_TOL;
    Ok(ConditionReport {
        holds,
        worst_slack: worst,
        max_abs_slack: max_abs,
        witness: if holds { None } else { Some(witness) },
        points_checked: checked,
    })
}

/// JSON form of a basis descriptor; unused fields are omitted.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BasisDocument {
    pub variant: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<Vec<Pair>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Pair>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeros: Option<Vec<Vec<Pair>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alphas: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
}

impl From<GeneralizedBasis> for BasisDocument {
    fn from(b: GeneralizedBasis) -> Self {
        let mut doc = BasisDocument {
            variant: b.variant_name().to_string(),
            ..Default::default()
        };
        match b {
            GeneralizedBasis::Power { degree } => doc.degree = Some(degree),
            GeneralizedBasis::Newton { nodes } => doc.nodes = Some(nodes.into_iter().map(pair).collect()),
            GeneralizedBasis::QuadraticGeneral { a, b, c } => {
                doc.a = Some(pair(a));
                doc.b = Some(pair(b));
                doc.c = Some(pair(c));
            }
            GeneralizedBasis::Generic { zeros, alphas, gamma } => {
                doc.zeros = Some(zeros.into_iter().map(|z| z.into_iter().map(pair).collect()).collect());
                doc.alphas = Some(alphas);
                doc.gamma = Some(gamma);
            }
        }
        doc
    }
}

impl TryFrom<BasisDocument> for GeneralizedBasis {
    type Error = Error;

    fn try_from(doc: BasisDocument) -> Result<Self> {
        fn need<T>(v: Option<T>, field: &str, variant: &str) -> Result<T> {
            v.ok_or_else(|| Error::InvalidBasis(format!("{variant} basis requires '{field}'")))
        }
        let v = doc.variant.as_str();
        let basis = match v {
            "power" => GeneralizedBasis::power(need(doc.degree, "degree", v)?),
            "newton" => GeneralizedBasis::newton(need(doc.nodes, "nodes", v)?.into_iter().map(complex).collect()),
            "quadratic_general" => GeneralizedBasis::quadratic_general(
                complex(need(doc.a, "a", v)?),
                complex(need(doc.b, "b", v)?),
                complex(need(doc.c, "c", v)?),
            ),
            "generic" => GeneralizedBasis::Generic {
                zeros: need(doc.zeros, "zeros", v)?
                    .into_iter()
                    .map(|z| z.into_iter().map(complex).collect())
                    .collect(),
                alphas: need(doc.alphas, "alphas", v)?,
                gamma: need(doc.gamma, "gamma", v)?,
            },
            other => return Err(Error::InvalidBasis(format!("unknown variant '{other}'"))),
        };
        basis.validate()?;
        Ok(basis)
    }
}
