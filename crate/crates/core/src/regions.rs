//! Inclusion regions for matrix polynomials in a generalized basis.
//!
//! Every eigenvalue of `Σ C_j q_j(z)` lies in the union of closed disks of
//! radius `γρ` centred at the zeros of `q_1, ..., q_n`, where `ρ` is the
//! Cauchy radius of `Σ C_j z^j`. A connected component of that union that is
//! disjoint from the others holds `m` eigenvalues per zero of `q_n` inside it.

use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bases::basis_zeros;
use crate::cauchy::{cauchy_radius, CauchyResult};
use crate::error::{Error, Result};
use crate::json::{pair, Pair};
use crate::linalg::{inverse_norm, polyeig_oracle, Norm, Spectrum};
use crate::poly::{BasisCoefficients, MatrixPolynomial};

/// Relative slack for declaring two disks linked.
pub const LINK_RTOL: f64 = 1e-9;

/// Relative band around the region boundary inside which eigenvalues are
/// reported as boundary cases.
pub const BOUNDARY_RTOL: f64 = 1e-7;

/// Relative tolerance on the containment margin.
pub const CONTAINMENT_RTOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct Disk {
    pub center: Complex64,
    pub radius: f64,
    /// Degrees `j` with `q_j(center) = 0`.
    pub source_degrees: BTreeSet<usize>,
    /// Multiplicity of `center` as a zero of `q_n`.
    pub qn_multiplicity: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InclusionRegion {
    pub disks: Vec<Disk>,
    pub gamma: f64,
    pub rho: f64,
    pub radius: f64,
    pub cauchy: CauchyResult,
    pub norm: Norm,
    /// Polynomial degree `n`.
    pub degree: usize,
    /// Coefficient size `m`.
    pub size: usize,
    /// Disk indices per connected component.
    pub components: Vec<Vec<usize>>,
    /// Predicted eigenvalue count per component.
    pub predicted_counts: Vec<usize>,
}

impl InclusionRegion {
    pub fn link_tolerance(&self) -> f64 {
        link_tolerance(&self.disks)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.disks.iter().any(|d| (z - d.center).norm() <= d.radius)
    }

    /// Index of the disk whose centre is nearest to `z`, with that distance.
    pub fn nearest_disk(&self, z: Complex64) -> (usize, f64) {
        self.disks
            .iter()
            .enumerate()
            .map(|(i, d)| (i, (z - d.center).norm()))
            .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best })
    }

    /// Component index of every disk.
    pub fn component_of_disk(&self) -> Vec<usize> {
        let mut owner = vec![0; self.disks.len()];
        for (c, members) in self.components.iter().enumerate() {
            for &d in members {
                owner[d] = c;
            }
        }
        owner
    }

    /// Smallest `|c_i - c_k| - 2r` over disks in different components;
    /// infinite for a single component.
    pub fn separation_slack(&self) -> f64 {
        let owner = self.component_of_disk();
        let mut slack = f64::INFINITY;
        for i in 0..self.disks.len() {
            for k in i + 1..self.disks.len() {
                if owner[i] != owner[k] {
                    let d = (self.disks[i].center - self.disks[k].center).norm() - 2.0 * self.radius;
                    slack = slack.min(d);
                }
            }
        }
        slack
    }

    pub fn to_document(&self) -> RegionDocument {
        RegionDocument {
            gamma: self.gamma,
            rho: self.rho,
            radius: self.radius,
            disks: self
                .disks
                .iter()
                .map(|d| DiskDocument {
                    center: pair(d.center),
                    radius: d.radius,
                    qn_mult: d.qn_multiplicity,
                })
                .collect(),
            components: self.components.clone(),
            predicted_counts: self.predicted_counts.clone(),
        }
    }
}

/// Serialized region.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionDocument {
    pub gamma: f64,
    pub rho: f64,
    pub radius: f64,
    pub disks: Vec<DiskDocument>,
    pub components: Vec<Vec<usize>>,
    pub predicted_counts: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiskDocument {
    pub center: Pair,
    pub radius: f64,
    pub qn_mult: usize,
}

/// Builds the inclusion region of a polynomial given in its basis.
pub fn inclusion_region(coeffs: &BasisCoefficients, norm: Norm) -> Result<InclusionRegion> {
    let n = coeffs.degree();
    let m = coeffs.size();
    let basis = coeffs.basis();
    if basis.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: basis.degree(),
        });
    }
    let inv = inverse_norm(coeffs.leading(), norm)?;
    let lower = coeffs.coefficients()[..n]
        .iter()
        .map(|c| c.norm(norm))
        .collect::<Result<Vec<_>>>()?;
    let cauchy = cauchy_radius(inv, &lower)?;
    let gamma = basis.gamma()?;
    let radius = gamma * cauchy.rho;

    let disks: Vec<Disk> = basis_zeros(basis, n)?
        .into_iter()
        .map(|z| Disk {
            center: z.center,
            radius,
            source_degrees: z.degrees,
            qn_multiplicity: z.qn_multiplicity,
        })
        .collect();
    let (components, predicted_counts) = components(&disks, m);
    Ok(InclusionRegion {
        disks,
        gamma,
        rho: cauchy.rho,
        radius,
        cauchy,
        norm,
        degree: n,
        size: m,
        components,
        predicted_counts,
    })
}

fn link_tolerance(disks: &[Disk]) -> f64 {
    let radius = disks.first().map_or(0.0, |d| d.radius);
    let max_center = disks.iter().map(|d| d.center.norm()).fold(0.0, f64::max);
    LINK_RTOL * (1.0 + radius + max_center)
}

struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        match self.rank[a].cmp(&self.rank[b]) {
            std::cmp::Ordering::Less => self.parent[a] = b,
            std::cmp::Ordering::Greater => self.parent[b] = a,
            std::cmp::Ordering::Equal => {
                self.parent[b] = a;
                self.rank[a] = self.rank[a].saturating_add(1);
            }
        }
    }
}

/// Connected components of the disk union (closed disks; tangency links) and
/// the predicted eigenvalue count `m · Σ qn_multiplicity` of each.
///
/// Components are ordered by their smallest disk index.
pub fn components(disks: &[Disk], m: usize) -> (Vec<Vec<usize>>, Vec<usize>) {
    let tol = link_tolerance(disks);
    let mut sets = DisjointSet::new(disks.len());
    for i in 0..disks.len() {
        for k in i + 1..disks.len() {
            let reach = disks[i].radius + disks[k].radius + tol;
            if (disks[i].center - disks[k].center).norm() <= reach {
                sets.union(i, k);
            }
        }
    }
    let mut comps: Vec<Vec<usize>> = Vec::new();
    let mut slot_of_root = vec![usize::MAX; disks.len()];
    for i in 0..disks.len() {
        let root = sets.find(i);
        if slot_of_root[root] == usize::MAX {
            slot_of_root[root] = comps.len();
            comps.push(Vec::new());
        }
        comps[slot_of_root[root]].push(i);
    }
    let counts = comps
        .iter()
        .map(|c| m * c.iter().map(|&i| disks[i].qn_multiplicity).sum::<usize>())
        .collect();
    (comps, counts)
}

/// Radius `r_min = 1/ρ_rev` of the eigenvalue-free disk around the origin,
/// from the Cauchy radius of the reversed polynomial `Σ A_{n-j} z^j`.
pub fn reversal_exclusion(p: &MatrixPolynomial, norm: Norm) -> Result<f64> {
    let rev = p.reversed();
    let n = rev.degree();
    let inv = inverse_norm(rev.leading(), norm).map_err(|e| match e {
        Error::Singular { pivot, cutoff, .. } => Error::Singular {
            context: "A_0 is singular, so zero is an eigenvalue".into(),
            pivot,
            cutoff,
        },
        other => other,
    })?;
    let lower = rev.coefficients()[..n]
        .iter()
        .map(|c| c.norm(norm))
        .collect::<Result<Vec<_>>>()?;
    let rho_rev = cauchy_radius(inv, &lower)?.rho;
    Ok(if rho_rev == 0.0 { f64::INFINITY } else { 1.0 / rho_rev })
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub eigenvalues: Spectrum,
    pub contained: bool,
    /// Largest `dist(λ, nearest centre) - radius`; negative means inside.
    pub worst_margin: f64,
    pub tolerance: f64,
    pub component_counts_observed: Vec<usize>,
    /// `None` when the components are not separated well enough to count.
    pub counts_match: Option<bool>,
    pub separation_slack: f64,
    /// Eigenvalues within the boundary band of the region.
    pub boundary_eigenvalues: usize,
}

/// Runs the eigenvalue oracle on `p` and checks it against `region`.
pub fn verify_containment(p: &MatrixPolynomial, region: &InclusionRegion) -> Result<VerificationReport> {
    let expected = region.degree * region.size;
    if p.degree() * p.size() != expected {
        return Err(Error::Dimension(format!(
            "polynomial has {} eigenvalues but the region describes {expected}",
            p.degree() * p.size()
        )));
    }
    let eigenvalues = polyeig_oracle(p)?;
    Ok(check_eigenvalues(eigenvalues, region))
}

/// Containment and counting checks for precomputed eigenvalues.
pub fn check_eigenvalues(eigenvalues: Spectrum, region: &InclusionRegion) -> VerificationReport {
    let max_center = region.disks.iter().map(|d| d.center.norm()).fold(0.0, f64::max);
    let tolerance = CONTAINMENT_RTOL * (1.0 + region.radius + max_center);
    let boundary_tol = BOUNDARY_RTOL * (1.0 + region.radius);
    let owner = region.component_of_disk();

    let mut worst_margin = f64::NEG_INFINITY;
    let mut observed = vec![0; region.components.len()];
    let mut boundary = 0;
    for &z in eigenvalues.iter() {
        let (disk, dist) = region.nearest_disk(z);
        let margin = dist - region.radius;
        worst_margin = worst_margin.max(margin);
        if margin.abs() <= boundary_tol {
            boundary += 1;
        }
        if !observed.is_empty() {
            observed[owner[disk]] += 1;
        }
    }
    let separation_slack = region.separation_slack();
    let counts_match = (separation_slack > region.link_tolerance()).then(|| observed == region.predicted_counts);
    VerificationReport {
        eigenvalues,
        contained: worst_margin <= tolerance,
        worst_margin,
        tolerance,
        component_counts_observed: observed,
        counts_match,
        separation_slack,
        boundary_eigenvalues: boundary,
    }
}
