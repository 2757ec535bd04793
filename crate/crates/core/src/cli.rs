//! Command-line front end: argument model, run configurations and the
//! `region`, `eigs` and `compare` commands.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bases::{convert_to_basis, verify_basis_condition, ConditionReport, GeneralizedBasis};
use crate::error::{Error, Result};
use crate::json::{complex, CoefficientFile, Pair};
use crate::linalg::{polyeig_oracle, Lu, Norm, Spectrum};
use crate::poly::MatrixPolynomial;
use crate::problems::{general_nodes, NodeDiagnostics, NodeSelection, ProblemDescriptor};
use crate::regions::{
    check_eigenvalues, inclusion_region, reversal_exclusion, InclusionRegion, RegionDocument, VerificationReport,
};
use crate::svg::Figure;

/// Largest `n·m` accepted by `eigs`.
pub const EIGS_LIMIT: usize = 1000;

/// Rounds of the basis-condition sampler run under `--verify`.
pub const CONDITION_ROUNDS: usize = 4;

/// Relative tolerance for treating two configurations as the same problem.
pub const SAME_PROBLEM_RTOL: f64 = 1e-12;

#[derive(Parser, Debug)]
#[command(
    name = "eigregion",
    version,
    about = "Eigenvalue inclusion regions for matrix polynomials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute the inclusion region for one basis.
    Region(RunArgs),
    /// Print the oracle eigenvalues as CSV.
    Eigs(RunArgs),
    /// Compare regions from several bases on one problem.
    Compare(CompareArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    MassSpring,
    Acoustic,
    String,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisKind {
    #[default]
    Power,
    Newton,
    QuadraticGeneral,
    Generic,
}

#[derive(Args, Clone, Debug, Default)]
pub struct ProblemArgs {
    /// Benchmark family.
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    /// Coefficient file `{"coefficients": [A_0, ..., A_n]}`.
    #[arg(long, conflicts_with = "family")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub tau: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub kappa: Option<f64>,
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub zeta_re: Option<f64>,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub zeta_im: f64,
    #[arg(long)]
    pub n_basis: Option<usize>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
}

#[derive(Args, Clone, Debug)]
pub struct RunArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, value_enum, default_value_t = BasisKind::Power)]
    pub basis: BasisKind,
    /// Explicit nodes as a JSON array of `[re, im]` pairs, or a basis object.
    #[arg(long)]
    pub nodes: Option<String>,
    #[arg(long, default_value = "one")]
    pub norm: Norm,
    /// Check the region against the eigenvalue oracle.
    #[arg(long)]
    pub verify: bool,
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Clone, Debug)]
pub struct CompareArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    /// Basis to include; repeat for several.
    #[arg(long, value_enum)]
    pub basis: Vec<BasisKind>,
    /// Run configuration file; repeat for several.
    #[arg(long)]
    pub config: Vec<PathBuf>,
    #[arg(long, default_value = "one")]
    pub norm: Norm,
    #[arg(long)]
    pub verify: bool,
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProblemSource {
    Problem(ProblemDescriptor),
    Input(PathBuf),
}

/// Explicit nodes: bare points or a complete basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NodeSpec {
    Points(Vec<Pair>),
    Basis(GeneralizedBasis),
}

impl std::str::FromStr for NodeSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let value: serde_json::Value = serde_json::from_str(s)?;
        if value.is_object() {
            Ok(NodeSpec::Basis(serde_json::from_value(value)?))
        } else {
            Ok(NodeSpec::Points(serde_json::from_value(value)?))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub source: ProblemSource,
    #[serde(default)]
    pub basis: BasisKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<NodeSpec>,
    #[serde(default)]
    pub norm: Norm,
    #[serde(default)]
    pub verify: bool,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub json: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub svg: Option<PathBuf>,
}

fn required<T>(v: Option<T>, flag: &str, family: &str) -> Result<T> {
    v.ok_or_else(|| Error::Invalid(format!("--{flag} is required for the {family} family")))
}

impl ProblemArgs {
    pub fn source(&self) -> Result<ProblemSource> {
        if let Some(path) = &self.input {
            return Ok(ProblemSource::Input(path.clone()));
        }
        let descriptor = match self.family {
            None => return Err(Error::Invalid("give either --family or --input".into())),
            Some(Family::MassSpring) => ProblemDescriptor::MassSpring {
                m: required(self.m, "m", "mass-spring")?,
                tau: required(self.tau, "tau", "mass-spring")?,
                kappa: required(self.kappa, "kappa", "mass-spring")?,
            },
            Some(Family::Acoustic) => ProblemDescriptor::Acoustic {
                ell: required(self.ell, "ell", "acoustic")?,
                zeta: [required(self.zeta_re, "zeta-re", "acoustic")?, self.zeta_im],
            },
            Some(Family::String) => ProblemDescriptor::String {
                n_basis: required(self.n_basis, "n-basis", "string")?,
                eps: required(self.eps, "eps", "string")?,
                delta: required(self.delta, "delta", "string")?,
            },
        };
        Ok(ProblemSource::Problem(descriptor))
    }
}

impl RunArgs {
    pub fn config(&self) -> Result<RunConfig> {
        Ok(RunConfig {
            source: self.problem.source()?,
            basis: self.basis,
            nodes: self.nodes.as_deref().map(str::parse).transpose()?,
            norm: self.norm,
            verify: self.verify,
            seed: self.seed,
            json: self.json.clone(),
            csv: self.csv.clone(),
            svg: self.svg.clone(),
        })
    }
}

impl CompareArgs {
    pub fn configs(&self) -> Result<Vec<RunConfig>> {
        let mut configs = Vec::new();
        if !self.basis.is_empty() {
            let source = self.problem.source()?;
            for &basis in &self.basis {
                configs.push(RunConfig {
                    source: source.clone(),
                    basis,
                    nodes: None,
                    norm: self.norm,
                    verify: self.verify,
                    seed: self.seed,
                    json: None,
                    csv: None,
                    svg: None,
                });
            }
        }
        for path in &self.config {
            let text = fs::read_to_string(path)?;
            let mut config: RunConfig = serde_json::from_str(&text)?;
            config.verify |= self.verify;
            configs.push(config);
        }
        if configs.is_empty() {
            return Err(Error::Invalid("compare needs at least one --basis or --config".into()));
        }
        Ok(configs)
    }
}

/// A polynomial with the node recipe that belongs to it.
pub struct LoadedProblem {
    pub polynomial: MatrixPolynomial,
    /// Recipe nodes; `None` when no recipe applies.
    pub nodes: Option<NodeSelection>,
}

pub fn read_coefficient_file(path: &Path) -> Result<MatrixPolynomial> {
    let text = fs::read_to_string(path)?;
    let file: CoefficientFile = serde_json::from_str(&text)?;
    file.to_polynomial()
}

pub fn load_problem(source: &ProblemSource, norm: Norm) -> Result<LoadedProblem> {
    match source {
        ProblemSource::Problem(d) => {
            let b = d.build(norm)?;
            Ok(LoadedProblem {
                polynomial: b.polynomial,
                nodes: Some(b.nodes),
            })
        }
        ProblemSource::Input(path) => {
            let polynomial = read_coefficient_file(path)?;
            let nodes = if polynomial.degree() == 2 {
                let lu = Lu::new(polynomial.leading())?;
                let b1 = lu.solve_matrix(polynomial.coefficient(1))?;
                let b0 = lu.solve_matrix(polynomial.coefficient(0))?;
                Some(general_nodes(&b1, &b0, norm)?)
            } else {
                None
            };
            Ok(LoadedProblem { polynomial, nodes })
        }
    }
}

fn recipe(nodes: &Option<NodeSelection>, kind: &str) -> Result<NodeSelection> {
    nodes.clone().ok_or_else(|| {
        Error::RecipeUndefined(format!(
            "no node recipe for a {kind} basis on this problem; pass --nodes"
        ))
    })
}

/// The basis a configuration asks for, with explicit nodes taking
/// precedence over recipe nodes.
pub fn select_basis(config: &RunConfig, problem: &LoadedProblem) -> Result<GeneralizedBasis> {
    let n = problem.polynomial.degree();
    let points = |spec: &NodeSpec| -> Result<Vec<Complex64>> {
        match spec {
            NodeSpec::Points(p) => Ok(p.iter().copied().map(complex).collect()),
            NodeSpec::Basis(_) => Err(Error::InvalidBasis(
                "a basis object was given where a node list was expected".into(),
            )),
        }
    };
    let basis = match (config.basis, &config.nodes) {
        (_, Some(NodeSpec::Basis(b))) => {
            if config.basis != BasisKind::Generic && kind_of(b) != config.basis {
                return Err(Error::InvalidBasis(format!(
                    "--basis {} does not match the '{}' basis in --nodes",
                    config.basis.as_str(),
                    b.variant_name()
                )));
            }
            b.clone()
        }
        (BasisKind::Power, _) => GeneralizedBasis::power(n),
        (BasisKind::Newton, Some(spec)) => {
            let nodes = points(spec)?;
            if nodes.len() != n {
                return Err(Error::InvalidBasis(format!(
                    "Newton basis of degree {n} needs {n} nodes, got {}",
                    nodes.len()
                )));
            }
            GeneralizedBasis::newton(nodes)
        }
        (BasisKind::Newton, None) => {
            let (a, b) = recipe(&problem.nodes, "Newton")?.newton_nodes;
            GeneralizedBasis::newton(vec![a, b])
        }
        (BasisKind::QuadraticGeneral, Some(spec)) => match points(spec)?.as_slice() {
            &[a, b, c] => GeneralizedBasis::quadratic_general(a, b, c),
            other => {
                return Err(Error::InvalidBasis(format!(
                    "quadratic-general basis needs 3 nodes, got {}",
                    other.len()
                )))
            }
        },
        (BasisKind::QuadraticGeneral, None) => {
            let (a, b, c) = recipe(&problem.nodes, "quadratic-general")?.general_triple()?;
            GeneralizedBasis::quadratic_general(a, b, c)
        }
        (BasisKind::Generic, _) => {
            return Err(Error::InvalidBasis(
                "a generic basis must be given as an object in --nodes".into(),
            ))
        }
    };
    if basis.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: basis.degree(),
        });
    }
    Ok(basis)
}

fn kind_of(b: &GeneralizedBasis) -> BasisKind {
    match b {
        GeneralizedBasis::Power { .. } => BasisKind::Power,
        GeneralizedBasis::Newton { .. } => BasisKind::Newton,
        GeneralizedBasis::QuadraticGeneral { .. } => BasisKind::QuadraticGeneral,
        GeneralizedBasis::Generic { .. } => BasisKind::Generic,
    }
}

impl BasisKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BasisKind::Power => "power",
            BasisKind::Newton => "newton",
            BasisKind::QuadraticGeneral => "quadratic-general",
            BasisKind::Generic => "generic",
        }
    }
}

/// Everything computed for one configuration.
pub struct Localization {
    pub polynomial: MatrixPolynomial,
    pub basis: GeneralizedBasis,
    pub region: InclusionRegion,
    /// Radius of the power-basis Cauchy disk.
    pub cauchy_disk_radius: f64,
    pub node_diagnostics: Option<NodeDiagnostics>,
}

pub fn localize(config: &RunConfig) -> Result<Localization> {
    let problem = load_problem(&config.source, config.norm)?;
    localize_loaded(config, problem)
}

fn localize_loaded(config: &RunConfig, problem: LoadedProblem) -> Result<Localization> {
    let basis = select_basis(config, &problem)?;
    let from_recipe = config.nodes.is_none() && config.basis != BasisKind::Power;
    let coeffs = convert_to_basis(&problem.polynomial, &basis)?;
    let region = inclusion_region(&coeffs, config.norm)?;
    let cauchy_disk_radius = if basis.variant_name() == "power" {
        region.radius
    } else {
        inclusion_region(&problem.polynomial.to_power_basis(), config.norm)?.radius
    };
    Ok(Localization {
        polynomial: problem.polynomial,
        basis,
        region,
        cauchy_disk_radius,
        node_diagnostics: if from_recipe {
            problem.nodes.map(|n| n.diagnostics)
        } else {
            None
        },
    })
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationDocument {
    pub contained: bool,
    pub eigenvalue_count: usize,
    pub worst_margin: f64,
    pub tolerance: f64,
    pub observed_counts: Vec<usize>,
    /// Absent when the components are not separated enough to count.
    pub counts_match: Option<bool>,
    /// Absent for a single component.
    pub separation_slack: Option<f64>,
    pub boundary_eigenvalues: usize,
}

impl From<&VerificationReport> for VerificationDocument {
    fn from(r: &VerificationReport) -> Self {
        Self {
            contained: r.contained,
            eigenvalue_count: r.eigenvalues.len(),
            worst_margin: r.worst_margin,
            tolerance: r.tolerance,
            observed_counts: r.component_counts_observed.clone(),
            counts_match: r.counts_match,
            separation_slack: finite(r.separation_slack),
            boundary_eigenvalues: r.boundary_eigenvalues,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RegionOutput {
    #[serde(flatten)]
    pub problem: ProblemSource,
    pub basis: GeneralizedBasis,
    pub norm: Norm,
    pub cauchy_disk_radius: f64,
    pub region: RegionDocument,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub node_diagnostics: Option<NodeDiagnostics>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis_condition: Option<ConditionReport>,
}

/// Result of a command: whether every requested check passed.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    ContainmentViolated,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Success => 0,
            Outcome::ContainmentViolated => 2,
        }
    }
}

pub fn eigenvalues_csv(values: &[Complex64]) -> String {
    let mut out = String::from("re,im\n");
    for z in values {
        out.push_str(&format!("{},{}\n", z.re, z.im));
    }
    out
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Region computation with optional verification. Region JSON goes to
/// `config.json`, or to `out` when no path is set.
pub fn cmd_region(config: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let loc = localize(config)?;
    let mut verification = None;
    let mut condition = None;
    let mut eigenvalues: Option<Vec<Complex64>> = None;
    if config.verify {
        let spectrum = polyeig_oracle(&loc.polynomial)?;
        let report = check_eigenvalues(spectrum, &loc.region);
        eigenvalues = Some(report.eigenvalues.sorted());
        verification = Some(report);
        condition = Some(verify_basis_condition(
            &loc.basis,
            loc.region.degree,
            CONDITION_ROUNDS,
            config.seed,
        )?);
    }
    let output = RegionOutput {
        problem: config.source.clone(),
        basis: loc.basis.clone(),
        norm: config.norm,
        cauchy_disk_radius: loc.cauchy_disk_radius,
        region: loc.region.to_document(),
        node_diagnostics: loc.node_diagnostics.clone(),
        verification: verification.as_ref().map(VerificationDocument::from),
        basis_condition: condition.clone(),
    };
    emit(config.json.as_deref(), &to_json(&output)?, out)?;
    if let (Some(path), Some(eigs)) = (&config.csv, &eigenvalues) {
        fs::write(path, eigenvalues_csv(eigs))?;
    }
    if let Some(path) = &config.svg {
        let figure = Figure {
            cauchy_radius: loc.cauchy_disk_radius,
            region: &loc.region,
            eigenvalues: eigenvalues.as_deref(),
        };
        fs::write(path, figure.render())?;
    }
    let ok = verification.is_none_or(|v| v.contained) && condition.is_none_or(|c| c.holds);
    Ok(if ok {
        Outcome::Success
    } else {
        Outcome::ContainmentViolated
    })
}

/// Oracle eigenvalues, sorted, as CSV.
pub fn cmd_eigs(config: &RunConfig, out: &mut dyn Write) -> Result<Outcome> {
    let problem = load_problem(&config.source, config.norm)?;
    let p = &problem.polynomial;
    let total = p.degree() * p.size();
    if total > EIGS_LIMIT {
        return Err(Error::TooLarge(format!(
            "n*m = {total} exceeds the eigs limit of {EIGS_LIMIT}"
        )));
    }
    let spectrum: Spectrum = polyeig_oracle(p)?;
    emit(config.csv.as_deref(), &eigenvalues_csv(&spectrum.sorted()), out)?;
    Ok(Outcome::Success)
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareEntry {
    pub basis: GeneralizedBasis,
    pub gamma: f64,
    pub rho: f64,
    pub radius: f64,
    pub components: usize,
    pub predicted_counts: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub contained: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub observed_counts: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntersectionDocument {
    pub eigenvalues: usize,
    /// Eigenvalues lying in every region.
    pub in_all_regions: usize,
    /// Eigenvalues with modulus at least `r_min` (within tolerance).
    pub outside_exclusion: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CompareOutput {
    #[serde(flatten)]
    pub problem: ProblemSource,
    pub norm: Norm,
    pub r_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r_min_error: Option<String>,
    pub regions: Vec<CompareEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intersection: Option<IntersectionDocument>,
}

fn same_polynomial(p: &MatrixPolynomial, q: &MatrixPolynomial) -> bool {
    let (p, q) = (p.to_power_basis(), q.to_power_basis());
    if p.degree() != q.degree() || p.size() != q.size() {
        return false;
    }
    p.coefficients().iter().zip(q.coefficients()).all(|(a, b)| {
        let scale = a.max_abs().max(b.max_abs()).max(1.0);
        (a - b).max_abs() <= SAME_PROBLEM_RTOL * scale
    })
}

/// Side-by-side regions for one polynomial, with the reversal exclusion
/// radius and, under `verify`, per-eigenvalue membership in all regions.
pub fn compare(configs: &[RunConfig], json: Option<&Path>, out: &mut dyn Write) -> Result<Outcome> {
    let first = configs
        .first()
        .ok_or_else(|| Error::Invalid("nothing to compare".into()))?;
    let norm = first.norm;
    let mut locs = Vec::with_capacity(configs.len());
    for config in configs {
        if config.norm != norm {
            return Err(Error::Invalid(
                "all compared configurations must use the same norm".into(),
            ));
        }
        let loc = localize(config)?;
        if let Some(prev) = locs.first() {
            let prev: &Localization = prev;
            if !same_polynomial(&prev.polynomial, &loc.polynomial) {
                return Err(Error::Invalid(
                    "compared configurations describe different problems".into(),
                ));
            }
        }
        locs.push(loc);
    }
    let p = &locs[0].polynomial;
    let (r_min, r_min_error) = match reversal_exclusion(p, norm) {
        Ok(r) => (finite(r), None),
        Err(e @ Error::Singular { .. }) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };

    let verify = configs.iter().any(|c| c.verify);
    let spectrum = if verify { Some(polyeig_oracle(p)?) } else { None };
    let mut ok = true;
    let mut regions = Vec::new();
    let mut reports = Vec::new();
    for loc in &locs {
        let report = spectrum.as_ref().map(|s| check_eigenvalues(s.clone(), &loc.region));
        if let Some(r) = &report {
            ok &= r.contained;
        }
        regions.push(CompareEntry {
            basis: loc.basis.clone(),
            gamma: loc.region.gamma,
            rho: loc.region.rho,
            radius: loc.region.radius,
            components: loc.region.components.len(),
            predicted_counts: loc.region.predicted_counts.clone(),
            contained: report.as_ref().map(|r| r.contained),
            observed_counts: report.as_ref().map(|r| r.component_counts_observed.clone()),
        });
        reports.push(report);
    }
    let intersection = spectrum.as_ref().map(|s| {
        let in_all = s
            .iter()
            .filter(|&&z| {
                locs.iter().zip(&reports).all(|(loc, r)| {
                    let tol = r.as_ref().map_or(0.0, |r| r.tolerance);
                    loc.region.nearest_disk(z).1 - loc.region.radius <= tol
                })
            })
            .count();
        let outside_exclusion = r_min.map(|r| {
            let tol = 1e-10 * (1.0 + r);
            s.iter().filter(|z| z.norm() >= r - tol).count()
        });
        IntersectionDocument {
            eigenvalues: s.len(),
            in_all_regions: in_all,
            outside_exclusion,
        }
    });
    if let Some(i) = &intersection {
        ok &= i.in_all_regions == i.eigenvalues;
        ok &= i.outside_exclusion.is_none_or(|c| c == i.eigenvalues);
    }
    let output = CompareOutput {
        problem: first.source.clone(),
        norm,
        r_min,
        r_min_error,
        regions,
        intersection,
    };
    emit(json, &to_json(&output)?, out)?;
    Ok(if ok {
        Outcome::Success
    } else {
        Outcome::ContainmentViolated
    })
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome> {
    match &cli.command {
        Command::Region(args) => cmd_region(&args.config()?, out),
        Command::Eigs(args) => cmd_eigs(&args.config()?, out),
        Command::Compare(args) => compare(&args.configs()?, args.json.as_deref(), out),
    }
}

/// Parses `args` and runs the command, returning the process exit code.
/// Messages go to `err`; usage errors exit with 1.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(text.as_bytes());
            } else {
                let _ = err.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match run(&cli, out) {
        Ok(outcome) => {
            if outcome == Outcome::ContainmentViolated {
                let _ = writeln!(err, "containment check failed");
            }
            outcome.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
