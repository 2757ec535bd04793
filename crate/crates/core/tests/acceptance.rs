//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use eigregion::bases::{basis_gamma, convert_to_basis, verify_basis_condition, GeneralizedBasis};
use eigregion::cauchy::{cauchy_radius, Majorant};
use eigregion::linalg::{one_norm, polyeig_oracle};
use eigregion::problems::{acoustic, general_nodes, mass_spring, mass_spring_nodes, string_galerkin};
use eigregion::regions::{check_eigenvalues, inclusion_region, reversal_exclusion, verify_containment};
use eigregion::{Complex64, ComplexMatrix, MatrixPolynomial, Norm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: f64, what: &str) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit, || {
        format!("{what} took {:.2}s, limit {limit}s", elapsed.as_secs_f64())
    })
}

fn err(e: eigregion::Error) -> String {
    e.to_string()
}

fn random_monic(rng: &mut ChaCha8Rng, m: usize, n: usize, lo: f64, hi: f64) -> MatrixPolynomial {
    let mut coeffs: Vec<ComplexMatrix> = (0..n)
        .map(|_| ComplexMatrix::from_fn(m, m, |_, _| c(rng.gen_range(lo..hi), rng.gen_range(lo..hi))))
        .collect();
    coeffs.push(ComplexMatrix::identity(m));
    MatrixPolynomial::power(coeffs).unwrap()
}

fn figure3_split() -> Check {
    let start = Instant::now();
    let (tau, kappa) = (1.0, 8.0);
    let h = 87f64.sqrt() / 2.0;
    let p = mass_spring(50, tau, kappa).map_err(err)?;
    let (a, b, cc) = mass_spring_nodes(tau, kappa).general_triple().map_err(err)?;
    ensure((a - c(-8.0, 0.0)).norm() <= 1e-12, || format!("a = {a}"))?;
    let basis = GeneralizedBasis::quadratic_general(a, b, cc);
    let coeffs = convert_to_basis(&p, &basis).map_err(err)?;

    let t0 = ComplexMatrix::tridiag(50, c(-1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0));
    let c1_err = (coeffs.coefficient(1) - &t0).max_abs();
    ensure(c1_err <= 1e-12, || {
        format!("C1 differs from tridiag(-1,0,-1) by {c1_err:e}")
    })?;
    let c0_err = coeffs.coefficient(0).max_abs();
    ensure(c0_err <= 1e-12, || format!("C0 not zero: {c0_err:e}"))?;

    let region = inclusion_region(&coeffs, Norm::One).map_err(err)?;
    ensure((region.gamma - 16.0 / 87f64.sqrt()).abs() <= 1e-12, || {
        format!("gamma {}", region.gamma)
    })?;
    ensure((region.rho - 2.0).abs() <= 1e-12, || format!("rho {}", region.rho))?;
    let want_radius = 32.0 / 87f64.sqrt();
    ensure((region.radius - want_radius).abs() <= 1e-10, || {
        format!("radius {} vs {want_radius}", region.radius)
    })?;
    let centers = [c(-8.0, 0.0), c(-1.5, h), c(-1.5, -h)];
    ensure(region.disks.len() == 3, || format!("{} disks", region.disks.len()))?;
    for (d, want) in region.disks.iter().zip(centers) {
        ensure((d.center - want).norm() <= 1e-10, || {
            format!("center {} vs {want}", d.center)
        })?;
    }
    ensure(region.components.len() == 3, || {
        format!("{} components", region.components.len())
    })?;
    ensure(region.predicted_counts == [0, 50, 50], || {
        format!("predicted {:?}", region.predicted_counts)
    })?;
    let report = verify_containment(&p, &region).map_err(err)?;
    ensure(report.contained, || format!("worst margin {:e}", report.worst_margin))?;
    ensure(report.counts_match == Some(true), || {
        format!("observed {:?}", report.component_counts_observed)
    })?;
    within(start.elapsed(), 5.0, "run")?;
    Ok(format!(
        "counts {:?}, radius {:.12}, {:.2}s",
        report.component_counts_observed,
        region.radius,
        start.elapsed().as_secs_f64()
    ))
}

fn figure3_newton() -> Check {
    let start = Instant::now();
    let p = mass_spring(50, 1.0, 8.0).map_err(err)?;
    let (a, b) = mass_spring_nodes(1.0, 8.0).newton_nodes;
    let coeffs = convert_to_basis(&p, &GeneralizedBasis::newton(vec![a, b])).map_err(err)?;
    let n1 = one_norm(coeffs.coefficient(1)).map_err(err)?;
    let n0 = one_norm(coeffs.coefficient(0)).map_err(err)?;
    ensure((n1 - 2.0).abs() <= 1e-12 && (n0 - 16.0).abs() <= 1e-11, || {
        format!("norms {n1}, {n0}")
    })?;
    let region = inclusion_region(&coeffs, Norm::One).map_err(err)?;
    let want = 1.0 + 17f64.sqrt();
    ensure((region.rho - want).abs() <= 1e-10, || {
        format!("rho {} vs {want}", region.rho)
    })?;
    ensure(region.disks.len() == 2, || format!("{} disks", region.disks.len()))?;
    ensure(region.components.len() == 1, || {
        format!("{} components", region.components.len())
    })?;
    ensure(region.predicted_counts == [100], || {
        format!("predicted {:?}", region.predicted_counts)
    })?;
    let report = verify_containment(&p, &region).map_err(err)?;
    ensure(report.contained, || format!("worst margin {:e}", report.worst_margin))?;
    ensure(report.component_counts_observed == [100], || {
        format!("observed {:?}", report.component_counts_observed)
    })?;
    within(start.elapsed(), 5.0, "run")?;
    Ok(format!("rho {:.12}, {:.2}s", region.rho, start.elapsed().as_secs_f64()))
}

fn power_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = f64::NEG_INFINITY;
    for trial in 0..50 {
        let m = rng.gen_range(1..=5);
        let n = rng.gen_range(1..=4);
        let p = random_monic(&mut rng, m, n, -1.0, 1.0);
        let region = inclusion_region(&p, Norm::One).map_err(err)?;
        let lower: Vec<f64> = p.coefficients()[..n].iter().map(|a| one_norm(a).unwrap()).collect();
        let rho = cauchy_radius(1.0, &lower).map_err(err)?.rho;
        ensure(region.disks.len() == 1 && region.disks[0].center == c(0.0, 0.0), || {
            format!("trial {trial}: region is not one origin disk")
        })?;
        ensure((region.radius - rho).abs() <= 1e-12 * rho.max(1.0), || {
            format!("trial {trial}: radius {} vs {rho}", region.radius)
        })?;
        let eigs = polyeig_oracle(&p).map_err(err)?;
        let margin = eigs.iter().map(|z| z.norm() - rho).fold(f64::NEG_INFINITY, f64::max);
        ensure(margin <= 1e-8, || {
            format!("trial {trial}: eigenvalue outside by {margin:e}")
        })?;
        worst = worst.max(margin);
    }
    Ok(format!("50 instances, worst margin {worst:.3e}"))
}

fn theorem_property() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst = f64::NEG_INFINITY;
    let mut separated = 0;
    // The second half draws small coefficients in the Newton basis itself,
    // so that components split and the counting claim is exercised.
    for trial in 0..400 {
        let m = rng.gen_range(1..=4);
        let n = rng.gen_range(1..=3);
        let nodes: Vec<Complex64> = (0..n)
            .map(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
            .collect();
        let basis = GeneralizedBasis::newton(nodes);
        let p = if trial < 200 {
            random_monic(&mut rng, m, n, 0.0, 1.0)
        } else {
            let small = random_monic(&mut rng, m, n, 0.0, 0.05);
            MatrixPolynomial::new(small.coefficients().to_vec(), basis.clone())
                .map_err(err)?
                .to_power_basis()
        };
        let coeffs = convert_to_basis(&p, &basis).map_err(err)?;
        let region = inclusion_region(&coeffs, Norm::One).map_err(err)?;
        let report = check_eigenvalues(polyeig_oracle(&p).map_err(err)?, &region);
        ensure(report.worst_margin <= 1e-8, || {
            format!("trial {trial}: eigenvalue outside by {:e}", report.worst_margin)
        })?;
        worst = worst.max(report.worst_margin);
        if region.components.len() > 1 && report.separation_slack > 1e-6 {
            separated += 1;
            ensure(report.component_counts_observed == region.predicted_counts, || {
                format!(
                    "trial {trial}: observed {:?}, predicted {:?}",
                    report.component_counts_observed, region.predicted_counts
                )
            })?;
        }
    }
    ensure(separated > 0, || "no instance had split components".into())?;
    Ok(format!(
        "400 instances, worst margin {worst:.3e}, {separated} with split components"
    ))
}

fn cauchy_solver() -> Check {
    let golden = cauchy_radius(1.0, &[1.0, 1.0]).map_err(err)?.rho;
    let want = (1.0 + 5f64.sqrt()) / 2.0;
    ensure((golden - want).abs() <= 1e-14, || format!("golden {golden} vs {want}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for trial in 0..1000 {
        let n = rng.gen_range(1..=6);
        let inv_lead = 1.0 / rng.gen_range(0.5..2.0);
        let lead = 1.0 / inv_lead;
        let lower: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
        let r = cauchy_radius(inv_lead, &lower).map_err(err)?;
        let f = Majorant {
            leading: lead,
            lower: &lower,
        };
        let rel = r.residual.abs() / f.scale();
        ensure(rel <= 1e-12, || {
            format!("trial {trial}: residual {:e} (scale {})", r.residual, f.scale())
        })?;
        ensure((f.eval(r.rho) - r.residual).abs() <= 1e-15 * f.scale(), || {
            format!("trial {trial}: reported residual is not f(rho)")
        })?;
        worst = worst.max(rel);
    }
    Ok(format!("golden ok, 1000 sets, worst residual/scale {worst:.3e}"))
}

fn basis_sampler() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut newton_worst = 0.0f64;
    for trial in 0..20 {
        let n = rng.gen_range(1..=4);
        let nodes: Vec<Complex64> = (0..n)
            .map(|_| c(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)))
            .collect();
        let r = verify_basis_condition(&GeneralizedBasis::newton(nodes), n, 3, trial).map_err(err)?;
        ensure(r.max_abs_slack <= 1e-12, || {
            format!("Newton trial {trial}: slack {:e}", r.max_abs_slack)
        })?;
        newton_worst = newton_worst.max(r.max_abs_slack);
    }
    let mut general_worst = f64::INFINITY;
    for trial in 0..100 {
        let mut z = || c(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let basis = GeneralizedBasis::quadratic_general(z(), z(), z());
        let r = verify_basis_condition(&basis, 2, 3, trial).map_err(err)?;
        ensure(r.worst_slack >= -1e-10 && r.holds, || {
            format!("triple {trial}: slack {:e} at {:?}", r.worst_slack, r.witness)
        })?;
        general_worst = general_worst.min(r.worst_slack);
    }
    Ok(format!(
        "Newton max |slack| {newton_worst:.3e}, three-node min slack {general_worst:.3e} over 100 triples"
    ))
}

fn parameter_sweep() -> Check {
    let start = Instant::now();
    let mut radii = Vec::new();
    for (tau, kappa) in [
        (3.0, 5.0),
        (10.0, 5.0),
        (1.0, 8.0),
        (5.0, 20.0),
        (5.0, 30.0),
        (5.0, 80.0),
    ] {
        let p = mass_spring(50, tau, kappa).map_err(err)?;
        let nodes = mass_spring_nodes(tau, kappa);
        let (a, b) = nodes.newton_nodes;
        let (ga, gb, gc) = nodes.general_triple().map_err(err)?;
        let eigs = polyeig_oracle(&p).map_err(err)?;
        let mut pair = Vec::new();
        for basis in [
            GeneralizedBasis::newton(vec![a, b]),
            GeneralizedBasis::quadratic_general(ga, gb, gc),
        ] {
            let coeffs = convert_to_basis(&p, &basis).map_err(err)?;
            let region = inclusion_region(&coeffs, Norm::One).map_err(err)?;
            let report = check_eigenvalues(eigs.clone(), &region);
            ensure(report.contained, || {
                format!(
                    "({tau},{kappa}) {}: margin {:e}",
                    basis.variant_name(),
                    report.worst_margin
                )
            })?;
            pair.push(region.radius);
        }
        if (tau, kappa) == (10.0, 5.0) {
            let g = basis_gamma(&GeneralizedBasis::quadratic_general(ga, gb, gc)).map_err(err)?;
            ensure(g - 1.0 <= 1e-3, || format!("gamma - 1 = {:e}", g - 1.0))?;
        }
        radii.push(pair);
    }
    within(start.elapsed(), 30.0, "sweep")?;
    Ok(format!(
        "6 parameter pairs x 2 bases contained, {:.2}s",
        start.elapsed().as_secs_f64()
    ))
}

fn acoustic_check(ell: usize, zeta: Complex64) -> Result<usize, String> {
    let problem = acoustic(ell, zeta).map_err(err)?;
    let sel = general_nodes(&problem.b1, &problem.b0, Norm::One).map_err(err)?;
    let (a, b) = sel.newton_nodes;
    let p = problem.monic();
    let coeffs = convert_to_basis(&p, &GeneralizedBasis::newton(vec![a, b])).map_err(err)?;
    let region = inclusion_region(&coeffs, Norm::One).map_err(err)?;
    let report = verify_containment(&p, &region).map_err(err)?;
    ensure(report.contained, || {
        format!("ell {ell}, zeta {zeta}: margin {:e}", report.worst_margin)
    })?;
    Ok(report.eigenvalues.len())
}

fn acoustic_problem() -> Check {
    let mut counts = Vec::new();
    for zeta in [c(0.1, 0.1), c(2.0, 2.0)] {
        let k = acoustic_check(5, zeta)?;
        ensure(k == 40, || format!("{k} eigenvalues at ell 5"))?;
        counts.push(k);
    }
    let start = Instant::now();
    let k = acoustic_check(20, c(2.0, 2.0))?;
    let elapsed = start.elapsed();
    ensure(k == 760, || format!("{k} eigenvalues at ell 20"))?;
    within(elapsed, 60.0, "ell = 20")?;
    Ok(format!(
        "ell 5: 2 x 40 contained; ell 20: 760 contained in {:.2}s",
        elapsed.as_secs_f64()
    ))
}

/// Independent fixed-resolution Simpson rule on the product integrand.
fn simpson_oracle(k: usize, l: usize, eps: f64, delta: f64, panels: usize) -> f64 {
    let h = PI / panels as f64;
    let f = |x: f64| {
        let w = x * x * (PI - x) * (PI - x) - delta;
        2.0 * eps * w * (k as f64 * x).sin() * (l as f64 * x).sin()
    };
    let mut sum = f(0.0) + f(PI);
    for i in 1..panels {
        let weight = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += weight * f(i as f64 * h);
    }
    sum * h / 3.0
}

fn string_problem() -> Check {
    let (eps, delta) = (0.1, 2.7);
    let p = string_galerkin(10, eps, delta).map_err(err)?;
    let a1 = p.coefficient(1);
    let asym = (a1 - &a1.transpose()).max_abs();
    ensure(asym <= 1e-12, || format!("asymmetry {asym:e}"))?;
    let mut worst = 0.0f64;
    for k in 1..=10 {
        for l in k..=10 {
            let oracle = simpson_oracle(k, l, eps, delta, 1_000_000);
            let d = (a1[(k - 1, l - 1)] - Complex64::new(oracle, 0.0)).norm();
            ensure(d <= 1e-10, || format!("entry ({k},{l}) differs from oracle by {d:e}"))?;
            worst = worst.max(d);
        }
    }
    let check = |p: &MatrixPolynomial| -> Result<usize, String> {
        let sel = general_nodes(p.coefficient(1), p.coefficient(0), Norm::One).map_err(err)?;
        let (a, b) = sel.newton_nodes;
        let coeffs = convert_to_basis(p, &GeneralizedBasis::newton(vec![a, b])).map_err(err)?;
        let region = inclusion_region(&coeffs, Norm::One).map_err(err)?;
        let report = verify_containment(p, &region).map_err(err)?;
        ensure(report.contained, || format!("margin {:e}", report.worst_margin))?;
        Ok(report.eigenvalues.len())
    };
    let k = check(&p)?;
    ensure(k == 20, || format!("{k} eigenvalues"))?;
    let start = Instant::now();
    let big = string_galerkin(50, eps, delta).map_err(err)?;
    let k = check(&big)?;
    let elapsed = start.elapsed();
    ensure(k == 100, || format!("{k} eigenvalues at n = 50"))?;
    within(elapsed, 60.0, "n = 50")?;
    Ok(format!(
        "oracle gap {worst:.3e}, 20 contained; n = 50 contained in {:.2}s",
        elapsed.as_secs_f64()
    ))
}

fn reversal() -> Check {
    let golden = MatrixPolynomial::power(vec![
        ComplexMatrix::identity(2).scale_real(-4.0),
        ComplexMatrix::zeros(2, 2),
        ComplexMatrix::identity(2),
    ])
    .map_err(err)?;
    let r = reversal_exclusion(&golden, Norm::One).map_err(err)?;
    ensure((r - 2.0).abs() <= 1e-12, || format!("golden r_min {r}"))?;
    for z in polyeig_oracle(&golden).map_err(err)?.iter() {
        ensure((z.norm() - 2.0).abs() <= 1e-12, || {
            format!("golden eigenvalue {z} off the boundary")
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut tightest = f64::INFINITY;
    let mut trials = 0;
    while trials < 100 {
        let m = rng.gen_range(1..=4);
        let n = rng.gen_range(1..=3);
        let p = random_monic(&mut rng, m, n, -1.0, 1.0);
        let r_min = match reversal_exclusion(&p, Norm::One) {
            Ok(r) => r,
            Err(eigregion::Error::Singular { .. }) => continue,
            Err(e) => return Err(err(e)),
        };
        trials += 1;
        let min_mod = polyeig_oracle(&p)
            .map_err(err)?
            .iter()
            .map(|z| z.norm())
            .fold(f64::INFINITY, f64::min);
        ensure(min_mod >= r_min - 1e-10, || {
            format!("instance {trials}: |lambda| {min_mod} < r_min {r_min}")
        })?;
        tightest = tightest.min(min_mod - r_min);
    }
    Ok(format!("golden r_min = 2, 100 instances, tightest gap {tightest:.3e}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("three-node split for m=50, tau=1, kappa=8", figure3_split),
        ("Newton region for m=50, tau=1, kappa=8", figure3_newton),
        ("power basis region equals the Cauchy disk", power_equivalence),
        ("random Newton regions contain and count eigenvalues", theorem_property),
        ("Cauchy radius residuals and golden value", cauchy_solver),
        ("basis condition sampler", basis_sampler),
        ("mass-spring parameter sweep", parameter_sweep),
        ("acoustic problem", acoustic_problem),
        ("damped string problem", string_problem),
        ("reversal exclusion radius", reversal),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS AC{} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL AC{} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
