//! End-to-end acceptance criteria. Each test prints one `PASS`/`FAIL` line;
//! run with `cargo test --test acceptance -- --nocapture` to see them.

use std::time::{Duration, Instant};

use sharp_logsobolev::extremals::{make_log_sobolev_extremal, make_talenti, StretchedExponential};
use sharp_logsobolev::functionals::{deficit, nonnegativity_suite, sobolev_ratio, sobolev_ratio_radial, SUITE_REL_TOL};
use sharp_logsobolev::identities::identity_matrix;
use sharp_logsobolev::minimizer::{minimize_deficit, MinimizeOptions, ProfileFamily};
use sharp_logsobolev::monomial::{sharp_sobolev_constant, MonomialWeight};
use sharp_logsobolev::norms::NormSpec;
use sharp_logsobolev::quadrature::{integrate_components, FnField, QuadratureSpec, ScalarField};
use sharp_logsobolev::tensorization::{
    asymptotic_ab_check, degenerate_profile_sup, line_grid, log_grid, profile_limit_check, tensorized_constant_sequence,
    verify_product_identities, DegenerateRegime,
};

fn report(criterion: u32, title: &str, passed: bool, detail: String) {
    println!("{} criterion {criterion}: {title}: {detail}", if passed { "PASS" } else { "FAIL" });
}

fn weight(a: &[f64]) -> MonomialWeight {
    MonomialWeight::new(a.to_vec()).unwrap()
}

#[test]
fn criterion_1_closed_form_identities() {
    let start = Instant::now();
    let matrix = identity_matrix(3, 1e-6, &QuadratureSpec::adaptive(1e-7)).unwrap();
    let elapsed = start.elapsed();
    let passed = matrix.passed() && elapsed < Duration::from_secs(120);
    report(
        1,
        "closed-form identity matrix",
        passed,
        format!("{} checks, {} failures, max rel error {:.2e}, {:.1}s", matrix.count, matrix.failures, matrix.max_rel_error, elapsed.as_secs_f64()),
    );
    assert!(passed);
}

#[test]
fn criterion_2_extremals_have_zero_deficit() {
    let spec = QuadratureSpec::default();
    let mut worst: f64 = 0.0;
    for a in [vec![0.0], vec![1.0], vec![2.0], vec![1.0, 1.0]] {
        let w = weight(&a);
        let centers = [vec![0.0; w.dim()], (0..w.dim()).map(|i| if w.is_weighted_axis(i) { 0.0 } else { 0.4 }).collect()];
        for center in centers {
            for sigma in [0.3, 1.0, 4.0] {
                let f = make_log_sobolev_extremal(2.0, sigma, center.clone(), &w, NormSpec::Euclidean).unwrap();
                worst = worst.max(deficit(&f, 2.0, &w, &NormSpec::Euclidean, &spec).unwrap().deficit.abs());
            }
        }
    }
    let plane = MonomialWeight::unweighted(2);
    let line = MonomialWeight::unweighted(1);
    for p in [1.5, 2.0, 3.0] {
        for q in [1.5, 2.0, 3.0] {
            let norm = NormSpec::q_norm(q).unwrap();
            for (w, center) in [(&line, vec![0.25]), (&plane, vec![0.3, -0.2])] {
                let f = make_log_sobolev_extremal(p, 1.0, center, w, norm.clone()).unwrap();
                worst = worst.max(deficit(&f, p, w, &norm, &spec).unwrap().deficit.abs());
            }
        }
    }

    // f = e^{-|x|²/4}/(2Π(A))^{D/4} has second moment D
    let mut worst_moment: f64 = 0.0;
    for a in [vec![0.0], vec![2.0], vec![1.0, 1.0]] {
        let w = weight(&a);
        let d = w.homogeneous_dim();
        let scale = (2.0 * w.pi_constant()).powf(-d / 4.0);
        let f = FnField::new(w.dim(), move |x| scale * (-x.iter().map(|v| v * v).sum::<f64>() / 4.0).exp());
        worst = worst.max(deficit(&f, 2.0, &w, &NormSpec::Euclidean, &spec).unwrap().deficit.abs());
        let moment = integrate_components(&w, &spec, &[], |x| [x.iter().map(|v| v * v).sum::<f64>() * f.value(x).powi(2)]).unwrap();
        worst_moment = worst_moment.max((moment.values[0] - d).abs());
    }

    let passed = worst <= 1e-6 && worst_moment <= 1e-6;
    report(2, "equality cases", passed, format!("max |deficit| {worst:.2e}, max |moment - D| {worst_moment:.2e}"));
    assert!(passed);
}

#[test]
fn criterion_3_random_fields_have_nonnegative_deficit() {
    let start = Instant::now();
    let spec = QuadratureSpec::adaptive(SUITE_REL_TOL);
    let mut configs: Vec<(f64, Vec<f64>)> = Vec::new();
    for p in [1.5, 2.0, 3.0] {
        for a in [vec![0.0], vec![1.0], vec![2.0]] {
            configs.push((p, a));
        }
    }
    configs.push((2.0, vec![1.0, 0.0]));
    let mut min_deficit = f64::INFINITY;
    let mut count = 0;
    for (p, a) in &configs {
        let w = weight(a);
        let reports = nonnegativity_suite(*p, &w, &NormSpec::Euclidean, 50, 2024, &spec).unwrap();
        count += reports.len();
        min_deficit = reports.iter().map(|r| r.deficit).fold(min_deficit, f64::min);
    }
    let w = weight(&[1.0]);
    let first: Vec<f64> = nonnegativity_suite(2.0, &w, &NormSpec::Euclidean, 50, 99, &spec).unwrap().iter().map(|r| r.deficit).collect();
    let second: Vec<f64> = nonnegativity_suite(2.0, &w, &NormSpec::Euclidean, 50, 99, &spec).unwrap().iter().map(|r| r.deficit).collect();
    let elapsed = start.elapsed();
    let passed = min_deficit >= -1e-6 && first == second && elapsed < Duration::from_secs(300);
    report(
        3,
        "nonnegativity on seeded random fields",
        passed,
        format!("{count} fields over {} configurations, min deficit {min_deficit:.3e}, reproducible {}, {:.1}s", configs.len(), first == second, elapsed.as_secs_f64()),
    );
    assert!(passed);
}

#[test]
fn criterion_4_minimizer_recovers_extremals() {
    let opts = MinimizeOptions { seed: 5, ..MinimizeOptions::default() };
    let family = ProfileFamily::stretched_exponential(1, 3.5, 1.0).unwrap();
    let mut details = Vec::new();
    let mut passed = true;
    for (p, a, norm) in [(2.0, vec![2.0], NormSpec::Euclidean), (3.0, vec![0.0], NormSpec::q_norm(2.0).unwrap())] {
        let r = minimize_deficit(&family, p, &weight(&a), &norm, &opts).unwrap();
        let pprime = p / (p - 1.0);
        let q_err = (r.theta_star[0] / pprime - 1.0).abs();
        passed &= q_err <= 0.03 && r.deficit_star <= 1e-5;
        details.push(format!("p = {p}: q* = {:.6}, deficit* = {:.1e}", r.theta_star[0], r.deficit_star));
    }
    let spline = ProfileFamily::radial_spline(1, 8, 4.0).unwrap();
    let r = minimize_deficit(&spline, 2.0, &weight(&[2.0]), &NormSpec::Euclidean, &MinimizeOptions { restarts: 0, ..opts }).unwrap();
    passed &= r.distance_to_extremal <= 5e-3;
    details.push(format!("spline L2 distance {:.1e}", r.distance_to_extremal));
    report(4, "deficit minimizers", passed, details.join("; "));
    assert!(passed);
}

#[test]
fn criterion_5_tensorized_constants_converge() {
    let grid = log_grid(10, 1_000_000);
    let mut passed = true;
    let mut details = Vec::new();
    for a in [vec![0.0], vec![2.0]] {
        let rows = tensorized_constant_sequence(&weight(&a), &grid).unwrap();
        let last = rows.last().unwrap();
        let monotone = rows.windows(2).all(|w| w[1].rel_error < w[0].rel_error);
        passed &= last.l == 1_000_000 && last.rel_error <= 1e-4 && monotone;
        details.push(format!("A = {a:?}: rel error {:.2e} at l = {}, monotone {monotone}", last.rel_error, last.l));
    }
    report(5, "tensorization limit", passed, details.join("; "));
    assert!(passed);
}

#[test]
fn criterion_6_asymptotic_profiles() {
    let w = MonomialWeight::unweighted(1);
    let ab = asymptotic_ab_check(&w, 1.0, 1_000_000).unwrap();
    let grid = line_grid(0.0, 3.0, 41);
    let sup = profile_limit_check(&w, 1.0, &[10_000], &grid, &[0.0]).unwrap()[0];
    let growing = degenerate_profile_sup(&w, DegenerateRegime::Growing(1.0), 10_000, &grid, &[0.0]).unwrap();
    let constant = degenerate_profile_sup(&w, DegenerateRegime::Constant(1.0), 10_000, &grid, &[0.0]).unwrap();
    let passed = (ab.ratio - 1.0).abs() <= 1e-3 && sup < 1e-3 && growing < 1e-6 && constant < 1e-6;
    report(
        6,
        "asymptotic profiles",
        passed,
        format!("ab ratio {:.8}, profile sup {sup:.2e}, degenerate sups {growing:.1e} / {constant:.1e}", ab.ratio),
    );
    assert!(passed);
}

#[test]
fn criterion_7_product_identities() {
    let spec = QuadratureSpec::default();
    let w = MonomialWeight::unweighted(1);
    let mut worst: f64 = 0.0;
    for p in [2.0, 3.0] {
        let gaussian = make_log_sobolev_extremal(p, 1.0, vec![0.0], &w, NormSpec::Euclidean).unwrap();
        let raw = FnField::new(1, |x| (1.0 + 0.5 * x[0].sin()) * (-x[0] * x[0] / 1.3).exp());
        let scale = sharp_logsobolev::functionals::mass(&raw, p, &w, &spec).unwrap().powf(-1.0 / p);
        let other = FnField::new(1, move |x| scale * (1.0 + 0.5 * x[0].sin()) * (-x[0] * x[0] / 1.3).exp());
        for f in [&gaussian as &dyn ScalarField, &other as &dyn ScalarField] {
            for t in [p, 1.0] {
                let r = verify_product_identities(f, 2, t, p, &w, &NormSpec::Euclidean, &spec).unwrap();
                worst = worst.max(r.max_residual());
            }
        }
    }
    let passed = worst <= 1e-6;
    report(7, "product identities", passed, format!("max residual {worst:.2e}"));
    assert!(passed);
}

#[test]
fn criterion_8_sobolev_extremals() {
    let spec = QuadratureSpec::default();
    let mut passed = true;
    let mut details = Vec::new();
    for a in [vec![0.0, 0.0, 0.0], vec![2.0]] {
        let w = weight(&a);
        let c = sharp_sobolev_constant(2.0, &w).unwrap();
        let center = vec![0.0; w.dim()];
        let talenti = make_talenti(2.0, &w, 1.0, center.clone(), 1.0).unwrap();
        let (gaussian, _) = StretchedExponential::normalized(2.0, 2.0, 1.0, center, &w, NormSpec::Euclidean).unwrap();
        let (t, g) = if w.dim() == 1 {
            (sobolev_ratio(&talenti, 2.0, &w, &spec).unwrap(), sobolev_ratio(&gaussian, 2.0, &w, &spec).unwrap())
        } else {
            (sobolev_ratio_radial(&talenti, 2.0, &w, &spec).unwrap(), sobolev_ratio_radial(&gaussian, 2.0, &w, &spec).unwrap())
        };
        passed &= (t - c).abs() <= 1e-5 && g < c - 1e-5;
        details.push(format!("A = {a:?}: C = {c:.10}, Talenti {t:.10}, Gaussian {g:.10}"));
    }
    report(8, "sharp Sobolev extremals", passed, details.join("; "));
    assert!(passed);
}
