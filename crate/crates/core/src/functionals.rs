//! Mass, entropy and gradient energy of a field against `x^A dx`, and the
//! log-Sobolev deficit built from them.
//!
//! The deficit is right side minus left side of the inequality
//!
//! ```text
//! ∫|f|^p ln|f|^p x^A dx  ≤  (D/p) ln( 𝓛_p ∫‖∇f‖_*^p x^A dx )
//! ```
//!
//! for unit-mass `f`, so it is nonnegative for every admissible field and
//! vanishes on extremals. [`deficit`] rescales its input to unit mass first:
//! with `M = ∫|f|^p`, the normalized entropy is `Ent(f)/M − ln M` and the
//! normalized energy is `E(f)/M`.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::monomial::{ln_log_sobolev_constant, ln_weighted_ball_measure, sharp_ls_constant_for_norm, sharp_sobolev_constant, MonomialWeight};
use crate::norms::NormSpec;
use crate::quadrature::{integrate_components, integrate_half_line, FnField, Integrals, QuadratureSpec, RadialField, ScalarField};

/// Below this magnitude a sample contributes nothing to any integral.
pub const ENTROPY_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeficitReport {
    pub p: f64,
    pub mass: f64,
    pub entropy: f64,
    pub energy: f64,
    pub deficit: f64,
    pub quadrature_err: f64,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub descriptor: serde_json::Value,
}

impl DeficitReport {
    pub fn with_descriptor(mut self, descriptor: serde_json::Value) -> Self {
        self.descriptor = descriptor;
        self
    }
}

fn check_p(p: f64) -> Result<()> {
    if p.is_finite() && p >= 1.0 {
        Ok(())
    } else {
        Err(domain(format!("exponent p must satisfy p >= 1, got {p}")))
    }
}

fn check_dims(f: &dyn ScalarField, w: &MonomialWeight, norm: Option<&NormSpec>) -> Result<()> {
    if f.dim() != w.dim() {
        return Err(Error::DimensionMismatch { expected: w.dim(), got: f.dim() });
    }
    if let Some(d) = norm.and_then(NormSpec::fixed_dim) {
        if d != w.dim() {
            return Err(Error::DimensionMismatch { expected: w.dim(), got: d });
        }
    }
    Ok(())
}

fn breakpoints(f: &dyn ScalarField) -> Vec<Vec<f64>> {
    (0..f.dim()).map(|i| f.breakpoints(i)).collect()
}

/// Breakpoints for integrands containing `‖∇f‖^p`.
///
/// Unless `p` is an even integer, `|f'|^p` has a kink wherever `f'` vanishes.
/// On the line those kinks limit the tensor rules to algebraic convergence,
/// so the critical points are located by a sign scan plus bisection and
/// added. In higher dimensions the singular set is generically isolated
/// points and needs no treatment.
fn energy_breakpoints(f: &dyn ScalarField, p: f64, w: &MonomialWeight) -> Vec<Vec<f64>> {
    let mut points = breakpoints(f);
    let even = p.fract() == 0.0 && (p as i64) % 2 == 0;
    if f.dim() != 1 || even {
        return points;
    }
    const SCAN_RADIUS: f64 = 12.0;
    const SCAN_STEPS: usize = 4800;
    let lo = if w.is_weighted_axis(0) { 0.0 } else { -SCAN_RADIUS };
    let step = (SCAN_RADIUS - lo) / SCAN_STEPS as f64;
    let slope = |x: f64| f.gradient(&[x])[0];
    let mut left = lo + 0.5 * step;
    let mut g_left = slope(left);
    for k in 1..SCAN_STEPS {
        let right = lo + (k as f64 + 0.5) * step;
        let g_right = slope(right);
        if g_left == 0.0 {
            points[0].push(left);
        } else if g_left.signum() != g_right.signum() && g_right != 0.0 {
            let (mut a, mut b, mut ga) = (left, right, g_left);
            for _ in 0..60 {
                let mid = 0.5 * (a + b);
                let gm = slope(mid);
                if gm.signum() == ga.signum() {
                    a = mid;
                    ga = gm;
                } else {
                    b = mid;
                }
            }
            points[0].push(0.5 * (a + b));
        }
        left = right;
        g_left = g_right;
    }
    points
}

/// `(|f|^p, |f|^p ln|f|^p)` at one sample, with `0 ln 0 = 0`.
fn mass_and_entropy_density(value: f64, p: f64) -> (f64, f64) {
    let a = value.abs();
    if a < ENTROPY_FLOOR {
        return (0.0, 0.0);
    }
    let ln_fp = p * a.ln();
    let fp = ln_fp.exp();
    (fp, fp * ln_fp)
}

/// Mass, entropy and energy integrals of the raw field in one pass.
fn raw_integrals(f: &dyn ScalarField, p: f64, w: &MonomialWeight, norm: &NormSpec, spec: &QuadratureSpec) -> Result<Integrals<3>> {
    norm.validate()?;
    check_dims(f, w, Some(norm))?;
    integrate_components(w, spec, &energy_breakpoints(f, p, w), |x| {
        let (fp, ent) = mass_and_entropy_density(f.value(x), p);
        let grad = f.gradient(x);
        let energy = norm.dual_unchecked(&grad).powf(p);
        [fp, ent, energy]
    })
}

/// `∫|f|^p x^A dx`.
pub fn mass(f: &dyn ScalarField, p: f64, w: &MonomialWeight, spec: &QuadratureSpec) -> Result<f64> {
    check_p(p)?;
    check_dims(f, w, None)?;
    let m = integrate_components(w, spec, &breakpoints(f), |x| [mass_and_entropy_density(f.value(x), p).0])?;
    if m.values[0] > 0.0 {
        Ok(m.values[0])
    } else {
        Err(Error::ZeroMass)
    }
}

/// `∫|f|^p ln|f|^p x^A dx` of the field as given; callers normalize first.
pub fn entropy(f: &dyn ScalarField, p: f64, w: &MonomialWeight, spec: &QuadratureSpec) -> Result<f64> {
    check_p(p)?;
    check_dims(f, w, None)?;
    let e = integrate_components(w, spec, &breakpoints(f), |x| [mass_and_entropy_density(f.value(x), p).1])?;
    Ok(e.values[0])
}

/// `∫‖∇f‖_*^p x^A dx`.
pub fn energy(f: &dyn ScalarField, p: f64, w: &MonomialWeight, norm: &NormSpec, spec: &QuadratureSpec) -> Result<f64> {
    check_p(p)?;
    norm.validate()?;
    check_dims(f, w, Some(norm))?;
    let e = integrate_components(w, spec, &energy_breakpoints(f, p, w), |x| [norm.dual_unchecked(&f.gradient(x)).powf(p)])?;
    Ok(e.values[0])
}

/// The log-Sobolev deficit of `f` after rescaling to unit mass.
pub fn deficit(f: &dyn ScalarField, p: f64, w: &MonomialWeight, norm: &NormSpec, spec: &QuadratureSpec) -> Result<DeficitReport> {
    if !(p.is_finite() && p > 1.0) {
        return Err(domain(format!("the deficit needs p > 1, got {p}")));
    }
    let constant = sharp_ls_constant_for_norm(p, w, norm)?;
    let raw = raw_integrals(f, p, w, norm, spec)?;
    assemble_report(p, w.homogeneous_dim(), constant, raw)
}

/// Radial integrals `P ∫₀^∞ φ(g(r), g'(r)) r^{D−1} dr` for `K` integrands
/// `φ`, with `P = D m(B_A)` for the field's norm.
fn radial_integrals<const K: usize>(
    f: &dyn RadialField,
    w: &MonomialWeight,
    spec: &QuadratureSpec,
    phi: impl Fn(f64, f64) -> [f64; K] + Sync,
) -> Result<(f64, Integrals<K>)> {
    check_dims(f, w, Some(f.radial_norm()))?;
    w.check_center(f.center())?;
    let ln_m = ln_weighted_ball_measure(f.radial_norm(), w)?;
    let d = w.homogeneous_dim();
    let perimeter = d * ln_m.exp();
    let mut values = [0.0; K];
    let mut errs = [0.0; K];
    for k in 0..K {
        let part = integrate_half_line(|r| phi(f.profile(r), f.profile_derivative(r))[k], d - 1.0, &[], spec)?;
        values[k] = perimeter * part.value;
        errs[k] = perimeter * part.err;
    }
    Ok((ln_m, Integrals { values, errs }))
}

/// [`deficit`] for a radial field, through the polar decomposition.
pub fn deficit_radial(f: &dyn RadialField, p: f64, w: &MonomialWeight, spec: &QuadratureSpec) -> Result<DeficitReport> {
    if !(p.is_finite() && p > 1.0) {
        return Err(domain(format!("the deficit needs p > 1, got {p}")));
    }
    let (ln_m, raw) = radial_integrals(f, w, spec, |g, dg| {
        let (fp, ent) = mass_and_entropy_density(g, p);
        [fp, ent, dg.abs().powf(p)]
    })?;
    let d = w.homogeneous_dim();
    let ln_constant = ln_log_sobolev_constant(p, d, ln_m)?;
    assemble_report(p, d, ln_constant.exp(), raw)
}

fn assemble_report(p: f64, d: f64, constant: f64, raw: Integrals<3>) -> Result<DeficitReport> {
    let [m, ent_raw, e_raw] = raw.values;
    let [dm, dent, de] = raw.errs;
    if !(m > 0.0) {
        return Err(Error::ZeroMass);
    }
    let entropy = ent_raw / m - m.ln();
    let energy = e_raw / m;
    if !(energy > 0.0) {
        return Err(domain("the field has zero gradient energy"));
    }
    let deficit = (d / p) * (constant * energy).ln() - entropy;
    let rel_m = dm / m;
    let quadrature_err = (d / p) * (de / e_raw.abs() + rel_m) + dent / m + (ent_raw / m).abs() * rel_m + rel_m;
    Ok(DeficitReport { p, mass: m, entropy, energy, deficit, quadrature_err, descriptor: serde_json::Value::Null })
}

/// [`sobolev_ratio`] for a Euclidean-radial field.
pub fn sobolev_ratio_radial(f: &dyn RadialField, p: f64, w: &MonomialWeight, spec: &QuadratureSpec) -> Result<f64> {
    check_p(p)?;
    let d = w.homogeneous_dim();
    if !(p < d) {
        return Err(crate::error::regime(format!("the Sobolev ratio needs p < D, got p = {p}, D = {d}")));
    }
    if !f.radial_norm().is_euclidean() {
        return Err(domain("the Sobolev ratio is defined with the Euclidean norm"));
    }
    let p_star = d * p / (d - p);
    let (_, raw) = radial_integrals(f, w, spec, |g, dg| {
        let a = g.abs();
        [if a < ENTROPY_FLOOR { 0.0 } else { a.powf(p_star) }, dg.abs().powf(p)]
    })?;
    let [lp, grad] = raw.values;
    if !(lp > 0.0) {
        return Err(Error::ZeroMass);
    }
    Ok(lp.powf(1.0 / p_star) / grad.powf(1.0 / p))
}

/// `‖f‖_{p*,A} / ‖∇f‖_{p,A}` with the Euclidean gradient, `p* = Dp/(D−p)`.
pub fn sobolev_ratio(f: &dyn ScalarField, p: f64, w: &MonomialWeight, spec: &QuadratureSpec) -> Result<f64> {
    check_p(p)?;
    let d = w.homogeneous_dim();
    if !(p < d) {
        return Err(crate::error::regime(format!("the Sobolev ratio needs p < D, got p = {p}, D = {d}")));
    }
    check_dims(f, w, None)?;
    let p_star = d * p / (d - p);
    let euclid = NormSpec::Euclidean;
    let result = integrate_components(w, spec, &energy_breakpoints(f, p, w), |x| {
        let a = f.value(x).abs();
        let lp = if a < ENTROPY_FLOOR { 0.0 } else { a.powf(p_star) };
        [lp, euclid.dual_unchecked(&f.gradient(x)).powf(p)]
    })?;
    let [lp, grad] = result.values;
    if !(lp > 0.0) {
        return Err(Error::ZeroMass);
    }
    Ok(lp.powf(1.0 / p_star) / grad.powf(1.0 / p))
}

/// `ratio / C_{p,n,A}`, at most one up to quadrature error.
pub fn sobolev_ratio_normalized(f: &dyn ScalarField, p: f64, w: &MonomialWeight, spec: &QuadratureSpec) -> Result<f64> {
    Ok(sobolev_ratio(f, p, w, spec)? / sharp_sobolev_constant(p, w)?)
}

/// One member of the randomized test suite on ℝⁿ_A: a Gaussian mixture,
/// a tilted Gaussian, or a positive polynomial times a Gaussian.
pub fn random_test_field<R: Rng + ?Sized>(rng: &mut R, w: &MonomialWeight) -> (String, FnField) {
    let n = w.dim();
    let point = |rng: &mut R| -> Vec<f64> {
        (0..n)
            .map(|i| if w.is_weighted_axis(i) { rng.gen_range(0.0..1.5) } else { rng.gen_range(-1.5..1.5) })
            .collect()
    };
    let sq = |x: &[f64], c: &[f64]| -> f64 { x.iter().zip(c).map(|(a, b)| (a - b) * (a - b)).sum() };
    match rng.gen_range(0..3) {
        0 => {
            let count = rng.gen_range(2..=3);
            let comps: Vec<(f64, Vec<f64>, f64)> =
                (0..count).map(|_| (rng.gen_range(0.2..1.0), point(rng), rng.gen_range(0.3..2.5))).collect();
            let label = format!("gaussian_mixture({count})");
            (label, FnField::new(n, move |x| comps.iter().map(|(c, mu, s)| c * (-sq(x, mu) / s).exp()).sum()))
        }
        1 => {
            let mu = point(rng);
            let s = rng.gen_range(0.4..2.0);
            let tilt: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let eps = rng.gen_range(0.1..0.8);
            let field = FnField::new(n, move |x| {
                let t: f64 = x.iter().zip(&tilt).map(|(a, b)| a * b).sum();
                (1.0 + eps * t.tanh()) * (-sq(x, &mu) / s).exp()
            });
            ("tilted_gaussian".to_owned(), field)
        }
        _ => {
            let mu = point(rng);
            let s = rng.gen_range(0.4..2.0);
            let lin: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let quad = rng.gen_range(0.0..1.0);
            let field = FnField::new(n, move |x| {
                let poly = 1.0 + x.iter().zip(&lin).map(|(a, b)| a * b).sum::<f64>() + quad * sq(x, &vec![0.0; x.len()]);
                (poly * poly + 0.1) * (-sq(x, &mu) / s).exp()
            });
            ("polynomial_gaussian".to_owned(), field)
        }
    }
}

/// Quadrature tolerance for the randomized suite. For `p < 2` the energy
/// density `‖∇f‖^p` is singular at interior critical points, where the
/// tensor rules converge only algebraically in two or more dimensions.
pub const SUITE_REL_TOL: f64 = 1e-7;

/// Deficits of `count` seeded random fields, in generation order.
pub fn nonnegativity_suite(
    p: f64,
    w: &MonomialWeight,
    norm: &NormSpec,
    count: usize,
    seed: u64,
    spec: &QuadratureSpec,
) -> Result<Vec<DeficitReport>> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let fields: Vec<(String, FnField)> = (0..count).map(|_| random_test_field(&mut rng, w)).collect();
    fields
        .par_iter()
        .map(|(label, f)| Ok(deficit(f, p, w, norm, spec)?.with_descriptor(serde_json::json!({ "family": label }))))
        .collect()
}
