//! Derivative-free search for deficit minimizers over parametric families.
//!
//! Each evaluation builds a field from the parameter vector and computes its
//! self-normalized deficit, so the search is unconstrained apart from box
//! bounds. Centers are projected onto the admissible set before use, which
//! makes weighted center components flat directions rather than walls.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::extremals::{make_log_sobolev_extremal, StretchedExponential};
use crate::functionals::{deficit, mass};
use crate::monomial::MonomialWeight;
use crate::norms::{conjugate_exponent, NormSpec};
use crate::quadrature::{integrate_components, QuadratureSpec, RadialField, ScalarField};

/// Ratio between consecutive spline knots.
pub const KNOT_RATIO: f64 = 1.5;
/// Steepest-descent floor for the spline's log-profile beyond the last knot.
pub const TAIL_MIN_SLOPE: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyKind {
    /// `θ = (q, σ, x₀)`: `exp(−‖x − x₀‖^q / σ)`.
    StretchedExponential,
    /// `θ = (v₁, …, v_K, x₀)`: `exp S(|x − x₀|²)`, `S` piecewise linear with
    /// `S(0) = 0` and `S(r_k²) = v_k`.
    RadialSpline { knots: Vec<f64> },
}

/// A parametric family with box bounds on every parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileFamily {
    pub kind: FamilyKind,
    pub dim: usize,
    pub bounds: Vec<(f64, f64)>,
    pub start: Vec<f64>,
}

impl ProfileFamily {
    /// Stretched exponentials starting from `(q0, σ0, 0)`.
    pub fn stretched_exponential(dim: usize, q0: f64, sigma0: f64) -> Result<Self> {
        let mut bounds = vec![(1.05, 8.0), (0.02, 50.0)];
        bounds.extend(std::iter::repeat((-2.0, 2.0)).take(dim));
        let mut start = vec![q0, sigma0];
        start.extend(std::iter::repeat(0.0).take(dim));
        let family = Self { kind: FamilyKind::StretchedExponential, dim, bounds, start };
        family.validate()?;
        Ok(family)
    }

    /// Radial splines on `count` geometric knots ending at `radius`, starting
    /// from the log-values of `exp(−r)`.
    pub fn radial_spline(dim: usize, count: usize, radius: f64) -> Result<Self> {
        if count < 2 {
            return Err(domain("a spline needs at least two knots"));
        }
        if !(radius.is_finite() && radius > 0.0) {
            return Err(domain("the spline radius must be positive"));
        }
        let knots: Vec<f64> = (0..count).map(|k| radius * KNOT_RATIO.powi(k as i32 + 1 - count as i32)).collect();
        let mut bounds = vec![(-80.0, 5.0); count];
        bounds.extend(std::iter::repeat((-2.0, 2.0)).take(dim));
        let mut start: Vec<f64> = knots.iter().map(|r| -r).collect();
        start.extend(std::iter::repeat(0.0).take(dim));
        let family = Self { kind: FamilyKind::RadialSpline { knots }, dim, bounds, start };
        family.validate()?;
        Ok(family)
    }

    pub fn param_count(&self) -> usize {
        self.bounds.len()
    }

    /// Center components of `θ`, before projection.
    pub fn raw_center<'t>(&self, theta: &'t [f64]) -> &'t [f64] {
        &theta[theta.len() - self.dim..]
    }

    pub fn validate(&self) -> Result<()> {
        let shape = match &self.kind {
            FamilyKind::StretchedExponential => 2,
            FamilyKind::RadialSpline { knots } => {
                if knots.windows(2).any(|k| !(k[0] > 0.0 && k[1] > k[0])) {
                    return Err(domain("spline knots must be positive and increasing"));
                }
                knots.len()
            }
        };
        if self.bounds.len() != shape + self.dim || self.start.len() != self.bounds.len() {
            return Err(Error::DimensionMismatch { expected: shape + self.dim, got: self.bounds.len().min(self.start.len()) });
        }
        for (i, ((lo, hi), x)) in self.bounds.iter().zip(&self.start).enumerate() {
            if !(lo < hi) || !(lo <= x && x <= hi) {
                return Err(domain(format!("parameter {i}: start {x} outside bounds [{lo}, {hi}]")));
            }
        }
        if let FamilyKind::StretchedExponential = self.kind {
            if self.bounds[0].0 <= 1.0 || self.bounds[1].0 <= 0.0 {
                return Err(domain("bounds must keep q > 1 and σ > 0"));
            }
        }
        Ok(())
    }

    /// The field for `θ`, with its center projected to admissibility.
    pub fn build(&self, theta: &[f64], p: f64, w: &MonomialWeight, norm: &NormSpec) -> Result<Box<dyn RadialField>> {
        if theta.len() != self.param_count() {
            return Err(Error::DimensionMismatch { expected: self.param_count(), got: theta.len() });
        }
        if w.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: w.dim() });
        }
        let center = w.project_center(self.raw_center(theta));
        match &self.kind {
            FamilyKind::StretchedExponential => {
                let (f, _) = StretchedExponential::normalized(p, theta[0], theta[1], center, w, norm.clone())?;
                Ok(Box::new(f))
            }
            FamilyKind::RadialSpline { knots } => Ok(Box::new(RadialSplineField::new(knots.clone(), theta[..knots.len()].to_vec(), center)?)),
        }
    }
}

/// `exp S(|x − x₀|²)` with `S` piecewise linear in `s = r²`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSplineField {
    squares: Vec<f64>,
    values: Vec<f64>,
    tail_slope: f64,
    center: Vec<f64>,
    knots: Vec<f64>,
    norm: NormSpec,
}

impl RadialSplineField {
    pub fn new(knots: Vec<f64>, log_values: Vec<f64>, center: Vec<f64>) -> Result<Self> {
        if knots.len() != log_values.len() || knots.is_empty() {
            return Err(Error::DimensionMismatch { expected: knots.len(), got: log_values.len() });
        }
        if log_values.iter().any(|v| !v.is_finite()) {
            return Err(domain("spline log-values must be finite"));
        }
        let mut squares = vec![0.0];
        squares.extend(knots.iter().map(|r| r * r));
        let mut values = vec![0.0];
        values.extend(log_values);
        let n = squares.len();
        let last = (values[n - 1] - values[n - 2]) / (squares[n - 1] - squares[n - 2]);
        Ok(Self { squares, values, tail_slope: last.min(-TAIL_MIN_SLOPE), center, knots, norm: NormSpec::Euclidean })
    }

    /// `(S(s), S'(s))`.
    fn log_profile(&self, s: f64) -> (f64, f64) {
        let n = self.squares.len();
        if s >= self.squares[n - 1] {
            return (self.values[n - 1] + self.tail_slope * (s - self.squares[n - 1]), self.tail_slope);
        }
        let k = self.squares.partition_point(|&q| q <= s).clamp(1, n - 1);
        let slope = (self.values[k] - self.values[k - 1]) / (self.squares[k] - self.squares[k - 1]);
        (self.values[k - 1] + slope * (s - self.squares[k - 1]), slope)
    }

    fn offset(&self, x: &[f64]) -> Vec<f64> {
        x.iter().zip(&self.center).map(|(a, c)| a - c).collect()
    }
}

impl ScalarField for RadialSplineField {
    fn dim(&self) -> usize {
        self.center.len()
    }

    fn value(&self, x: &[f64]) -> f64 {
        let s: f64 = self.offset(x).iter().map(|y| y * y).sum();
        self.log_profile(s).0.exp()
    }

    fn analytic_gradient(&self, x: &[f64]) -> Option<Vec<f64>> {
        let y = self.offset(x);
        let s: f64 = y.iter().map(|v| v * v).sum();
        let (value, slope) = self.log_profile(s);
        let coeff = 2.0 * slope * value.exp();
        Some(y.into_iter().map(|v| coeff * v).collect())
    }

    fn breakpoints(&self, axis: usize) -> Vec<f64> {
        let c = self.center[axis];
        let mut out = vec![c];
        for r in &self.knots {
            out.push(c - r);
            out.push(c + r);
        }
        out
    }
}

impl RadialField for RadialSplineField {
    fn radial_norm(&self) -> &NormSpec {
        &self.norm
    }

    fn center(&self) -> &[f64] {
        &self.center
    }

    fn profile(&self, r: f64) -> f64 {
        self.log_profile(r * r).0.exp()
    }

    fn profile_derivative(&self, r: f64) -> f64 {
        let (value, slope) = self.log_profile(r * r);
        2.0 * r * slope * value.exp()
    }
}

/// Result of one simplex run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexOutcome {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Best value after each iteration.
    pub best_history: Vec<f64>,
}

/// Nelder–Mead on a box: trial points are clamped into `bounds`.
///
/// Converges when every vertex lies within `tol` (max-norm) of the best one.
pub fn nelder_mead(
    mut f: impl FnMut(&[f64]) -> f64,
    start: &[f64],
    steps: &[f64],
    bounds: &[(f64, f64)],
    max_iters: usize,
    tol: f64,
) -> SimplexOutcome {
    let n = start.len();
    let clamp = |x: &mut Vec<f64>| {
        for (v, (lo, hi)) in x.iter_mut().zip(bounds) {
            *v = v.clamp(*lo, *hi);
        }
    };
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    simplex.push(start.to_vec());
    for i in 0..n {
        let mut v = start.to_vec();
        v[i] += steps[i];
        if v[i] > bounds[i].1 {
            v[i] = start[i] - steps[i];
        }
        clamp(&mut v);
        simplex.push(v);
    }
    let mut values: Vec<f64> = simplex.iter().map(|v| f(v)).collect();
    let mut history = Vec::new();
    let diameter = |s: &[Vec<f64>]| {
        s[1..].iter().map(|v| v.iter().zip(&s[0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)).fold(0.0, f64::max)
    };
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iters {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();
        if diameter(&simplex) < tol {
            converged = true;
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> = (0..n).map(|j| simplex[..n].iter().map(|v| v[j]).sum::<f64>() / n as f64).collect();
        let along = |t: f64| {
            let mut x: Vec<f64> = centroid.iter().zip(&simplex[n]).map(|(c, w)| c + t * (c - w)).collect();
            clamp(&mut x);
            x
        };
        let reflected = along(1.0);
        let f_r = f(&reflected);
        if f_r < values[0] {
            let expanded = along(2.0);
            let f_e = f(&expanded);
            if f_e < f_r {
                simplex[n] = expanded;
                values[n] = f_e;
            } else {
                simplex[n] = reflected;
                values[n] = f_r;
            }
        } else if f_r < values[n - 1] {
            simplex[n] = reflected;
            values[n] = f_r;
        } else {
            let (contracted, f_c) = if f_r < values[n] {
                let x = along(0.5);
                let fx = f(&x);
                (x, fx)
            } else {
                let x = along(-0.5);
                let fx = f(&x);
                (x, fx)
            };
            if f_c < values[n].min(f_r) {
                simplex[n] = contracted;
                values[n] = f_c;
            } else {
                for i in 1..=n {
                    let shrunk: Vec<f64> = simplex[0].iter().zip(&simplex[i]).map(|(b, v)| b + 0.5 * (v - b)).collect();
                    values[i] = f(&shrunk);
                    simplex[i] = shrunk;
                }
            }
        }
        history.push(values.iter().copied().fold(f64::INFINITY, f64::min));
    }
    let best = (0..=n).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap_or(0);
    SimplexOutcome { x: simplex[best].clone(), value: values[best], iterations, converged, best_history: history }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MinimizeOptions {
    pub max_iters: usize,
    pub tol: f64,
    /// Random restarts in addition to the family's start.
    pub restarts: usize,
    pub seed: u64,
    pub quadrature: QuadratureSpec,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self { max_iters: 2000, tol: 1e-8, restarts: 4, seed: 0, quadrature: QuadratureSpec::default() }
    }
}

/// One simplex run, from its starting point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RestartSummary {
    pub start: Vec<f64>,
    pub theta_star: Vec<f64>,
    pub deficit_star: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimizeResult {
    pub theta_star: Vec<f64>,
    pub deficit_star: f64,
    pub iterations: usize,
    pub converged: bool,
    /// `L²(x^A)` distance from the unit-mass minimizer to the nearest
    /// unit-mass extremal with the same center.
    pub distance_to_extremal: f64,
    pub best_fit_sigma: f64,
    /// False for a non-Euclidean norm with a nonzero weight, where the
    /// equality cases are not characterized.
    pub characterization_known: bool,
    pub restarts: Vec<RestartSummary>,
}

/// Self-normalized deficit of the family member `θ`.
pub fn family_deficit(family: &ProfileFamily, theta: &[f64], p: f64, w: &MonomialWeight, norm: &NormSpec, spec: &QuadratureSpec) -> Result<f64> {
    let f = family.build(theta, p, w, norm)?;
    Ok(deficit(f.as_ref(), p, w, norm, spec)?.deficit)
}

fn random_start(family: &ProfileFamily, rng: &mut ChaCha8Rng) -> Vec<f64> {
    family
        .bounds
        .iter()
        .zip(&family.start)
        .map(|((lo, hi), s)| {
            // sample around the family start, inside the middle of the box
            let half = 0.25 * (hi - lo);
            (s + rng.gen_range(-half..=half)).clamp(*lo, *hi)
        })
        .collect()
}

fn simplex_steps(family: &ProfileFamily) -> Vec<f64> {
    family.bounds.iter().map(|(lo, hi)| (0.05 * (hi - lo)).min(0.5)).collect()
}

/// Nelder–Mead over the family from its start and `opts.restarts` seeded
/// random starts; reports the best run.
pub fn minimize_deficit(family: &ProfileFamily, p: f64, w: &MonomialWeight, norm: &NormSpec, opts: &MinimizeOptions) -> Result<MinimizeResult> {
    if !(p.is_finite() && p > 1.0) {
        return Err(domain(format!("p must exceed 1, got {p}")));
    }
    family.validate()?;
    norm.validate()?;
    opts.quadrature.validate()?;
    family_deficit(family, &family.start, p, w, norm, &opts.quadrature)?;

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut starts = vec![family.start.clone()];
    starts.extend((0..opts.restarts).map(|_| random_start(family, &mut rng)));
    let steps = simplex_steps(family);
    let runs: Vec<(Vec<f64>, SimplexOutcome)> = starts
        .into_par_iter()
        .map(|start| {
            let objective = |theta: &[f64]| family_deficit(family, theta, p, w, norm, &opts.quadrature).unwrap_or(f64::INFINITY);
            let outcome = nelder_mead(objective, &start, &steps, &family.bounds, opts.max_iters, opts.tol);
            (start, outcome)
        })
        .collect();
    let best = runs
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.1.value.total_cmp(&b.1.value))
        .map(|(i, _)| i)
        .expect("at least one run");
    let outcome = &runs[best].1;
    if !outcome.value.is_finite() {
        return Err(domain("every family evaluation failed"));
    }
    let (distance, sigma) = distance_to_extremal(family, &outcome.x, p, w, norm, &opts.quadrature)?;
    Ok(MinimizeResult {
        theta_star: outcome.x.clone(),
        deficit_star: outcome.value,
        iterations: outcome.iterations,
        converged: outcome.converged,
        distance_to_extremal: distance,
        best_fit_sigma: sigma,
        characterization_known: norm.is_euclidean() || w.is_unweighted(),
        restarts: runs
            .into_iter()
            .map(|(start, o)| RestartSummary { start, theta_star: o.x, deficit_star: o.value, iterations: o.iterations, converged: o.converged })
            .collect(),
    })
}

/// `‖f/‖f‖_p − g_σ‖_{L²(x^A)}` for the unit-mass extremal `g_σ` centered
/// where `f` is.
pub fn l2_distance_to_extremal(f: &dyn ScalarField, center: &[f64], sigma: f64, p: f64, w: &MonomialWeight, norm: &NormSpec, spec: &QuadratureSpec) -> Result<f64> {
    let scale = mass(f, p, w, spec)?.powf(-1.0 / p);
    let g = make_log_sobolev_extremal(p, sigma, center.to_vec(), w, norm.clone())?;
    let breaks: Vec<Vec<f64>> = (0..f.dim())
        .map(|i| {
            let mut b = f.breakpoints(i);
            b.extend(g.breakpoints(i));
            b
        })
        .collect();
    // expanded so each piece converges relative to its own size; the
    // cancellation floor is far below any distance of interest
    let parts = integrate_components(w, spec, &breaks, |x| {
        let (a, b) = (scale * f.value(x), g.value(x));
        [a * a, b * b, a * b]
    })?;
    let [ff, gg, fg] = parts.values;
    Ok((ff + gg - 2.0 * fg).max(0.0).sqrt())
}

/// The best-fit extremal scale for the member `θ`, by a log-grid scan over
/// `σ` refined with golden-section search. Returns `(distance, σ)`.
pub fn distance_to_extremal(family: &ProfileFamily, theta: &[f64], p: f64, w: &MonomialWeight, norm: &NormSpec, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    let f = family.build(theta, p, w, norm)?;
    let center = w.project_center(family.raw_center(theta));
    let dist = |ln_sigma: f64| l2_distance_to_extremal(f.as_ref(), &center, ln_sigma.exp(), p, w, norm, spec).unwrap_or(f64::INFINITY);
    let (lo, hi, count) = (-8.0f64, 8.0f64, 65);
    let step = (hi - lo) / (count - 1) as f64;
    let grid: Vec<f64> = (0..count).map(|k| dist(lo + k as f64 * step)).collect();
    let k = (0..count).min_by(|&a, &b| grid[a].total_cmp(&grid[b])).unwrap_or(0);
    let (mut a, mut b) = (lo + (k.max(1) - 1) as f64 * step, lo + (k + 1).min(count - 1) as f64 * step);
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let (mut fc, mut fd) = (dist(c), dist(d));
    while b - a > 1e-7 {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = dist(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = dist(d);
        }
    }
    let ln_sigma = 0.5 * (a + b);
    let best = dist(ln_sigma);
    if !best.is_finite() {
        return Err(domain("no extremal could be fitted"));
    }
    Ok((best, ln_sigma.exp()))
}

/// One landscape cell; failures are recorded, not propagated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LandscapeCell {
    pub theta: Vec<f64>,
    pub deficit: Option<f64>,
    pub error: Option<String>,
}

/// Deficits over a list of parameter vectors, evaluated concurrently and
/// returned in input order.
pub fn deficit_landscape(family: &ProfileFamily, p: f64, w: &MonomialWeight, norm: &NormSpec, grid: &[Vec<f64>], spec: &QuadratureSpec) -> Result<Vec<LandscapeCell>> {
    for theta in grid {
        if theta.len() != family.param_count() {
            return Err(Error::DimensionMismatch { expected: family.param_count(), got: theta.len() });
        }
        for (i, (v, (lo, hi))) in theta.iter().zip(&family.bounds).enumerate() {
            if !(lo <= v && v <= hi) {
                return Err(domain(format!("grid value {v} for parameter {i} outside [{lo}, {hi}]")));
            }
        }
    }
    Ok(grid
        .par_iter()
        .map(|theta| match family_deficit(family, theta, p, w, norm, spec) {
            Ok(d) => LandscapeCell { theta: theta.clone(), deficit: Some(d), error: None },
            Err(e) => LandscapeCell { theta: theta.clone(), deficit: None, error: Some(e.to_string()) },
        })
        .collect())
}

/// Parameter vectors varying component `index` of `base` over `values`.
pub fn slice_grid(base: &[f64], index: usize, values: &[f64]) -> Vec<Vec<f64>> {
    values
        .iter()
        .map(|&v| {
            let mut theta = base.to_vec();
            theta[index] = v;
            theta
        })
        .collect()
}

/// Writes cells as CSV with columns `theta_0, …, deficit, error`.
pub fn write_landscape_csv<W: Write>(cells: &[LandscapeCell], out: W) -> Result<()> {
    let csv_err = |e: csv::Error| Error::Config(format!("csv: {e}"));
    let mut writer = csv::Writer::from_writer(out);
    let width = cells.first().map_or(0, |c| c.theta.len());
    let mut header: Vec<String> = (0..width).map(|i| format!("theta_{i}")).collect();
    header.extend(["deficit".to_string(), "error".to_string()]);
    writer.write_record(&header).map_err(csv_err)?;
    for cell in cells {
        let mut record: Vec<String> = cell.theta.iter().map(|v| v.to_string()).collect();
        record.push(cell.deficit.map(|d| d.to_string()).unwrap_or_default());
        record.push(cell.error.clone().unwrap_or_default());
        writer.write_record(&record).map_err(csv_err)?;
    }
    writer.flush().map_err(|e| Error::Config(format!("csv: {e}")))?;
    Ok(())
}

/// `p'` for the stretched-exponential reference: the exponent of the
/// equality cases.
pub fn expected_exponent(p: f64) -> f64 {
    conjugate_exponent(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(a: &[f64]) -> MonomialWeight {
        MonomialWeight::new(a.to_vec()).unwrap()
    }

    fn rosenbrock(x: &[f64]) -> f64 {
        (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2)
    }

    #[test]
    fn nelder_mead_solves_rosenbrock() {
        let out = nelder_mead(rosenbrock, &[-1.2, 1.0], &[0.1, 0.1], &[(-5.0, 5.0), (-5.0, 5.0)], 5000, 1e-10);
        assert!(out.converged);
        assert!((out.x[0] - 1.0).abs() < 1e-6 && (out.x[1] - 1.0).abs() < 1e-6, "{:?}", out.x);
        assert!(out.best_history.windows(2).all(|h| h[1] <= h[0]));
    }

    #[test]
    fn nelder_mead_respects_bounds() {
        let out = nelder_mead(|x| (x[0] - 3.0).powi(2), &[0.0], &[0.5], &[(-1.0, 1.0)], 500, 1e-10);
        assert!((out.x[0] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn spline_profile_is_continuous_and_decaying() {
        let knots = vec![0.5, 1.0, 2.0];
        let f = RadialSplineField::new(knots, vec![-0.25, -1.0, -4.0], vec![0.0]).unwrap();
        assert!((f.value(&[0.0]) - 1.0).abs() < 1e-15);
        for r in [0.5f64, 1.0, 2.0] {
            let below = f.value(&[r - 1e-12]);
            let above = f.value(&[r + 1e-12]);
            assert!((below - above).abs() < 1e-10);
        }
        // exp(−r²) reproduced exactly
        for r in [0.3f64, 1.5, 3.0] {
            assert!((f.value(&[r]) - (-r * r).exp()).abs() < 1e-14);
        }
        let fd = crate::quadrature::finite_difference_gradient(|x| f.value(x), &[0.7]);
        assert!((f.gradient(&[0.7])[0] - fd[0]).abs() < 1e-7);
        assert!((f.profile_derivative(0.7) - fd[0]).abs() < 1e-7);
    }

    #[test]
    fn family_validation() {
        let fam = ProfileFamily::stretched_exponential(1, 3.5, 1.0).unwrap();
        assert_eq!(fam.param_count(), 3);
        assert!(ProfileFamily::stretched_exponential(1, 0.9, 1.0).is_err());
        let spline = ProfileFamily::radial_spline(1, 8, 4.0).unwrap();
        assert_eq!(spline.param_count(), 9);
        let FamilyKind::RadialSpline { knots } = &spline.kind else { panic!() };
        assert!((knots[7] - 4.0).abs() < 1e-15 && (knots[6] - 4.0 / 1.5).abs() < 1e-15);
        assert!(ProfileFamily::radial_spline(1, 1, 4.0).is_err());
    }

    #[test]
    fn extremal_member_has_zero_deficit_and_distance() {
        let fam = ProfileFamily::stretched_exponential(1, 2.0, 1.0).unwrap();
        let weight = w(&[2.0]);
        let spec = QuadratureSpec::default();
        let d = family_deficit(&fam, &[2.0, 0.7, 0.4], 2.0, &weight, &NormSpec::Euclidean, &spec).unwrap();
        assert!(d.abs() < 1e-9);
        let (dist, sigma) = distance_to_extremal(&fam, &[2.0, 0.7, 0.4], 2.0, &weight, &NormSpec::Euclidean, &spec).unwrap();
        assert!(dist < 1e-6 && (sigma / 0.7 - 1.0).abs() < 1e-4, "{dist} {sigma}");
        let off = family_deficit(&fam, &[3.0, 0.7, 0.0], 2.0, &weight, &NormSpec::Euclidean, &spec).unwrap();
        assert!(off > 1e-3);
    }

    #[test]
    fn recovers_conjugate_exponent() {
        let fam = ProfileFamily::stretched_exponential(1, 3.5, 1.0).unwrap();
        let opts = MinimizeOptions { restarts: 0, ..MinimizeOptions::default() };
        let r = minimize_deficit(&fam, 2.0, &w(&[0.0]), &NormSpec::Euclidean, &opts).unwrap();
        assert!((r.theta_star[0] / 2.0 - 1.0).abs() < 0.02, "{r:?}");
        assert!(r.deficit_star <= 1e-5 && r.deficit_star >= -1e-5);
        assert!(r.characterization_known);
    }

    #[test]
    fn landscape_over_q_has_interior_minimum() {
        let fam = ProfileFamily::stretched_exponential(1, 2.0, 1.0).unwrap();
        let qs: Vec<f64> = (0..13).map(|k| 1.25 + 0.125 * k as f64).collect();
        let grid = slice_grid(&[2.0, 1.0, 0.0], 0, &qs);
        let cells = deficit_landscape(&fam, 3.0, &w(&[0.0]), &NormSpec::Euclidean, &grid, &QuadratureSpec::default()).unwrap();
        let values: Vec<f64> = cells.iter().map(|c| c.deficit.unwrap()).collect();
        assert!(values.iter().all(|d| *d >= -1e-6));
        let k = (0..values.len()).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap();
        assert!((qs[k] - 1.5).abs() <= 0.125, "{values:?}");

        let flat = deficit_landscape(&fam, 2.0, &w(&[0.0]), &NormSpec::Euclidean, &slice_grid(&[2.0, 1.0, 0.0], 2, &[-1.0, 0.0, 1.5]), &QuadratureSpec::default()).unwrap();
        for cell in &flat {
            assert!(cell.deficit.unwrap().abs() < 1e-9);
        }
        let mut buf = Vec::new();
        write_landscape_csv(&cells, &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().starts_with("theta_0,theta_1,theta_2,deficit,error\n"));
    }

    #[test]
    fn landscape_rejects_out_of_bounds() {
        let fam = ProfileFamily::stretched_exponential(1, 2.0, 1.0).unwrap();
        assert!(deficit_landscape(&fam, 2.0, &w(&[0.0]), &NormSpec::Euclidean, &[vec![0.5, 1.0, 0.0]], &QuadratureSpec::default()).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn best_history_is_monotone(a in -2.0f64..2.0, b in -2.0f64..2.0) {
            let out = nelder_mead(|x| (x[0] - a).powi(2) + 3.0 * (x[1] - b).powi(4) + (x[0] * x[1]).sin(), &[0.0, 0.0], &[0.3, 0.3], &[(-5.0, 5.0), (-5.0, 5.0)], 300, 1e-9);
            prop_assert!(out.best_history.windows(2).all(|h| h[1] <= h[0]));
            prop_assert!(out.value <= out.best_history.first().copied().unwrap_or(f64::INFINITY));
        }
    }
}
