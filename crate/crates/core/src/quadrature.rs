//! Integration of `x^A`-weighted integrands over the cone ℝⁿ_A.
//!
//! Two tensor-product schemes are available:
//!
//! * [`Scheme::Adaptive`] splits every axis at the integrand's breakpoints
//!   (kinks, centers) and applies double-exponential rules on each piece:
//!   tanh-sinh on bounded pieces, exp-sinh on half-lines. The step is halved
//!   until two successive levels agree to `rel_tol`. No truncation is needed
//!   and the endpoint singularities of `|xᵢ|^{Aᵢ}` are absorbed by the rule.
//! * [`Scheme::TensorGauss`] truncates to `[-R, R]` (or `[0, R]` on weighted
//!   axes) and uses Gauss–Jacobi nodes for the `xᵢ^{Aᵢ}` factor on the piece
//!   touching the origin, Gauss–Legendre elsewhere.
//!
//! Nodes never land on a breakpoint or on the boundary of the cone.
//! Accumulation runs in a fixed order with compensated summation, so results
//! are bit-reproducible regardless of thread count.

use std::f64::consts::FRAC_PI_2;
use std::num::NonZeroUsize;

use gauss_quad::{GaussJacobi, GaussLegendre};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::monomial::MonomialWeight;
use crate::norms::NormSpec;
use crate::specialfn::log_gamma_unchecked as lgamma;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    TensorGauss,
    Adaptive,
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tensor_gauss" | "tensor-gauss" | "gauss" => Ok(Scheme::TensorGauss),
            "adaptive" => Ok(Scheme::Adaptive),
            other => Err(Error::Config(format!("unknown quadrature scheme '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureSpec {
    pub scheme: Scheme,
    /// Gauss nodes per axis for `TensorGauss`; for `Adaptive`, the number of
    /// double-exponential steps per unit of the transformed variable at the
    /// first level.
    pub nodes_per_axis: usize,
    /// Box half-width for `TensorGauss`. Unused by `Adaptive`.
    pub truncation_radius: f64,
    pub rel_tol: f64,
    /// Maximum number of step halvings for `Adaptive`.
    pub max_subdivisions: usize,
    /// For `Adaptive`, drops half-line nodes farther than this from the
    /// outermost breakpoint. Only for integrands with fast-decaying tails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tail_cutoff: Option<f64>,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            scheme: Scheme::Adaptive,
            nodes_per_axis: 4,
            truncation_radius: 12.0,
            rel_tol: 1e-10,
            max_subdivisions: 6,
            tail_cutoff: None,
        }
    }
}

impl QuadratureSpec {
    pub fn adaptive(rel_tol: f64) -> Self {
        Self { rel_tol, ..Self::default() }
    }

    pub fn tensor_gauss(nodes_per_axis: usize, truncation_radius: f64) -> Self {
        Self {
            scheme: Scheme::TensorGauss,
            nodes_per_axis,
            truncation_radius,
            ..Self::default()
        }
    }

    pub fn with_tail_cutoff(mut self, cutoff: f64) -> Self {
        self.tail_cutoff = Some(cutoff);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes_per_axis < 4 {
            return Err(domain(format!("nodes_per_axis must be at least 4, got {}", self.nodes_per_axis)));
        }
        if !(self.rel_tol > 0.0) {
            return Err(domain("rel_tol must be positive"));
        }
        if !(self.truncation_radius.is_finite() && self.truncation_radius > 0.0) {
            return Err(domain("truncation_radius must be finite and positive"));
        }
        if let Some(c) = self.tail_cutoff {
            if !(c > 0.0) {
                return Err(domain("tail_cutoff must be positive"));
            }
        }
        Ok(())
    }
}

/// Smallest `R` with `e^{-R^α/σ} R^{D+p} < rel_tol / 10`, the truncation
/// rule for integrands with stretched-exponential tails.
pub fn exponential_tail_radius(alpha: f64, sigma: f64, d: f64, p: f64, rel_tol: f64) -> f64 {
    let target = (rel_tol / 10.0).ln();
    let log_tail = |r: f64| -r.powf(alpha) / sigma + (d + p) * r.ln();
    let mut hi = 1.0;
    while log_tail(hi) >= target || hi < sigma.powf(1.0 / alpha) {
        hi *= 2.0;
    }
    let mut lo = hi / 2.0;
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if log_tail(mid) < target {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// A function on ℝⁿ with an optional analytic gradient.
///
/// Implementations must be pure: the same point always yields the same value.
pub trait ScalarField: Sync {
    fn dim(&self) -> usize;

    fn value(&self, x: &[f64]) -> f64;

    fn analytic_gradient(&self, _x: &[f64]) -> Option<Vec<f64>> {
        None
    }

    /// Coordinates along `axis` where the field is not smooth. The adaptive
    /// scheme splits there.
    fn breakpoints(&self, _axis: usize) -> Vec<f64> {
        Vec::new()
    }

    /// The analytic gradient when available, otherwise central differences
    /// with step `cbrt(ε)(1 + |xᵢ|)`.
    fn gradient(&self, x: &[f64]) -> Vec<f64> {
        if let Some(g) = self.analytic_gradient(x) {
            return g;
        }
        finite_difference_gradient(|y| self.value(y), x)
    }
}

/// A field of the form `g(‖x − x₀‖)`.
///
/// With an admissible center the polar decomposition reduces every
/// functional to a one-dimensional integral in `r`, and since
/// `‖∇‖y‖‖_* = 1` the gradient enters only through `|g'(r)|`.
pub trait RadialField: ScalarField {
    fn radial_norm(&self) -> &NormSpec;

    fn center(&self) -> &[f64];

    fn profile(&self, r: f64) -> f64;

    fn profile_derivative(&self, r: f64) -> f64;
}

pub fn finite_difference_gradient(f: impl Fn(&[f64]) -> f64, x: &[f64]) -> Vec<f64> {
    let base = f64::EPSILON.cbrt();
    let mut y = x.to_vec();
    (0..x.len())
        .map(|i| {
            let h = base * (1.0 + x[i].abs());
            y[i] = x[i] + h;
            let plus = f(&y);
            y[i] = x[i] - h;
            let minus = f(&y);
            y[i] = x[i];
            (plus - minus) / (2.0 * h)
        })
        .collect()
}

type ValueFn = dyn Fn(&[f64]) -> f64 + Send + Sync;
type GradFn = dyn Fn(&[f64]) -> Vec<f64> + Send + Sync;

/// A [`ScalarField`] built from closures.
pub struct FnField {
    dim: usize,
    value: Box<ValueFn>,
    gradient: Option<Box<GradFn>>,
    breakpoints: Vec<Vec<f64>>,
}

impl FnField {
    pub fn new(dim: usize, value: impl Fn(&[f64]) -> f64 + Send + Sync + 'static) -> Self {
        Self { dim, value: Box::new(value), gradient: None, breakpoints: vec![Vec::new(); dim] }
    }

    pub fn with_gradient(mut self, gradient: impl Fn(&[f64]) -> Vec<f64> + Send + Sync + 'static) -> Self {
        self.gradient = Some(Box::new(gradient));
        self
    }

    pub fn with_breakpoints(mut self, breakpoints: Vec<Vec<f64>>) -> Self {
        self.breakpoints = breakpoints;
        self
    }
}

impl ScalarField for FnField {
    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, x: &[f64]) -> f64 {
        (self.value)(x)
    }

    fn analytic_gradient(&self, x: &[f64]) -> Option<Vec<f64>> {
        self.gradient.as_ref().map(|g| g(x))
    }

    fn breakpoints(&self, axis: usize) -> Vec<f64> {
        self.breakpoints.get(axis).cloned().unwrap_or_default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Integral {
    pub value: f64,
    pub err: f64,
}

/// Several integrals computed from one pass over the nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integrals<const K: usize> {
    pub values: [f64; K],
    pub errs: [f64; K],
}

impl<const K: usize> Integrals<K> {
    pub fn get(&self, k: usize) -> Integral {
        Integral { value: self.values[k], err: self.errs[k] }
    }
}

/// Neumaier compensated sum.
#[derive(Debug, Clone, Copy, Default)]
struct Accumulator {
    sum: f64,
    compensation: f64,
}

impl Accumulator {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.compensation += (self.sum - t) + v;
        } else {
            self.compensation += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Nodes and weights along one axis, with `|x|^{A}` folded into the weights.
#[derive(Debug, Clone, Default)]
struct AxisRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl AxisRule {
    fn push(&mut self, x: f64, w: f64, exponent: f64) {
        if !(w > 0.0) || !x.is_finite() {
            return;
        }
        let density = if exponent > 0.0 { x.abs().powf(exponent) } else { 1.0 };
        let weight = w * density;
        if weight > 0.0 && weight.is_finite() {
            self.nodes.push(x);
            self.weights.push(weight);
        }
    }
}

// Transformed-variable ranges of the double-exponential rules.
const TANH_SINH_T_MAX: f64 = 3.2;
const EXP_SINH_T_MAX: f64 = 4.0;

/// tanh-sinh nodes on (a, b), skipping nodes that round onto an endpoint.
fn tanh_sinh(a: f64, b: f64, h: f64, exponent: f64, rule: &mut AxisRule) {
    let half = 0.5 * (b - a);
    let steps = (TANH_SINH_T_MAX / h).ceil() as i64;
    for k in -steps..=steps {
        let t = k as f64 * h;
        let u = FRAC_PI_2 * t.sinh();
        // distance to the nearer endpoint, computed without cancellation
        let dist = half * 2.0 / ((2.0 * u.abs()).exp() + 1.0);
        let x = if t < 0.0 { a + dist } else if t > 0.0 { b - dist } else { a + half };
        if x <= a || x >= b {
            continue;
        }
        let w = h * half * FRAC_PI_2 * t.cosh() / u.cosh().powi(2);
        rule.push(x, w, exponent);
    }
}

/// exp-sinh nodes on (a, ∞) when `direction = 1`, (-∞, a) when `-1`.
fn exp_sinh(a: f64, direction: f64, h: f64, cutoff: f64, exponent: f64, rule: &mut AxisRule) {
    let steps = (EXP_SINH_T_MAX / h).ceil() as i64;
    for k in -steps..=steps {
        let t = k as f64 * h;
        let offset = (FRAC_PI_2 * t.sinh()).exp();
        if offset > cutoff {
            break;
        }
        let x = a + direction * offset;
        if x == a {
            continue;
        }
        let w = h * FRAC_PI_2 * t.cosh() * offset;
        rule.push(x, w, exponent);
    }
}

/// Pieces of one axis: sorted interior breakpoints clipped to the domain.
fn axis_pieces(weighted: bool, breakpoints: &[f64]) -> (Option<f64>, Vec<f64>) {
    let lower = if weighted { Some(0.0) } else { None };
    let mut points: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|b| b.is_finite() && (!weighted || *b > 0.0))
        .collect();
    points.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    points.dedup();
    if points.is_empty() && !weighted {
        points.push(0.0);
    }
    (lower, points)
}

fn de_axis_rule(exponent: f64, weighted: bool, breakpoints: &[f64], h: f64, cutoff: f64) -> AxisRule {
    let mut rule = AxisRule::default();
    let (lower, points) = axis_pieces(weighted, breakpoints);
    match lower {
        Some(lo) => {
            let mut left = lo;
            for &p in &points {
                tanh_sinh(left, p, h, exponent, &mut rule);
                left = p;
            }
            exp_sinh(left, 1.0, h, cutoff, exponent, &mut rule);
        }
        None => {
            exp_sinh(points[0], -1.0, h, cutoff, exponent, &mut rule);
            for pair in points.windows(2) {
                tanh_sinh(pair[0], pair[1], h, exponent, &mut rule);
            }
            exp_sinh(points[points.len() - 1], 1.0, h, cutoff, exponent, &mut rule);
        }
    }
    rule
}

fn gauss_axis_rule(exponent: f64, weighted: bool, breakpoints: &[f64], nodes: usize, radius: f64) -> Result<AxisRule> {
    let mut rule = AxisRule::default();
    let (lower, points) = axis_pieces(weighted, breakpoints);
    let lo = lower.unwrap_or(-radius);
    let mut cuts = vec![lo];
    cuts.extend(points.into_iter().filter(|p| *p > lo && *p < radius));
    cuts.push(radius);
    cuts.dedup();
    let pieces = cuts.len() - 1;
    let per_piece = NonZeroUsize::new((nodes / pieces).max(4)).expect("nonzero");
    let legendre = GaussLegendre::new(per_piece);
    for pair in cuts.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let half = 0.5 * (b - a);
        if weighted && a == 0.0 && exponent > 0.0 {
            // ∫₀^b x^A g(x) dx = (b/2)^{A+1} ∫_{-1}^{1} (1+s)^A g(b(1+s)/2) ds
            let beta = exponent
                .try_into()
                .map_err(|_| domain(format!("weight exponent {exponent} unsupported by Gauss-Jacobi")))?;
            let jacobi = GaussJacobi::new(per_piece, 0.0.try_into().expect("zero"), beta);
            let scale = half.powf(exponent + 1.0);
            for &(s, w) in jacobi.as_node_weight_pairs() {
                let x = half * (1.0 + s);
                if x > 0.0 {
                    rule.nodes.push(x);
                    rule.weights.push(w * scale);
                }
            }
        } else {
            for &(s, w) in legendre.as_node_weight_pairs() {
                rule.push(a + half * (1.0 + s), w * half, if weighted { exponent } else { 0.0 });
            }
        }
    }
    Ok(rule)
}

fn tensor_sum<const K: usize>(
    rules: &[AxisRule],
    f: &(impl Fn(&[f64]) -> [f64; K] + Sync),
) -> Result<([f64; K], [f64; K])> {
    let dim = rules.len();
    let first = &rules[0];
    let partials: Vec<Result<([Accumulator; K], [Accumulator; K])>> = (0..first.nodes.len())
        .into_par_iter()
        .map(|i0| {
            let mut acc = [Accumulator::default(); K];
            let mut abs_acc = [Accumulator::default(); K];
            let mut x = vec![0.0; dim];
            x[0] = first.nodes[i0];
            let mut index = vec![0usize; dim];
            loop {
                let mut weight = first.weights[i0];
                for axis in 1..dim {
                    x[axis] = rules[axis].nodes[index[axis]];
                    weight *= rules[axis].weights[index[axis]];
                }
                let values = f(&x);
                for k in 0..K {
                    let v = values[k];
                    if !v.is_finite() {
                        return Err(Error::NonFiniteSample { point: x.clone(), value: v });
                    }
                    if v != 0.0 {
                        let contribution = weight * v;
                        if !contribution.is_finite() {
                            return Err(Error::NonFiniteSample { point: x.clone(), value: contribution });
                        }
                        acc[k].add(contribution);
                        abs_acc[k].add(contribution.abs());
                    }
                }
                // advance the odometer over axes 1..dim
                let mut axis = dim;
                loop {
                    axis -= 1;
                    if axis == 0 {
                        return Ok((acc, abs_acc));
                    }
                    index[axis] += 1;
                    if index[axis] < rules[axis].nodes.len() {
                        break;
                    }
                    index[axis] = 0;
                }
            }
        })
        .collect();
    let mut totals = [Accumulator::default(); K];
    let mut abs_totals = [Accumulator::default(); K];
    for partial in partials {
        let (acc, abs_acc) = partial?;
        for k in 0..K {
            totals[k].add(acc[k].total());
            abs_totals[k].add(abs_acc[k].total());
        }
    }
    Ok((totals.map(|a| a.total()), abs_totals.map(|a| a.total())))
}

/// Integrates `K` components of `f` against `x^A dx` over ℝⁿ_A.
///
/// `breakpoints[i]` lists the coordinates along axis `i` where the
/// integrand is not smooth.
pub fn integrate_components<const K: usize>(
    w: &MonomialWeight,
    spec: &QuadratureSpec,
    breakpoints: &[Vec<f64>],
    f: impl Fn(&[f64]) -> [f64; K] + Sync,
) -> Result<Integrals<K>> {
    spec.validate()?;
    let dim = w.dim();
    let axis_breaks = |axis: usize| breakpoints.get(axis).map(Vec::as_slice).unwrap_or(&[]);
    match spec.scheme {
        Scheme::TensorGauss => {
            let build = |nodes: usize| -> Result<Vec<AxisRule>> {
                (0..dim)
                    .map(|i| {
                        gauss_axis_rule(w.exponents()[i], w.is_weighted_axis(i), axis_breaks(i), nodes, spec.truncation_radius)
                    })
                    .collect()
            };
            let (fine, _) = tensor_sum(&build(spec.nodes_per_axis)?, &f)?;
            let (coarse, _) = tensor_sum(&build((spec.nodes_per_axis / 2).max(4))?, &f)?;
            let mut errs = [0.0; K];
            for k in 0..K {
                errs[k] = (fine[k] - coarse[k]).abs();
            }
            Ok(Integrals { values: fine, errs })
        }
        Scheme::Adaptive => {
            let cutoff = spec.tail_cutoff.unwrap_or(f64::INFINITY);
            let build = |h: f64| -> Vec<AxisRule> {
                (0..dim)
                    .map(|i| de_axis_rule(w.exponents()[i], w.is_weighted_axis(i), axis_breaks(i), h, cutoff))
                    .collect()
            };
            let mut h = 1.0 / spec.nodes_per_axis as f64;
            let (mut previous, _) = tensor_sum(&build(h), &f)?;
            let mut errs = [f64::INFINITY; K];
            for _ in 0..spec.max_subdivisions.max(1) {
                h *= 0.5;
                let (current, magnitude) = tensor_sum(&build(h), &f)?;
                let mut converged = true;
                for k in 0..K {
                    errs[k] = (current[k] - previous[k]).abs();
                    if errs[k] > spec.rel_tol * magnitude[k].max(f64::MIN_POSITIVE) {
                        converged = false;
                    }
                }
                previous = current;
                if converged {
                    return Ok(Integrals { values: previous, errs });
                }
            }
            let worst = (0..K)
                .max_by(|a, b| {
                    let ra = errs[*a] / previous[*a].abs().max(f64::MIN_POSITIVE);
                    let rb = errs[*b] / previous[*b].abs().max(f64::MIN_POSITIVE);
                    ra.partial_cmp(&rb).unwrap_or(std::cmp::Ordering::Equal)
                })
                .unwrap_or(0);
            Err(Error::QuadratureNotConverged { estimate: previous[worst], err: errs[worst], rel_tol: spec.rel_tol })
        }
    }
}

/// `∫_{ℝⁿ_A} g(x) x^A dx` for a scalar field `g`.
pub fn integrate_weighted(g: &dyn ScalarField, w: &MonomialWeight, spec: &QuadratureSpec) -> Result<Integral> {
    if g.dim() != w.dim() {
        return Err(Error::DimensionMismatch { expected: w.dim(), got: g.dim() });
    }
    let breakpoints: Vec<Vec<f64>> = (0..g.dim()).map(|i| g.breakpoints(i)).collect();
    let result = integrate_components(w, spec, &breakpoints, |x| [g.value(x)])?;
    Ok(result.get(0))
}

/// One-dimensional `∫₀^∞ g(r) r^{power} dr` by the adaptive exp-sinh rule.
pub fn integrate_half_line(g: impl Fn(f64) -> f64 + Sync, power: f64, breakpoints: &[f64], spec: &QuadratureSpec) -> Result<Integral> {
    let w = MonomialWeight::new(vec![power.max(0.0)])?;
    let shift = power.min(0.0);
    let adaptive = QuadratureSpec { scheme: Scheme::Adaptive, ..spec.clone() };
    let result = integrate_components(&w, &adaptive, &[breakpoints.to_vec()], |x| {
        let r = x[0];
        let extra = if shift != 0.0 { r.powf(shift) } else { 1.0 };
        [g(r) * extra]
    })?;
    Ok(result.get(0))
}

/// `∫_{ℝⁿ_A} g(|x|) x^A dx = D m(B_A) ∫₀^∞ g(r) r^{D-1} dr`.
pub fn integrate_radial(profile: impl Fn(f64) -> f64 + Sync, w: &MonomialWeight, spec: &QuadratureSpec) -> Result<Integral> {
    integrate_norm_radial(profile, w.homogeneous_dim(), w.ln_ball_measure(), spec)
}

/// Polar decomposition for a norm-radial integrand `g(‖x‖)`, given the
/// homogeneous dimension and `ln m(B_A)` of the norm's unit ball.
pub fn integrate_norm_radial(profile: impl Fn(f64) -> f64 + Sync, d: f64, ln_m: f64, spec: &QuadratureSpec) -> Result<Integral> {
    let perimeter = d * ln_m.exp();
    let radial = integrate_half_line(profile, d - 1.0, &[], spec)?;
    Ok(Integral { value: perimeter * radial.value, err: perimeter * radial.err })
}

/// `m(B_A)` for an arbitrary norm from `∫ e^{-‖x‖} x^A dx = Γ(D+1) m(B_A)`.
pub fn ball_measure_by_quadrature(norm: &NormSpec, w: &MonomialWeight, spec: &QuadratureSpec) -> Result<Integral> {
    norm.validate()?;
    let d = w.homogeneous_dim();
    let breaks = vec![vec![0.0]; w.dim()];
    let result = integrate_components(w, spec, &breaks, |x| [(-norm.norm_unchecked(x)).exp()])?;
    let scale = (-lgamma(d + 1.0)).exp();
    Ok(Integral { value: result.values[0] * scale, err: result.errs[0] * scale })
}

/// Volume of `{‖x‖ < 1}` in ℝ^dim by nested integration of the indicator.
///
/// The norm must be absolute (monotone in each `|xᵢ|`), so every slice is a
/// symmetric interval whose endpoint is found by bisection; `nodes_per_unit`
/// sets the tanh-sinh step on each nested interval.
pub fn indicator_ball_volume(norm: &NormSpec, dim: usize, nodes_per_unit: usize) -> Result<f64> {
    norm.validate()?;
    if dim == 0 {
        return Err(domain("dimension must be positive"));
    }
    let mut probe = vec![0.0; dim];
    probe[0] = 1.0;
    norm.norm(&probe)?;
    let h = 1.0 / nodes_per_unit.max(2) as f64;
    let mut point = vec![0.0; dim];
    Ok(slice_volume(norm, &mut point, 0, h))
}

fn chord_end(norm: &NormSpec, point: &mut [f64], axis: usize) -> f64 {
    point[axis] = 0.0;
    if norm.norm_unchecked(point) >= 1.0 {
        return 0.0;
    }
    let mut hi = 1.0;
    loop {
        point[axis] = hi;
        if norm.norm_unchecked(point) >= 1.0 {
            break;
        }
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        point[axis] = mid;
        if norm.norm_unchecked(point) < 1.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    point[axis] = 0.0;
    0.5 * (lo + hi)
}

fn slice_volume(norm: &NormSpec, point: &mut Vec<f64>, axis: usize, h: f64) -> f64 {
    let end = chord_end(norm, point, axis);
    if end == 0.0 {
        return 0.0;
    }
    if axis + 1 == point.len() {
        return 2.0 * end;
    }
    let mut rule = AxisRule::default();
    // absolute norms are even in each coordinate
    tanh_sinh(0.0, end, h, 0.0, &mut rule);
    let mut acc = Accumulator::default();
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        point[axis] = *x;
        acc.add(w * slice_volume(norm, point, axis + 1, h));
    }
    point[axis] = 0.0;
    2.0 * acc.total()
}
