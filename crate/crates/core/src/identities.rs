//! Closed-form Γ-integrals checked against independent quadrature over a
//! parameter matrix.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::monomial::{ln_cauchy_integral, ln_gaussian_integral, ln_product_ball_volume, ln_product_cauchy_integral, Moment, MonomialWeight};
use crate::norms::NormSpec;
use crate::quadrature::{exponential_tail_radius, indicator_ball_volume, integrate_components, QuadratureSpec};

pub const EXPONENT_GRID: [f64; 4] = [0.0, 0.5, 1.0, 2.0];
pub const ALPHA_GRID: [f64; 3] = [1.5, 2.0, 3.0];
pub const SCALE_GRID: [f64; 3] = [0.5, 1.0, 2.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    /// `∫e^{−t|x−x₀|^α} x^A dx`
    GaussianMass,
    /// `∫|x−x₀|^α e^{−t|x−x₀|^α} x^A dx`
    GaussianMoment,
    /// `∫(1 + σ|x−x₀|^α)^{−β} x^A dx`
    Cauchy,
    /// Volume of the product-norm unit ball.
    ProductBallVolume,
    /// `∫(1 + σ|||z−z₀|||^α)^{−β} dz`
    ProductCauchy,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub identity: Identity,
    #[serde(rename = "A")]
    pub exponents: Vec<f64>,
    pub center: Vec<f64>,
    /// `(α, t)`, `(α, β, σ)` or `(l, p')` depending on the identity.
    pub params: Vec<f64>,
    pub closed_form: f64,
    pub quadrature: f64,
    pub rel_error: f64,
}

impl IdentityCheck {
    pub fn passed(&self, rel_tol: f64) -> bool {
        self.rel_error <= rel_tol
    }
}

/// Summary of a matrix run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityMatrixReport {
    pub rel_tol: f64,
    pub count: usize,
    pub failures: usize,
    pub max_rel_error: f64,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityMatrixReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Weights with `n ≤ max_dim` and exponents from [`EXPONENT_GRID`]; in
/// three dimensions the constant vectors plus two mixed ones.
pub fn weight_matrix(max_dim: usize) -> Vec<MonomialWeight> {
    let mut out = Vec::new();
    if max_dim >= 1 {
        out.extend(EXPONENT_GRID.iter().map(|&a| vec![a]));
    }
    if max_dim >= 2 {
        for &a in &EXPONENT_GRID {
            for &b in &EXPONENT_GRID {
                out.push(vec![a, b]);
            }
        }
    }
    if max_dim >= 3 {
        out.extend(EXPONENT_GRID.iter().map(|&a| vec![a; 3]));
        out.extend([[0.0, 0.5, 1.0], [2.0, 0.0, 0.5]].map(|v| v.to_vec()));
    }
    out.into_iter().map(|a| MonomialWeight::new(a).expect("grid exponents are valid")).collect()
}

/// The admissible center used for `w`: `0.3` on unweighted axes.
pub fn shifted_center(w: &MonomialWeight) -> Vec<f64> {
    (0..w.dim()).map(|i| if w.is_weighted_axis(i) { 0.0 } else { 0.3 }).collect()
}

/// Centers checked for `w`: the origin and the shifted center below three
/// dimensions, the shifted center alone in three.
pub fn centers(w: &MonomialWeight) -> Vec<Vec<f64>> {
    let shifted = shifted_center(w);
    let origin = vec![0.0; w.dim()];
    if w.dim() >= 3 || shifted == origin {
        vec![shifted]
    } else {
        vec![origin, shifted]
    }
}

fn rel(closed: f64, quad: f64) -> f64 {
    ((quad - closed) / closed).abs()
}

fn distance(x: &[f64], center: &[f64]) -> f64 {
    x.iter().zip(center).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
}

fn center_breaks(center: &[f64]) -> Vec<Vec<f64>> {
    center.iter().map(|&c| vec![c]).collect()
}

/// Scales checked for `w`: the full grid below three dimensions, `1` in
/// three, where dilation makes the scale a pure change of variables.
pub fn scales(w: &MonomialWeight) -> &'static [f64] {
    if w.dim() >= 3 {
        &[1.0]
    } else {
        &SCALE_GRID
    }
}

/// Both Gaussian identities for every `α` in the grid and `t` in `scales`.
pub fn gaussian_checks(w: &MonomialWeight, center: &[f64], scales: &[f64], spec: &QuadratureSpec) -> Result<Vec<IdentityCheck>> {
    let mut out = Vec::new();
    for &alpha in &ALPHA_GRID {
        for &t in scales {
            let cutoff = exponential_tail_radius(alpha, 1.0 / t, w.homogeneous_dim(), alpha, 1e-17);
            let quad = integrate_components(w, &spec.clone().with_tail_cutoff(cutoff), &center_breaks(center), |x| {
                let ra = distance(x, center).powf(alpha);
                let e = (-t * ra).exp();
                [e, ra * e]
            })?;
            for (identity, moment, k) in [(Identity::GaussianMass, Moment::Plain, 0), (Identity::GaussianMoment, Moment::Power, 1)] {
                let closed = ln_gaussian_integral(alpha, t, w, center, moment)?.exp();
                out.push(IdentityCheck {
                    identity,
                    exponents: w.exponents().to_vec(),
                    center: center.to_vec(),
                    params: vec![alpha, t],
                    closed_form: closed,
                    quadrature: quad.values[k],
                    rel_error: rel(closed, quad.values[k]),
                });
            }
        }
    }
    Ok(out)
}

/// The Cauchy identity for every `α` in the grid and `σ` in `scales`, with
/// `β = (D + 2)/α`.
pub fn cauchy_checks(w: &MonomialWeight, center: &[f64], scales: &[f64], spec: &QuadratureSpec) -> Result<Vec<IdentityCheck>> {
    let d = w.homogeneous_dim();
    let mut out = Vec::new();
    for &alpha in &ALPHA_GRID {
        let beta = (d + 2.0) / alpha;
        for &sigma in scales {
            let quad = integrate_components(w, spec, &center_breaks(center), |x| {
                [(-beta * (sigma * distance(x, center).powf(alpha)).ln_1p()).exp()]
            })?;
            let closed = ln_cauchy_integral(alpha, beta, sigma, w, center)?.exp();
            out.push(IdentityCheck {
                identity: Identity::Cauchy,
                exponents: w.exponents().to_vec(),
                center: center.to_vec(),
                params: vec![alpha, beta, sigma],
                closed_form: closed,
                quadrature: quad.values[0],
                rel_error: rel(closed, quad.values[0]),
            });
        }
    }
    Ok(out)
}

/// Product-ball volumes and product Cauchy integrals for a Euclidean base
/// with `n·l ≤ 3`.
pub fn product_checks(spec: &QuadratureSpec) -> Result<Vec<IdentityCheck>> {
    let mut cases = Vec::new();
    for (n, l) in [(1usize, 2usize), (1, 3), (2, 1)] {
        for &pprime in &ALPHA_GRID {
            cases.push((n, l, pprime));
        }
    }
    let mut out = Vec::new();
    for (n, l, pprime) in cases {
        let ln_m = MonomialWeight::unweighted(n).ln_ball_measure();
        let ln_a_l = ln_product_ball_volume(n, l, pprime, ln_m)?;
        let norm = NormSpec::product(NormSpec::Euclidean, l, pprime)?;
        let big_n = n * l;
        let volume = indicator_ball_volume(&norm, big_n, 48)?;
        let closed = ln_a_l.exp();
        out.push(IdentityCheck {
            identity: Identity::ProductBallVolume,
            exponents: vec![0.0; big_n],
            center: vec![0.0; big_n],
            params: vec![l as f64, pprime],
            closed_form: closed,
            quadrature: volume,
            rel_error: rel(closed, volume),
        });

        let (alpha, sigma) = (pprime, 1.5);
        let beta = (big_n as f64 + 2.0) / alpha;
        let center: Vec<f64> = (0..big_n).map(|i| 0.2 * (i as f64 + 1.0)).collect();
        let w = MonomialWeight::unweighted(big_n);
        let quad = integrate_components(&w, spec, &center_breaks(&center), |z| {
            let shifted: Vec<f64> = z.iter().zip(&center).map(|(a, b)| a - b).collect();
            [(-beta * (sigma * norm.norm_unchecked(&shifted).powf(alpha)).ln_1p()).exp()]
        })?;
        let closed = ln_product_cauchy_integral(alpha, beta, sigma, big_n, ln_a_l)?.exp();
        out.push(IdentityCheck {
            identity: Identity::ProductCauchy,
            exponents: vec![0.0; big_n],
            center,
            params: vec![alpha, beta, sigma, l as f64],
            closed_form: closed,
            quadrature: quad.values[0],
            rel_error: rel(closed, quad.values[0]),
        });
    }
    Ok(out)
}

/// Every identity over the full matrix, centered and shifted.
pub fn identity_matrix(max_dim: usize, rel_tol: f64, spec: &QuadratureSpec) -> Result<IdentityMatrixReport> {
    let weights = weight_matrix(max_dim);
    let per_weight: Vec<Vec<IdentityCheck>> = weights
        .par_iter()
        .map(|w| {
            let mut checks = Vec::new();
            for center in centers(w) {
                checks.extend(gaussian_checks(w, &center, scales(w), spec)?);
                checks.extend(cauchy_checks(w, &center, scales(w), spec)?);
            }
            Ok(checks)
        })
        .collect::<Result<_>>()?;
    let mut checks: Vec<IdentityCheck> = per_weight.into_iter().flatten().collect();
    checks.extend(product_checks(spec)?);
    let failures = checks.iter().filter(|c| !c.passed(rel_tol)).count();
    let max_rel_error = checks.iter().map(|c| c.rel_error).fold(0.0, f64::max);
    Ok(IdentityMatrixReport { rel_tol, count: checks.len(), failures, max_rel_error, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_matrix_shape() {
        assert_eq!(weight_matrix(1).len(), 4);
        assert_eq!(weight_matrix(2).len(), 20);
        assert_eq!(weight_matrix(3).len(), 26);
        assert_eq!(centers(&MonomialWeight::new(vec![1.0]).unwrap()).len(), 1);
        assert_eq!(centers(&MonomialWeight::new(vec![0.0, 1.0]).unwrap()).len(), 2);
        assert_eq!(shifted_center(&MonomialWeight::new(vec![0.0, 1.0]).unwrap()), vec![0.3, 0.0]);
    }

    #[test]
    fn one_dimensional_identities_pass() {
        let spec = QuadratureSpec::adaptive(1e-7);
        for w in weight_matrix(1) {
            for center in centers(&w) {
                let mut checks = gaussian_checks(&w, &center, scales(&w), &spec).unwrap();
                checks.extend(cauchy_checks(&w, &center, scales(&w), &spec).unwrap());
                assert_eq!(checks.len(), 27);
                assert!(checks.iter().all(|c| c.passed(1e-6)), "{checks:?}");
            }
        }
    }

    #[test]
    fn planar_product_identities_pass() {
        let checks = product_checks(&QuadratureSpec::adaptive(1e-7)).unwrap();
        assert_eq!(checks.len(), 18);
        assert!(checks.iter().filter(|c| c.exponents.len() == 2).all(|c| c.passed(1e-6)));
    }
}
