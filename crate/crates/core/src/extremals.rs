//! Equality cases of the log-Sobolev inequality and extremals of the sharp
//! weighted Sobolev inequality.
//!
//! # Normalization of `β exp(−‖x−x₀‖^q / σ)`
//!
//! For any norm, the layer-cake formula on ℝⁿ_A gives
//!
//! ```text
//! ∫ exp(−p‖y‖^q/σ) y^A dy = m(B_A) Γ(D/q + 1) (σ/p)^{D/q}
//! ```
//!
//! where `m(B_A)` is the weighted measure of that norm's unit ball, so
//! `β^{−p}` is the right side. With `q = p' = 2`, Euclidean norm, this is
//! `(σΠ(A)/2)^{D/2}`. Translating by an admissible center leaves the integral
//! unchanged. When `m(B_A)` has no closed form it is computed by quadrature.
//!
//! # The Talenti constant `σ_{p,A}`
//!
//! `h = (σ + |x|^{p'})^{1−D/p}` satisfies `|h|^{p*} = (σ + |x|^{p'})^{−D}`.
//! Polar coordinates and `r = σ^{1/p'} s` turn the unit-mass condition into
//!
//! ```text
//! 1 = σ^{−D/p} · (D m(B_A) / p') · Γ(D/p') Γ(D/p) / Γ(D)
//! ```
//!
//! hence `σ_{p,A} = K^{p/D}` with `K = (D m(B_A)/p') Γ(D/p') Γ(D/p) / Γ(D)`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, regime, Error, Result};
use crate::monomial::{ln_weighted_ball_measure, MonomialWeight};
use crate::norms::{conjugate_exponent, NormSpec};
use crate::quadrature::{ball_measure_by_quadrature, QuadratureSpec, RadialField, ScalarField};
use crate::specialfn::log_gamma_unchecked as lgamma;

/// How `β` was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    ClosedForm,
    Quadrature,
}

/// `β exp(−‖x − x₀‖^q / σ)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StretchedExponential {
    pub exponent: f64,
    pub sigma: f64,
    pub center: Vec<f64>,
    pub beta: f64,
    pub norm: NormSpec,
}

impl StretchedExponential {
    /// The profile with `β` fixed by `∫|f|^p x^A dx = 1`.
    pub fn normalized(p: f64, exponent: f64, sigma: f64, center: Vec<f64>, w: &MonomialWeight, norm: NormSpec) -> Result<(Self, Normalization)> {
        if !(p.is_finite() && p >= 1.0) {
            return Err(domain(format!("p must be at least 1, got {p}")));
        }
        if !(exponent.is_finite() && exponent > 0.0) {
            return Err(domain(format!("exponent must be positive, got {exponent}")));
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(domain(format!("sigma must be positive, got {sigma}")));
        }
        norm.validate()?;
        w.check_center(&center)?;
        let (ln_m, how) = match ln_weighted_ball_measure(&norm, w) {
            Ok(ln_m) => (ln_m, Normalization::ClosedForm),
            Err(Error::InvalidRegime(_)) => {
                let m = ball_measure_by_quadrature(&norm, w, &QuadratureSpec::adaptive(1e-12))?;
                (m.value.ln(), Normalization::Quadrature)
            }
            Err(e) => return Err(e),
        };
        let d = w.homogeneous_dim();
        let ln_integral = ln_m + lgamma(d / exponent + 1.0) + (d / exponent) * (sigma / p).ln();
        let beta = (-ln_integral / p).exp();
        Ok((Self { exponent, sigma, center, beta, norm }, how))
    }

    fn offset(&self, x: &[f64]) -> Vec<f64> {
        x.iter().zip(&self.center).map(|(a, c)| a - c).collect()
    }
}

impl ScalarField for StretchedExponential {
    fn dim(&self) -> usize {
        self.center.len()
    }

    fn value(&self, x: &[f64]) -> f64 {
        let r = self.norm.norm_unchecked(&self.offset(x));
        self.beta * (-r.powf(self.exponent) / self.sigma).exp()
    }

    /// `−β(q/σ)‖y‖^{q−1} ∇‖y‖ e^{−‖y‖^q/σ}`, taken as zero at the center.
    fn analytic_gradient(&self, x: &[f64]) -> Option<Vec<f64>> {
        let y = self.offset(x);
        let r = self.norm.norm_unchecked(&y);
        if r == 0.0 {
            return Some(vec![0.0; y.len()]);
        }
        let grad_norm = match self.norm.gradient(&y) {
            Ok(g) => g,
            Err(_) => return Some(vec![f64::NAN; y.len()]),
        };
        let coeff = -self.beta * (self.exponent / self.sigma) * r.powf(self.exponent - 1.0) * (-r.powf(self.exponent) / self.sigma).exp();
        Some(grad_norm.into_iter().map(|g| coeff * g).collect())
    }

    fn breakpoints(&self, axis: usize) -> Vec<f64> {
        vec![self.center[axis]]
    }
}

impl RadialField for StretchedExponential {
    fn radial_norm(&self) -> &NormSpec {
        &self.norm
    }

    fn center(&self) -> &[f64] {
        &self.center
    }

    fn profile(&self, r: f64) -> f64 {
        self.beta * (-r.powf(self.exponent) / self.sigma).exp()
    }

    fn profile_derivative(&self, r: f64) -> f64 {
        -self.beta * (self.exponent / self.sigma) * r.powf(self.exponent - 1.0) * (-r.powf(self.exponent) / self.sigma).exp()
    }
}

/// An equality case `β exp(−‖x − x₀‖^{p'} / σ)` with unit `L^p(x^A)` mass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalProfile {
    pub p: f64,
    pub pprime: f64,
    pub weight: MonomialWeight,
    pub profile: StretchedExponential,
    pub normalization: Normalization,
    /// Set for a non-Euclidean norm with a nonzero weight. Equality is
    /// computed and reported there, not asserted.
    pub conjectural_equality: bool,
}

impl ExtremalProfile {
    pub fn sigma(&self) -> f64 {
        self.profile.sigma
    }

    pub fn beta(&self) -> f64 {
        self.profile.beta
    }

    pub fn center(&self) -> &[f64] {
        &self.profile.center
    }

    pub fn descriptor(&self) -> ProfileDescriptor {
        ProfileDescriptor {
            p: self.p,
            sigma: self.profile.sigma,
            center: self.profile.center.clone(),
            norm: self.profile.norm.clone(),
            a: self.weight.exponents().to_vec(),
            exponent: None,
        }
    }
}

impl ScalarField for ExtremalProfile {
    fn dim(&self) -> usize {
        self.profile.dim()
    }

    fn value(&self, x: &[f64]) -> f64 {
        self.profile.value(x)
    }

    fn analytic_gradient(&self, x: &[f64]) -> Option<Vec<f64>> {
        self.profile.analytic_gradient(x)
    }

    fn breakpoints(&self, axis: usize) -> Vec<f64> {
        self.profile.breakpoints(axis)
    }
}

impl RadialField for ExtremalProfile {
    fn radial_norm(&self) -> &NormSpec {
        self.profile.radial_norm()
    }

    fn center(&self) -> &[f64] {
        self.profile.center()
    }

    fn profile(&self, r: f64) -> f64 {
        self.profile.profile(r)
    }

    fn profile_derivative(&self, r: f64) -> f64 {
        self.profile.profile_derivative(r)
    }
}

/// `β exp(−‖x − x₀‖^{p'}/σ)` normalized in `L^p(ℝⁿ_A, x^A dx)`.
pub fn make_log_sobolev_extremal(p: f64, sigma: f64, center: Vec<f64>, w: &MonomialWeight, norm: NormSpec) -> Result<ExtremalProfile> {
    if !(p.is_finite() && p > 1.0) {
        return Err(domain(format!("extremals need p > 1, got {p}")));
    }
    let pprime = conjugate_exponent(p);
    let conjectural_equality = !norm.is_euclidean() && !w.is_unweighted();
    let (profile, normalization) = StretchedExponential::normalized(p, pprime, sigma, center, w, norm)?;
    Ok(ExtremalProfile { p, pprime, weight: w.clone(), profile, normalization, conjectural_equality })
}

/// JSON descriptor `{p, sigma, center, norm, A}` of a stretched exponential.
/// Without `exponent` it denotes the extremal (`exponent = p'`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileDescriptor {
    pub p: f64,
    pub sigma: f64,
    pub center: Vec<f64>,
    pub norm: NormSpec,
    #[serde(rename = "A")]
    pub a: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<f64>,
}

impl ProfileDescriptor {
    pub fn weight(&self) -> Result<MonomialWeight> {
        MonomialWeight::new(self.a.clone())
    }

    /// The described field, normalized to unit `L^p(x^A)` mass.
    pub fn build(&self) -> Result<StretchedExponential> {
        let w = self.weight()?;
        if !(self.p.is_finite() && self.p > 1.0) {
            return Err(domain(format!("p must exceed 1, got {}", self.p)));
        }
        let exponent = self.exponent.unwrap_or_else(|| conjugate_exponent(self.p));
        Ok(StretchedExponential::normalized(self.p, exponent, self.sigma, self.center.clone(), &w, self.norm.clone())?.0)
    }
}

/// `c · h_{p,A}(λ(x − x₀))` with `h_{p,A} = (σ_{p,A} + |x|^{p'})^{1−D/p}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TalentiProfile {
    pub p: f64,
    pub pprime: f64,
    pub sigma: f64,
    pub lambda: f64,
    pub scale: f64,
    pub center: Vec<f64>,
    pub homogeneous_dim: f64,
}

/// `ln σ_{p,A}` from the unit `L^{p*}(x^A)` mass of `h_{p,A}`.
pub fn ln_talenti_sigma(p: f64, w: &MonomialWeight) -> Result<f64> {
    let d = w.homogeneous_dim();
    if !(p.is_finite() && p > 1.0 && p < d) {
        return Err(regime(format!("the Talenti profile needs 1 < p < D, got p = {p}, D = {d}")));
    }
    let pprime = conjugate_exponent(p);
    let ln_k = d.ln() + w.ln_ball_measure() - pprime.ln() + lgamma(d / pprime) + lgamma(d / p) - lgamma(d);
    Ok((p / d) * ln_k)
}

pub fn make_talenti(p: f64, w: &MonomialWeight, lambda: f64, center: Vec<f64>, scale_c: f64) -> Result<TalentiProfile> {
    let sigma = ln_talenti_sigma(p, w)?.exp();
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(domain(format!("lambda must be positive, got {lambda}")));
    }
    if !scale_c.is_finite() || scale_c == 0.0 {
        return Err(domain("scale must be finite and nonzero"));
    }
    w.check_center(&center)?;
    Ok(TalentiProfile {
        p,
        pprime: conjugate_exponent(p),
        sigma,
        lambda,
        scale: scale_c,
        center,
        homogeneous_dim: w.homogeneous_dim(),
    })
}

impl TalentiProfile {
    fn scaled_offset(&self, x: &[f64]) -> Vec<f64> {
        x.iter().zip(&self.center).map(|(a, c)| self.lambda * (a - c)).collect()
    }
}

impl ScalarField for TalentiProfile {
    fn dim(&self) -> usize {
        self.center.len()
    }

    fn value(&self, x: &[f64]) -> f64 {
        let y = self.scaled_offset(x);
        let r = NormSpec::Euclidean.norm_unchecked(&y);
        self.scale * (self.sigma + r.powf(self.pprime)).powf(1.0 - self.homogeneous_dim / self.p)
    }

    fn analytic_gradient(&self, x: &[f64]) -> Option<Vec<f64>> {
        let y = self.scaled_offset(x);
        let r = NormSpec::Euclidean.norm_unchecked(&y);
        if r == 0.0 {
            return Some(vec![0.0; y.len()]);
        }
        let d = self.homogeneous_dim;
        let coeff = self.scale
            * (1.0 - d / self.p)
            * (self.sigma + r.powf(self.pprime)).powf(-d / self.p)
            * self.pprime
            * r.powf(self.pprime - 2.0)
            * self.lambda;
        Some(y.into_iter().map(|v| coeff * v).collect())
    }

    fn breakpoints(&self, axis: usize) -> Vec<f64> {
        vec![self.center[axis]]
    }
}

impl RadialField for TalentiProfile {
    fn radial_norm(&self) -> &NormSpec {
        &NormSpec::Euclidean
    }

    fn center(&self) -> &[f64] {
        &self.center
    }

    fn profile(&self, r: f64) -> f64 {
        self.scale * (self.sigma + (self.lambda * r).powf(self.pprime)).powf(1.0 - self.homogeneous_dim / self.p)
    }

    fn profile_derivative(&self, r: f64) -> f64 {
        let s = self.lambda * r;
        let d = self.homogeneous_dim;
        self.scale * (1.0 - d / self.p) * (self.sigma + s.powf(self.pprime)).powf(-d / self.p) * self.pprime * s.powf(self.pprime - 1.0) * self.lambda
    }
}
