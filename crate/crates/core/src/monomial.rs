//! Geometry of the cone ℝⁿ_A with the monomial weight `x^A = ∏|xᵢ|^{Aᵢ}`,
//! and every closed-form Gamma integral built on it.
//!
//! All Gamma ratios are assembled in log space; the `ln_*` functions are the
//! primary implementations and the plain versions exponentiate at the end.

use serde::{Deserialize, Serialize};

use crate::error::{domain, regime, Error, Result};
use crate::norms::NormSpec;
use crate::specialfn::log_gamma_unchecked as lgamma;

const LN_2: f64 = std::f64::consts::LN_2;

/// The exponent vector `A` together with its derived constants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct MonomialWeight {
    exponents: Vec<f64>,
    homogeneous_dim: f64,
    positive_count: usize,
    ln_pi: f64,
}

impl TryFrom<Vec<f64>> for MonomialWeight {
    type Error = Error;

    fn try_from(exponents: Vec<f64>) -> Result<Self> {
        MonomialWeight::new(exponents)
    }
}

impl From<MonomialWeight> for Vec<f64> {
    fn from(w: MonomialWeight) -> Self {
        w.exponents
    }
}

impl MonomialWeight {
    pub fn new(exponents: Vec<f64>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(domain("the weight needs at least one coordinate"));
        }
        if let Some((i, a)) = exponents.iter().enumerate().find(|(_, a)| !(a.is_finite() && **a >= 0.0)) {
            return Err(domain(format!("weight exponent A[{i}] = {a} must be finite and nonnegative")));
        }
        let homogeneous_dim = exponents.len() as f64 + exponents.iter().sum::<f64>();
        let positive_count = exponents.iter().filter(|a| **a > 0.0).count();
        let ln_pi = ln_pi_from_parts(exponents.iter().map(|a| lgamma((a + 1.0) / 2.0)).sum(), positive_count, homogeneous_dim);
        Ok(Self { exponents, homogeneous_dim, positive_count, ln_pi })
    }

    /// The unweighted case `A = 0` in dimension `n`.
    pub fn unweighted(n: usize) -> Self {
        Self::new(vec![0.0; n.max(1)]).expect("zero exponents are valid")
    }

    /// `B = (A, A, …, A)` with `l` copies.
    pub fn tensor_power(&self, copies: usize) -> Result<Self> {
        if copies == 0 {
            return Err(domain("tensor power needs at least one copy"));
        }
        let mut exponents = Vec::with_capacity(self.exponents.len() * copies);
        for _ in 0..copies {
            exponents.extend_from_slice(&self.exponents);
        }
        Self::new(exponents)
    }

    pub fn exponents(&self) -> &[f64] {
        &self.exponents
    }

    /// Ambient dimension `n`.
    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    /// `D = n + ΣAᵢ`.
    pub fn homogeneous_dim(&self) -> f64 {
        self.homogeneous_dim
    }

    /// `k = #{i : Aᵢ > 0}`.
    pub fn positive_count(&self) -> usize {
        self.positive_count
    }

    pub fn is_unweighted(&self) -> bool {
        self.positive_count == 0
    }

    pub fn is_weighted_axis(&self, axis: usize) -> bool {
        self.exponents[axis] > 0.0
    }

    pub fn ln_pi(&self) -> f64 {
        self.ln_pi
    }

    /// `Π(A) = [∏Γ((Aᵢ+1)/2) / 2^k]^{2/D}`.
    pub fn pi_constant(&self) -> f64 {
        self.ln_pi.exp()
    }

    /// `ln m(B_A)` for the Euclidean unit ball.
    pub fn ln_ball_measure(&self) -> f64 {
        let d = self.homogeneous_dim;
        0.5 * d * self.ln_pi - lgamma(0.5 * d + 1.0)
    }

    /// `m(B_A) = Π(A)^{D/2} / Γ(D/2 + 1)`.
    pub fn ball_measure(&self) -> f64 {
        self.ln_ball_measure().exp()
    }

    /// `x^A`, or zero outside the closed cone.
    pub fn density(&self, x: &[f64]) -> f64 {
        let mut value = 1.0;
        for (xi, a) in x.iter().zip(&self.exponents) {
            if *a > 0.0 {
                if *xi <= 0.0 {
                    return 0.0;
                }
                value *= xi.powf(*a);
            }
        }
        value
    }

    /// Checks `(x0)ᵢ = 0` whenever `Aᵢ > 0`.
    pub fn check_center(&self, center: &[f64]) -> Result<()> {
        if center.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: center.len() });
        }
        for (axis, (c, a)) in center.iter().zip(&self.exponents).enumerate() {
            if *a > 0.0 && *c != 0.0 {
                return Err(Error::InadmissibleCenter { axis, value: *c });
            }
            if !c.is_finite() {
                return Err(domain(format!("center coordinate {axis} is not finite")));
            }
        }
        Ok(())
    }

    /// Zeroes the center coordinates on weighted axes.
    pub fn project_center(&self, center: &[f64]) -> Vec<f64> {
        center
            .iter()
            .zip(&self.exponents)
            .map(|(c, a)| if *a > 0.0 { 0.0 } else { *c })
            .collect()
    }
}

fn ln_pi_from_parts(sum_lgamma: f64, positive_count: usize, d: f64) -> f64 {
    (2.0 / d) * (sum_lgamma - positive_count as f64 * LN_2)
}

/// `Π(A)` straight from an exponent vector.
pub fn pi_constant(exponents: &[f64]) -> Result<f64> {
    Ok(MonomialWeight::new(exponents.to_vec())?.pi_constant())
}

/// `m(B_A)` for the Euclidean ball.
pub fn ball_measure(w: &MonomialWeight) -> f64 {
    w.ball_measure()
}

/// `ln ∫_{ℝⁿ_A ∩ {‖x‖<1}} x^A dx` in closed form.
///
/// q-type norms use `2^{n-k} ∏Γ((Aᵢ+1)/q) / (qⁿ Γ(D/q + 1))`, diagonal
/// weights rescale each axis, and unweighted product norms use the
/// product-ball volume. Weighted product norms have no closed form here.
pub fn ln_weighted_ball_measure(norm: &NormSpec, w: &MonomialWeight) -> Result<f64> {
    norm.validate()?;
    if let Some(d) = norm.fixed_dim() {
        if d != w.dim() {
            return Err(Error::DimensionMismatch { expected: d, got: w.dim() });
        }
    }
    match norm {
        NormSpec::Euclidean => Ok(w.ln_ball_measure()),
        NormSpec::QNorm { q } => Ok(ln_q_ball(w, *q)),
        NormSpec::DiagonalWeighted { weights, q } => {
            let jacobian: f64 = weights.iter().zip(w.exponents()).map(|(wi, a)| -(a + 1.0) * wi.ln()).sum();
            Ok(ln_q_ball(w, *q) + jacobian)
        }
        NormSpec::Product { base, copies, exponent } => {
            if !w.is_unweighted() {
                return Err(regime("no closed-form weighted volume for product norms"));
            }
            if w.dim() % copies != 0 {
                return Err(Error::DimensionMismatch { expected: copies * (w.dim() / copies).max(1), got: w.dim() });
            }
            let block = w.dim() / copies;
            let ln_base = ln_weighted_ball_measure(base, &MonomialWeight::unweighted(block))?;
            ln_product_ball_volume(block, *copies, *exponent, ln_base)
        }
    }
}

pub fn weighted_ball_measure(norm: &NormSpec, w: &MonomialWeight) -> Result<f64> {
    Ok(ln_weighted_ball_measure(norm, w)?.exp())
}

fn ln_q_ball(w: &MonomialWeight, q: f64) -> f64 {
    let n = w.dim() as f64;
    let free = (w.dim() - w.positive_count()) as f64;
    let sum: f64 = w.exponents().iter().map(|a| lgamma((a + 1.0) / q)).sum();
    free * LN_2 + sum - n * q.ln() - lgamma(w.homogeneous_dim() / q + 1.0)
}

fn check_p(p: f64) -> Result<()> {
    if p.is_finite() && p > 1.0 {
        Ok(())
    } else {
        Err(domain(format!("exponent p must satisfy p > 1, got {p}")))
    }
}

/// `ln 𝓛_p` for homogeneous dimension `d` and unit-ball measure `exp(ln_m)`:
/// `(p/d)((p-1)/e)^{p-1} [Γ(d/p' + 1) m]^{-p/d}`.
pub fn ln_log_sobolev_constant(p: f64, d: f64, ln_m: f64) -> Result<f64> {
    check_p(p)?;
    if !(d > 0.0) {
        return Err(domain("homogeneous dimension must be positive"));
    }
    let pprime = p / (p - 1.0);
    Ok((p / d).ln() + (p - 1.0) * ((p - 1.0).ln() - 1.0) - (p / d) * (lgamma(d / pprime + 1.0) + ln_m))
}

/// `𝓛_p(A)` for the Euclidean norm. At `p = 2` this is `2 / (Π(A) e D)`.
pub fn sharp_ls_constant(p: f64, w: &MonomialWeight) -> Result<f64> {
    Ok(ln_log_sobolev_constant(p, w.homogeneous_dim(), w.ln_ball_measure())?.exp())
}

/// `𝓛_p(A)` with `m(B_A)` taken with respect to an arbitrary norm.
pub fn sharp_ls_constant_for_norm(p: f64, w: &MonomialWeight, norm: &NormSpec) -> Result<f64> {
    let ln_m = ln_weighted_ball_measure(norm, w)?;
    Ok(ln_log_sobolev_constant(p, w.homogeneous_dim(), ln_m)?.exp())
}

/// Unweighted `𝓛_p` on ℝⁿ for a norm whose unit ball has volume `m_ball`.
pub fn unweighted_ls_constant(p: f64, m_ball: f64, n: usize) -> Result<f64> {
    if !(m_ball.is_finite() && m_ball > 0.0) {
        return Err(domain(format!("ball volume must be positive, got {m_ball}")));
    }
    if n == 0 {
        return Err(domain("dimension must be positive"));
    }
    Ok(ln_log_sobolev_constant(p, n as f64, m_ball.ln())?.exp())
}

/// `ln C_{p,n,A}` of the sharp weighted Sobolev inequality (Euclidean norm),
/// from the homogeneous dimension and `ln m(B_A)`.
pub fn ln_sobolev_constant_from_parts(p: f64, d: f64, ln_m: f64) -> Result<f64> {
    check_p(p)?;
    if !(p < d) {
        return Err(regime(format!("the Sobolev inequality needs p < D, got p = {p}, D = {d}")));
    }
    let pprime = p / (p - 1.0);
    Ok((-1.0 / p - 1.0 / d) * d.ln()
        + ((p - 1.0) / (d - p)).ln() / pprime
        + (pprime.ln() + lgamma(d) - lgamma(d / p) - lgamma(d / pprime) - ln_m) / d)
}

pub fn ln_sharp_sobolev_constant(p: f64, w: &MonomialWeight) -> Result<f64> {
    ln_sobolev_constant_from_parts(p, w.homogeneous_dim(), w.ln_ball_measure())
}

/// `C_{p,n,A}`; errors when `p ≥ D`.
pub fn sharp_sobolev_constant(p: f64, w: &MonomialWeight) -> Result<f64> {
    Ok(ln_sharp_sobolev_constant(p, w)?.exp())
}

/// Which of the two Gaussian-type integrals to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Moment {
    /// `∫ e^{-t|x-x0|^α} x^A dx`
    Plain,
    /// `∫ e^{-t|x-x0|^α} |x-x0|^α x^A dx`
    Power,
}

pub fn ln_gaussian_integral(alpha: f64, t: f64, w: &MonomialWeight, center: &[f64], moment: Moment) -> Result<f64> {
    if !(alpha.is_finite() && alpha > 0.0) || !(t.is_finite() && t > 0.0) {
        return Err(domain(format!("need alpha > 0 and t > 0, got alpha = {alpha}, t = {t}")));
    }
    w.check_center(center)?;
    let d = w.homogeneous_dim();
    let base = -(d / alpha) * t.ln() + lgamma(d / alpha + 1.0) - lgamma(d / 2.0 + 1.0) + 0.5 * d * w.ln_pi();
    Ok(match moment {
        Moment::Plain => base,
        Moment::Power => base + (d / alpha).ln() - t.ln(),
    })
}

/// Closed forms for `∫ e^{-t|x-x0|^α} x^A dx` and its `|x-x0|^α` moment.
pub fn gaussian_integral(alpha: f64, t: f64, w: &MonomialWeight, center: &[f64], moment: Moment) -> Result<f64> {
    Ok(ln_gaussian_integral(alpha, t, w, center, moment)?.exp())
}

pub fn ln_cauchy_integral(alpha: f64, beta: f64, sigma: f64, w: &MonomialWeight, center: &[f64]) -> Result<f64> {
    if !(alpha.is_finite() && alpha > 1.0) {
        return Err(domain(format!("need alpha > 1, got {alpha}")));
    }
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(domain(format!("need sigma > 0, got {sigma}")));
    }
    let d = w.homogeneous_dim();
    if !(alpha * beta > d) {
        return Err(regime(format!("integral diverges: alpha * beta = {} <= D = {d}", alpha * beta)));
    }
    w.check_center(center)?;
    Ok((2.0 / alpha).ln() + 0.5 * d * w.ln_pi() - (d / alpha) * sigma.ln() + lgamma(d / alpha) - lgamma(d / 2.0)
        + lgamma(beta - d / alpha)
        - lgamma(beta))
}

/// `∫ (1 + σ|x-x0|^α)^{-β} x^A dx`, finite for `αβ > D`.
pub fn cauchy_integral(alpha: f64, beta: f64, sigma: f64, w: &MonomialWeight, center: &[f64]) -> Result<f64> {
    Ok(ln_cauchy_integral(alpha, beta, sigma, w, center)?.exp())
}

/// `ln A_l`, the volume of the unit ball of `(Σ‖xⁱ‖^{p'})^{1/p'}` on
/// `(ℝⁿ)^l`, from `ln m(Bⁿ)`.
pub fn ln_product_ball_volume(n: usize, copies: usize, pprime: f64, ln_m_ball: f64) -> Result<f64> {
    if n == 0 || copies == 0 {
        return Err(domain("product ball needs n >= 1 and l >= 1"));
    }
    if !(pprime.is_finite() && pprime > 1.0) {
        return Err(domain(format!("need p' > 1, got {pprime}")));
    }
    let (nf, lf) = (n as f64, copies as f64);
    let ratio = nf / pprime;
    Ok((lf - 1.0) * ratio.ln() + lf * ln_m_ball + lf * lgamma(ratio) - lf.ln() - lgamma(nf * lf / pprime))
}

pub fn product_ball_volume(n: usize, copies: usize, pprime: f64, m_ball: f64) -> Result<f64> {
    if !(m_ball.is_finite() && m_ball > 0.0) {
        return Err(domain(format!("ball volume must be positive, got {m_ball}")));
    }
    Ok(ln_product_ball_volume(n, copies, pprime, m_ball.ln())?.exp())
}

/// `ln ∫_{ℝ^N} (1 + σ|||z-z0|||^α)^{-β} dz` given `ln A_l`.
pub fn ln_product_cauchy_integral(alpha: f64, beta: f64, sigma: f64, big_n: usize, ln_a_l: f64) -> Result<f64> {
    if !(alpha.is_finite() && alpha > 0.0) || !(sigma.is_finite() && sigma > 0.0) {
        return Err(domain(format!("need alpha > 0 and sigma > 0, got alpha = {alpha}, sigma = {sigma}")));
    }
    let nf = big_n as f64;
    if big_n == 0 || !(alpha * beta > nf) {
        return Err(regime(format!("integral diverges: alpha * beta = {} <= N = {big_n}", alpha * beta)));
    }
    Ok(nf.ln() + ln_a_l + lgamma(nf / alpha) + lgamma(beta - nf / alpha) - alpha.ln() - lgamma(beta) - (nf / alpha) * sigma.ln())
}

pub fn product_cauchy_integral(alpha: f64, beta: f64, sigma: f64, big_n: usize, a_l: f64) -> Result<f64> {
    if !(a_l.is_finite() && a_l > 0.0) {
        return Err(domain(format!("A_l must be positive, got {a_l}")));
    }
    Ok(ln_product_cauchy_integral(alpha, beta, sigma, big_n, a_l.ln())?.exp())
}
