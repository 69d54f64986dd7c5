//! Gamma-family special functions on the positive real axis.
//!
//! Every constant in this crate is a ratio of Gamma values whose arguments
//! grow linearly with the tensorization depth, so callers work with
//! [`log_gamma`] and exponentiate only at the end.


use crate::error::{domain, Result};

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Below this argument the Stirling series is shifted upwards by recurrence.
const SERIES_THRESHOLD: f64 = 10.0;

/// B_{2k} / (2k (2k - 1)) for k = 1..=8.
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

fn check_positive(s: f64, name: &str) -> Result<()> {
    if s.is_finite() && s > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("{name} requires a finite positive argument, got {s}")))
    }
}

/// Natural logarithm of the Gamma function for `s > 0`.
///
/// Uses the asymptotic Stirling series with eight Bernoulli terms for
/// `s >= 10`; smaller arguments are shifted up with `Γ(s + 1) = s Γ(s)`.
pub fn log_gamma(s: f64) -> Result<f64> {
    check_positive(s, "log_gamma")?;
    Ok(log_gamma_unchecked(s))
}

pub(crate) fn log_gamma_unchecked(s: f64) -> f64 {
    if s >= SERIES_THRESHOLD {
        return stirling_series(s);
    }
    let mut shifted = s;
    let mut product = 1.0;
    while shifted < SERIES_THRESHOLD {
        product *= shifted;
        shifted += 1.0;
    }
    stirling_series(shifted) - product.ln()
}

fn stirling_series(s: f64) -> f64 {
    let inv = 1.0 / s;
    let inv2 = inv * inv;
    let mut correction = 0.0;
    let mut power = inv;
    for c in STIRLING_COEFFS {
        correction += c * power;
        power *= inv2;
    }
    (s - 0.5) * s.ln() - s + HALF_LN_TWO_PI + correction
}

/// `Γ(s)`; overflows to an error for `s` beyond about 171.
pub fn gamma(s: f64) -> Result<f64> {
    let value = log_gamma(s)?.exp();
    if value.is_finite() {
        Ok(value)
    } else {
        Err(domain(format!("gamma({s}) overflows f64; use log_gamma")))
    }
}

/// `ln(√(2π) s^{s-1/2} e^{-s})`.
pub fn ln_stirling_approx(s: f64) -> Result<f64> {
    check_positive(s, "stirling_approx")?;
    Ok(HALF_LN_TWO_PI + (s - 0.5) * s.ln() - s)
}

/// Leading Stirling approximation `√(2π) s^{s-1/2} e^{-s}` of `Γ(s)`.
///
/// Returns an error when the value overflows; [`ln_stirling_approx`] is the
/// log-space variant.
pub fn stirling_approx(s: f64) -> Result<f64> {
    let value = ln_stirling_approx(s)?.exp();
    if value.is_finite() {
        Ok(value)
    } else {
        Err(domain(format!("stirling_approx({s}) overflows f64; use ln_stirling_approx")))
    }
}

/// `ln B(x, y) = ln Γ(x) + ln Γ(y) - ln Γ(x + y)`.
pub fn ln_beta(x: f64, y: f64) -> Result<f64> {
    check_positive(x, "beta_fn")?;
    check_positive(y, "beta_fn")?;
    Ok(log_gamma_unchecked(x) + log_gamma_unchecked(y) - log_gamma_unchecked(x + y))
}

/// The Beta function, evaluated in log space.
pub fn beta_fn(x: f64, y: f64) -> Result<f64> {
    Ok(ln_beta(x, y)?.exp())
}

/// `ln Γ(a) - ln Γ(b)`.
pub fn ln_gamma_ratio(a: f64, b: f64) -> Result<f64> {
    Ok(log_gamma(a)? - log_gamma(b)?)
}
