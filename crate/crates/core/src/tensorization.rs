//! Tensor powers of functions and constants: product fields on `(ℝⁿ)^l`,
//! the product identities for mass and energy, the Sobolev-constant
//! sequence whose limit is the log-Sobolev constant, and the large-`l`
//! behaviour of the unit-mass Sobolev extremals.
//!
//! Everything indexed by `l` is evaluated in log space; `l` up to `10⁶` and
//! beyond is routine.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, regime, Error, Result};
use crate::functionals::ENTROPY_FLOOR;
use crate::monomial::{ln_product_ball_volume, ln_sobolev_constant_from_parts, sharp_ls_constant, MonomialWeight};
use crate::norms::{conjugate_exponent, NormSpec};
use crate::quadrature::{indicator_ball_volume, integrate_components, QuadratureSpec, ScalarField};
use crate::specialfn::log_gamma_unchecked as lgamma;

/// Largest `n·l` for which product fields are integrated directly.
pub const MAX_QUADRATURE_DIM: usize = 6;

/// `l` copies of a base space `ℝⁿ` with weight `A` and norm `‖·‖`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorConfig {
    pub base_dim: usize,
    pub copies: usize,
    pub p: f64,
    pub base_norm: NormSpec,
    pub weight: MonomialWeight,
}

impl TensorConfig {
    pub fn new(copies: usize, p: f64, base_norm: NormSpec, weight: MonomialWeight) -> Result<Self> {
        if copies == 0 {
            return Err(domain("need at least one copy"));
        }
        if !(p.is_finite() && p > 1.0) {
            return Err(domain(format!("p must exceed 1, got {p}")));
        }
        base_norm.validate()?;
        Ok(Self { base_dim: weight.dim(), copies, p, base_norm, weight })
    }

    /// `B = (A, …, A)`.
    pub fn product_weight(&self) -> Result<MonomialWeight> {
        self.weight.tensor_power(self.copies)
    }

    /// `D_B = l·D`.
    pub fn product_homogeneous_dim(&self) -> f64 {
        self.copies as f64 * self.weight.homogeneous_dim()
    }

    /// `N = n·l`.
    pub fn total_dim(&self) -> usize {
        self.base_dim * self.copies
    }

    /// `|||z||| = (Σ‖xⁱ‖^{p'})^{1/p'}`.
    pub fn product_norm(&self) -> Result<NormSpec> {
        NormSpec::product(self.base_norm.clone(), self.copies, conjugate_exponent(self.p))
    }

    /// `2D_B/(D_B − 2)`, defined when `D_B > 2`.
    pub fn critical_exponent(&self) -> Option<f64> {
        let d = self.product_homogeneous_dim();
        (d > 2.0).then(|| 2.0 * d / (d - 2.0))
    }
}

/// `F(z) = ∏ f(xⁱ)` for `z = (x¹, …, xˡ)`.
pub struct ProductField<'a> {
    base: &'a dyn ScalarField,
    copies: usize,
}

pub fn product_field(f: &dyn ScalarField, copies: usize) -> Result<ProductField<'_>> {
    if copies == 0 {
        return Err(domain("need at least one copy"));
    }
    let total = f.dim() * copies;
    if total > MAX_QUADRATURE_DIM {
        return Err(regime(format!(
            "n·l = {total} exceeds {MAX_QUADRATURE_DIM}; use the factorization identities instead of direct quadrature"
        )));
    }
    Ok(ProductField { base: f, copies })
}

impl ProductField<'_> {
    fn blocks<'z>(&self, z: &'z [f64]) -> impl Iterator<Item = &'z [f64]> {
        z.chunks(self.base.dim())
    }
}

impl ScalarField for ProductField<'_> {
    fn dim(&self) -> usize {
        self.base.dim() * self.copies
    }

    fn value(&self, z: &[f64]) -> f64 {
        self.blocks(z).map(|x| self.base.value(x)).product()
    }

    fn analytic_gradient(&self, z: &[f64]) -> Option<Vec<f64>> {
        let values: Vec<f64> = self.blocks(z).map(|x| self.base.value(x)).collect();
        let mut gradient = Vec::with_capacity(z.len());
        for (i, x) in self.blocks(z).enumerate() {
            let others: f64 = values.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v).product();
            gradient.extend(self.base.gradient(x).into_iter().map(|g| g * others));
        }
        Some(gradient)
    }

    fn breakpoints(&self, axis: usize) -> Vec<f64> {
        self.base.breakpoints(axis % self.base.dim())
    }
}

/// Both sides of the mass identity `∫|F|^t z^B = (∫|f|^t x^A)^l` and the
/// energy identity `∫|||∇F|||_*^p z^B = l ∫‖∇f‖_*^p x^A` (unit-mass `f`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductIdentityReport {
    pub copies: usize,
    pub t: f64,
    pub p: f64,
    pub mass_product: f64,
    pub mass_factorized: f64,
    pub mass_residual: f64,
    pub energy_product: f64,
    pub energy_factorized: f64,
    pub energy_residual: f64,
    pub quadrature_err: f64,
}

impl ProductIdentityReport {
    pub fn max_residual(&self) -> f64 {
        self.mass_residual.max(self.energy_residual)
    }
}

pub fn verify_product_identities(
    f: &dyn ScalarField,
    copies: usize,
    t: f64,
    p: f64,
    w: &MonomialWeight,
    norm: &NormSpec,
    spec: &QuadratureSpec,
) -> Result<ProductIdentityReport> {
    if !(t.is_finite() && t > 0.0) {
        return Err(domain(format!("t must be positive, got {t}")));
    }
    let config = TensorConfig::new(copies, p, norm.clone(), w.clone())?;
    let big = product_field(f, copies)?;
    let b = config.product_weight()?;
    let product_norm = config.product_norm()?;
    let power = |v: f64| if v.abs() < ENTROPY_FLOOR { 0.0 } else { v.abs().powf(t) };

    let base_breaks: Vec<Vec<f64>> = (0..f.dim()).map(|i| f.breakpoints(i)).collect();
    let base = integrate_components(w, spec, &base_breaks, |x| {
        [power(f.value(x)), norm.dual_unchecked(&f.gradient(x)).powf(p), f.value(x).abs().powf(p)]
    })?;
    let big_breaks: Vec<Vec<f64>> = (0..big.dim()).map(|i| big.breakpoints(i)).collect();
    let whole = integrate_components(&b, spec, &big_breaks, |z| {
        [power(big.value(z)), product_norm.dual_unchecked(&big.gradient(z)).powf(p)]
    })?;

    let base_mass = base.values[2];
    if ((base_mass - 1.0).abs()) > 1e-6 {
        return Err(domain(format!("the energy identity needs unit L^p mass, got {base_mass}")));
    }
    let l = copies as f64;
    let mass_factorized = base.values[0].powi(copies as i32);
    let energy_factorized = l * base.values[1];
    let rel = |a: f64, b: f64| ((a - b) / b).abs();
    Ok(ProductIdentityReport {
        copies,
        t,
        p,
        mass_product: whole.values[0],
        mass_factorized,
        mass_residual: rel(whole.values[0], mass_factorized),
        energy_product: whole.values[1],
        energy_factorized,
        energy_residual: rel(whole.values[1], energy_factorized),
        quadrature_err: whole.errs.iter().chain(base.errs.iter()).fold(0.0f64, |m, e| m.max(*e)),
    })
}

/// One row of a convergence table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SequenceRow {
    pub l: u64,
    pub value: f64,
    pub target: f64,
    pub rel_error: f64,
}

impl SequenceRow {
    fn new(l: u64, value: f64, target: f64) -> Self {
        Self { l, value, target, rel_error: (value / target - 1.0).abs() }
    }
}

/// `l·C²_{2,ln,B}` from the closed display
/// `(1/D)(1/Π(A))(1/(lD−2))[Γ(lD)/Γ(lD/2)]^{2/(lD)}`.
pub fn ln_tensorized_constant(w: &MonomialWeight, copies: u64) -> Result<f64> {
    let d = w.homogeneous_dim();
    let ld = copies as f64 * d;
    if !(ld > 2.0) {
        return Err(regime(format!("need l·D > 2, got {ld}")));
    }
    Ok(-d.ln() - w.ln_pi() - (ld - 2.0).ln() + (2.0 / ld) * (lgamma(ld) - lgamma(ld / 2.0)))
}

/// `l·C²_{2,ln,B}` from the sharp Sobolev constant on `ℝ^{ln}_B`, with
/// `m(B_B) = Π(A)^{lD/2}/Γ(lD/2 + 1)`.
pub fn ln_tensorized_constant_direct(w: &MonomialWeight, copies: u64) -> Result<f64> {
    let ld = copies as f64 * w.homogeneous_dim();
    let ln_m = 0.5 * ld * w.ln_pi() - lgamma(0.5 * ld + 1.0);
    Ok((copies as f64).ln() + 2.0 * ln_sobolev_constant_from_parts(2.0, ld, ln_m)?)
}

/// The sequence `l·C²_{2,ln,B}` against its limit `𝓛₂(A)`.
pub fn tensorized_constant_sequence(w: &MonomialWeight, l_list: &[u64]) -> Result<Vec<SequenceRow>> {
    let target = sharp_ls_constant(2.0, w)?;
    l_list
        .par_iter()
        .map(|&l| Ok(SequenceRow::new(l, ln_tensorized_constant(w, l)?.exp(), target)))
        .collect()
}

/// `1, 10, 100, …` up to and including `l_max` (or the last power below it).
pub fn log_grid(l_min: u64, l_max: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut l = l_min.max(1);
    while l <= l_max {
        out.push(l);
        match l.checked_mul(10) {
            Some(next) => l = next,
            None => break,
        }
    }
    out
}

/// `ln a_l` from the unit `L²(z^B)` mass of `a_l(1 + b_l|z − z₀|²)^{1−lD/2}`:
/// `a_l = [(Π(A)/b_l)^{lD/2} Γ(lD/2 − 2)/Γ(lD − 2)]^{−1/2}`.
pub fn ln_unit_mass_amplitude(w: &MonomialWeight, b_l: f64, copies: u64) -> Result<f64> {
    let ld = copies as f64 * w.homogeneous_dim();
    if !(ld > 4.0) {
        return Err(regime(format!("the unit-mass integral needs l·D > 4, got {ld}")));
    }
    if !(b_l.is_finite() && b_l > 0.0) {
        return Err(domain(format!("b_l must be positive, got {b_l}")));
    }
    Ok(-0.5 * (0.5 * ld * (w.ln_pi() - b_l.ln()) + lgamma(0.5 * ld - 2.0) - lgamma(ld - 2.0)))
}

/// `a_l^{1/l}` against `(2D l b_l/(eΠ(A)))^{D/4}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbCheck {
    pub l: u64,
    pub b_l: f64,
    pub ln_a_l: f64,
    pub a_l_root: f64,
    pub target: f64,
    pub ratio: f64,
}

/// The ratio `a_l^{1/l} / (2D l b_l/(eΠ(A)))^{D/4}` with `b_l = b̃/l`.
pub fn asymptotic_ab_check(w: &MonomialWeight, b_tilde: f64, copies: u64) -> Result<AbCheck> {
    let l = copies as f64;
    let b_l = b_tilde / l;
    let ln_a_l = ln_unit_mass_amplitude(w, b_l, copies)?;
    let d = w.homogeneous_dim();
    let ln_root = ln_a_l / l;
    let ln_target = 0.25 * d * ((2.0 * d * l * b_l).ln() - 1.0 - w.ln_pi());
    Ok(AbCheck {
        l: copies,
        b_l,
        ln_a_l,
        a_l_root: ln_root.exp(),
        target: ln_target.exp(),
        ratio: (ln_root - ln_target).exp(),
    })
}

/// `a_l`, `b_l` and the ratio along a list of `l`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticSeq {
    pub l: Vec<u64>,
    pub ln_a_l: Vec<f64>,
    pub b_l: Vec<f64>,
    pub ratios: Vec<f64>,
}

pub fn asymptotic_sequence(w: &MonomialWeight, b_tilde: f64, l_list: &[u64]) -> Result<AsymptoticSeq> {
    let checks: Vec<AbCheck> = l_list.iter().map(|&l| asymptotic_ab_check(w, b_tilde, l)).collect::<Result<_>>()?;
    Ok(AsymptoticSeq {
        l: checks.iter().map(|c| c.l).collect(),
        ln_a_l: checks.iter().map(|c| c.ln_a_l).collect(),
        b_l: checks.iter().map(|c| c.b_l).collect(),
        ratios: checks.iter().map(|c| c.ratio).collect(),
    })
}

/// `ln f_l(x) = ln a_l / l + (1 − lD/2) ln(1 + b_l|x − x₀|²)`.
pub fn ln_block_profile(w: &MonomialWeight, b_l: f64, copies: u64, r2: f64) -> Result<f64> {
    let l = copies as f64;
    let ld = l * w.homogeneous_dim();
    Ok(ln_unit_mass_amplitude(w, b_l, copies)? / l + (1.0 - 0.5 * ld) * (b_l * r2).ln_1p())
}

/// The Gaussian limit `(2Db̃/(eΠ))^{D/4} exp(−(D/2) b̃ |x − x₀|²)`.
pub fn limit_profile(w: &MonomialWeight, b_tilde: f64, r2: f64) -> f64 {
    let d = w.homogeneous_dim();
    (0.25 * d * ((2.0 * d * b_tilde).ln() - 1.0 - w.ln_pi()) - 0.5 * d * b_tilde * r2).exp()
}

fn squared_distance(x: &[f64], center: &[f64]) -> f64 {
    x.iter().zip(center).map(|(a, b)| (a - b) * (a - b)).sum()
}

/// `sup_grid |f_l − f_∞|` for each `l`, with `b_l = b̃/l`.
pub fn profile_limit_check(w: &MonomialWeight, b_tilde: f64, l_list: &[u64], grid: &[Vec<f64>], center: &[f64]) -> Result<Vec<f64>> {
    w.check_center(center)?;
    l_list
        .iter()
        .map(|&l| {
            let b_l = b_tilde / l as f64;
            grid.iter().try_fold(0.0f64, |sup, x| {
                let r2 = squared_distance(x, center);
                let fl = ln_block_profile(w, b_l, l, r2)?.exp();
                Ok(sup.max((fl - limit_profile(w, b_tilde, r2)).abs()))
            })
        })
        .collect()
}

/// The two scalings of `b_l` under which the unit-mass profiles collapse.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DegenerateRegime {
    /// `b_l = c·l`
    Growing(f64),
    /// `b_l = b̄`
    Constant(f64),
}

impl DegenerateRegime {
    pub fn b_l(&self, copies: u64) -> f64 {
        match *self {
            DegenerateRegime::Growing(c) => c * copies as f64,
            DegenerateRegime::Constant(b) => b,
        }
    }
}

/// `sup f_l` over the grid points other than the center.
pub fn degenerate_profile_sup(w: &MonomialWeight, regime_kind: DegenerateRegime, copies: u64, grid: &[Vec<f64>], center: &[f64]) -> Result<f64> {
    w.check_center(center)?;
    let b_l = regime_kind.b_l(copies);
    grid.iter()
        .map(|x| squared_distance(x, center))
        .filter(|r2| *r2 > 0.0)
        .try_fold(0.0f64, |sup, r2| Ok(sup.max(ln_block_profile(w, b_l, copies, r2)?.exp())))
}

/// `count` evenly spaced points on `[c − half_width, c + half_width]`.
pub fn line_grid(center: f64, half_width: f64, count: usize) -> Vec<Vec<f64>> {
    let step = 2.0 * half_width / (count.max(2) - 1) as f64;
    (0..count).map(|k| vec![center - half_width + k as f64 * step]).collect()
}

/// `(∫|g|^t dμ)^{1/t}` against `exp ∫ln|g| dμ` as `t ↓ 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogMeanLimit {
    pub t: Vec<f64>,
    pub ln_power_means: Vec<f64>,
    pub extrapolated: f64,
    pub geometric_mean: f64,
    pub rel_error: f64,
}

/// Polynomial extrapolation of `(xᵢ, yᵢ)` to `x = 0` by Neville's scheme.
pub fn extrapolate_to_zero(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() || x.is_empty() {
        return Err(Error::DimensionMismatch { expected: x.len(), got: y.len() });
    }
    let mut table = y.to_vec();
    for level in 1..x.len() {
        for i in 0..x.len() - level {
            let (xi, xj) = (x[i], x[i + level]);
            table[i] = (xj * table[i] - xi * table[i + 1]) / (xj - xi);
        }
    }
    Ok(table[0])
}

/// The power means of `g = f` under `μ = |f|^p x^A dx / ‖f‖_p^p` along
/// `t_list`, extrapolated to `t = 0` and compared with the geometric mean.
pub fn log_mean_limit_check(f: &dyn ScalarField, p: f64, w: &MonomialWeight, spec: &QuadratureSpec, t_list: &[f64]) -> Result<LogMeanLimit> {
    let breaks: Vec<Vec<f64>> = (0..f.dim()).map(|i| f.breakpoints(i)).collect();
    let density = |x: &[f64]| {
        let a = f.value(x).abs();
        if a < ENTROPY_FLOOR {
            (0.0, 0.0)
        } else {
            (a.powf(p), a.ln())
        }
    };
    let base = integrate_components(w, spec, &breaks, |x| {
        let (mu, ln_g) = density(x);
        [mu, mu * ln_g]
    })?;
    let mass = base.values[0];
    if !(mass > 0.0) {
        return Err(Error::ZeroMass);
    }
    let ln_geometric = base.values[1] / mass;
    let ln_power_means: Vec<f64> = t_list
        .iter()
        .map(|&t| {
            let m = integrate_components(w, spec, &breaks, |x| {
                let (mu, ln_g) = density(x);
                [mu * (t * ln_g).exp()]
            })?;
            Ok((m.values[0] / mass).ln() / t)
        })
        .collect::<Result<_>>()?;
    let extrapolated = extrapolate_to_zero(t_list, &ln_power_means)?;
    Ok(LogMeanLimit {
        t: t_list.to_vec(),
        ln_power_means,
        extrapolated: extrapolated.exp(),
        geometric_mean: ln_geometric.exp(),
        rel_error: (extrapolated - ln_geometric).exp_m1().abs(),
    })
}

/// Closed-form `A_l` against the indicator quadrature of the product ball,
/// for a Euclidean base.
pub fn product_volume_check(n: usize, copies: usize, pprime: f64, nodes_per_unit: usize) -> Result<(f64, f64)> {
    let ln_m = MonomialWeight::unweighted(n).ln_ball_measure();
    let closed = ln_product_ball_volume(n, copies, pprime, ln_m)?.exp();
    let norm = NormSpec::product(NormSpec::Euclidean, copies, pprime)?;
    let quadrature = indicator_ball_volume(&norm, n * copies, nodes_per_unit)?;
    Ok((closed, quadrature))
}

/// Writes rows as CSV with header `l,value,target,rel_error`.
pub fn write_csv<W: Write>(rows: &[SequenceRow], out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in rows {
        writer.serialize(row).map_err(|e| Error::Config(format!("csv: {e}")))?;
    }
    writer.flush().map_err(|e| Error::Config(format!("csv: {e}")))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremals::make_log_sobolev_extremal;
    use crate::monomial::ln_cauchy_integral;
    use crate::quadrature::FnField;

    fn w(a: &[f64]) -> MonomialWeight {
        MonomialWeight::new(a.to_vec()).unwrap()
    }

    #[test]
    fn product_field_basics() {
        let f = FnField::new(1, |x| (-x[0] * x[0]).exp() * (1.0 + 0.3 * x[0]));
        let one = product_field(&f, 1).unwrap();
        for x in [-1.0, 0.2, 2.0] {
            assert_eq!(one.value(&[x]), f.value(&[x]));
        }
        let two = product_field(&f, 2).unwrap();
        for x in [-1.0, 0.2, 2.0] {
            assert!((two.value(&[x, x]) - f.value(&[x]).powi(2)).abs() < 1e-15);
        }
        let g = FnField::new(2, |x| (-(x[0] * x[0] + x[1] * x[1]) / 1.5).exp());
        let gg = product_field(&g, 2).unwrap();
        let z = [0.3, -0.7, 1.1, 0.2];
        let expected = (-z.iter().map(|v| v * v).sum::<f64>() / 1.5).exp();
        assert!((gg.value(&z) - expected).abs() < 1e-15);
        let fd = crate::quadrature::finite_difference_gradient(|y| gg.value(y), &z);
        for (a, b) in gg.gradient(&z).iter().zip(&fd) {
            assert!((a - b).abs() < 1e-8);
        }
        assert!(matches!(product_field(&g, 4), Err(Error::InvalidRegime(_))));
    }

    #[test]
    fn product_identities_hold() {
        let spec = QuadratureSpec::default();
        let weight = w(&[0.0]);
        let gaussian = make_log_sobolev_extremal(2.0, 1.0, vec![0.0], &weight, NormSpec::Euclidean).unwrap();
        let r = verify_product_identities(&gaussian, 2, 2.0, 2.0, &weight, &NormSpec::Euclidean, &spec).unwrap();
        assert!((r.mass_product - 1.0).abs() < 1e-9 && (r.mass_factorized - 1.0).abs() < 1e-9);
        assert!((r.energy_product / (r.energy_factorized / 2.0) - 2.0).abs() < 1e-6);
        assert!(r.max_residual() < 1e-8, "{r:?}");

        let bump = |x: f64| (1.0 + 0.5 * x.sin()) * (-x * x / 1.3).exp();
        let norm_sq = crate::functionals::mass(&FnField::new(1, move |x| bump(x[0])), 3.0, &weight, &spec).unwrap();
        let scale = norm_sq.powf(-1.0 / 3.0);
        let other = FnField::new(1, move |x| scale * bump(x[0]));
        let r = verify_product_identities(&other, 2, 2.0, 3.0, &weight, &NormSpec::Euclidean, &spec).unwrap();
        assert!(r.max_residual() < 1e-8, "{r:?}");
    }

    #[test]
    fn constant_sequence_two_routes_agree() {
        for a in [vec![0.0], vec![2.0], vec![0.5, 1.0], vec![0.0, 0.0, 0.0]] {
            let weight = w(&a);
            for l in [3u64, 10, 1000, 1_000_000] {
                let display = ln_tensorized_constant(&weight, l).unwrap();
                let direct = ln_tensorized_constant_direct(&weight, l).unwrap();
                assert!(((display - direct) / display).abs() < 1e-12, "A = {a:?}, l = {l}");
            }
        }
    }

    #[test]
    fn constant_sequence_converges_monotonically() {
        for a in [vec![0.0], vec![2.0]] {
            let weight = w(&a);
            let rows = tensorized_constant_sequence(&weight, &log_grid(10, 1_000_000)).unwrap();
            assert_eq!(rows.len(), 6);
            for pair in rows.windows(2) {
                assert!(pair[1].rel_error < pair[0].rel_error);
            }
            assert!(rows.last().unwrap().rel_error < 1e-4);
        }
        assert!(ln_tensorized_constant(&w(&[0.0]), 2).is_err());
    }

    #[test]
    fn unit_mass_amplitude_matches_cauchy_integral() {
        let weight = w(&[0.5]);
        for (l, b) in [(4u64, 0.3), (6, 1.0), (9, 2.5)] {
            let b_big = weight.tensor_power(l as usize).unwrap();
            let ld = b_big.homogeneous_dim();
            let ln_int = ln_cauchy_integral(2.0, ld - 2.0, b, &b_big, &vec![0.0; l as usize]).unwrap();
            let ln_a = ln_unit_mass_amplitude(&weight, b, l).unwrap();
            assert!((2.0 * ln_a + ln_int).abs() < 1e-11);
        }
    }

    #[test]
    fn ab_ratio_approaches_one() {
        let weight = w(&[0.0]);
        let errors: Vec<f64> = [100u64, 1000, 10_000, 100_000]
            .iter()
            .map(|&l| (asymptotic_ab_check(&weight, 1.0, l).unwrap().ratio - 1.0).abs())
            .collect();
        for pair in errors.windows(2) {
            assert!(pair[1] < pair[0]);
        }
        assert!(errors[2] < 1e-2);
        assert!((asymptotic_ab_check(&weight, 1.0, 1_000_000).unwrap().ratio - 1.0).abs() < 1e-3);
        assert!(asymptotic_ab_check(&weight, 1.0, 4).is_err());
    }

    #[test]
    fn profiles_converge_to_gaussian() {
        let weight = w(&[0.0]);
        let grid = line_grid(0.0, 3.0, 33);
        let sups = profile_limit_check(&weight, 1.0, &[10, 100, 1000, 10_000], &grid, &[0.0]).unwrap();
        for pair in sups.windows(2) {
            assert!(pair[1] < pair[0]);
        }
        assert!(sups[3] < 1e-3, "{sups:?}");
        let center_value = ln_block_profile(&weight, 1e-6, 1_000_000, 0.0).unwrap().exp();
        assert!((center_value / limit_profile(&weight, 1.0, 0.0) - 1.0).abs() < 1e-5);
        let at_one = ln_block_profile(&weight, 1e-6, 1_000_000, 1.0).unwrap().exp();
        assert!((at_one / limit_profile(&weight, 1.0, 1.0) - 1.0).abs() < 1e-5);
    }

    #[test]
    fn degenerate_scalings_collapse() {
        let weight = w(&[0.0]);
        let grid = line_grid(0.0, 3.0, 33);
        for regime_kind in [DegenerateRegime::Growing(1.0), DegenerateRegime::Constant(1.0)] {
            let sup = degenerate_profile_sup(&weight, regime_kind, 10_000, &grid, &[0.0]).unwrap();
            assert!(sup < 1e-6, "{regime_kind:?}: {sup}");
        }
    }

    #[test]
    fn log_mean_limit() {
        let weight = w(&[1.0]);
        let f = make_log_sobolev_extremal(2.0, 1.0, vec![0.0], &weight, NormSpec::Euclidean).unwrap();
        let t: Vec<f64> = (0..7).map(|k| 0.5f64.powi(k)).collect();
        let check = log_mean_limit_check(&f, 2.0, &weight, &QuadratureSpec::default(), &t).unwrap();
        assert!(check.rel_error < 1e-6, "{check:?}");
        assert!(check.ln_power_means.windows(2).all(|p| p[1] < p[0]));
    }

    #[test]
    fn extrapolation_is_exact_on_polynomials() {
        let x = [1.0, 0.5, 0.25, 0.125];
        let y: Vec<f64> = x.iter().map(|t| 2.0 - 3.0 * t + t * t * t).collect();
        assert!((extrapolate_to_zero(&x, &y).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn product_volumes_match_indicator_quadrature() {
        for (n, l) in [(1, 2), (2, 2), (1, 3)] {
            let (closed, quad) = product_volume_check(n, l, 2.0, 24).unwrap();
            assert!((quad / closed - 1.0).abs() < 1e-4, "n = {n}, l = {l}: {quad} vs {closed}");
        }
        let (closed, quad) = product_volume_check(1, 2, 3.0, 24).unwrap();
        assert!((quad / closed - 1.0).abs() < 1e-4);
    }

    #[test]
    fn csv_layout() {
        let rows = tensorized_constant_sequence(&w(&[0.0]), &[10, 100]).unwrap();
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("l,value,target,rel_error"));
        assert!(lines.next().unwrap().starts_with("10,"));
    }

    #[test]
    fn config_derived_quantities() {
        let c = TensorConfig::new(3, 2.0, NormSpec::Euclidean, w(&[1.0, 0.0])).unwrap();
        assert_eq!(c.product_homogeneous_dim(), 9.0);
        assert_eq!(c.total_dim(), 6);
        assert_eq!(c.product_weight().unwrap().exponents(), &[1.0, 0.0, 1.0, 0.0, 1.0, 0.0]);
        assert!((c.critical_exponent().unwrap() - 18.0 / 7.0).abs() < 1e-15);
        let one = TensorConfig::new(1, 2.0, NormSpec::Euclidean, w(&[0.0])).unwrap();
        assert_eq!(one.critical_exponent(), None);
    }
}
