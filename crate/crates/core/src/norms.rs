//! Norms on ℝⁿ and on product spaces ℝ^{nl}, with closed-form dual norms and
//! gradients.
//!
//! Every shipped variant is an absolute norm (invariant under flipping the
//! sign of any coordinate), which the ball-volume formulas and the indicator
//! quadrature in [`crate::monomial`] and [`crate::tensorization`] rely on.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum NormSpec {
    Euclidean,
    /// `(Σ |xᵢ|^q)^{1/q}` with `q ≥ 1`.
    QNorm { q: f64 },
    /// `(Σ |wᵢ xᵢ|^q)^{1/q}`.
    DiagonalWeighted { weights: Vec<f64>, q: f64 },
    /// `|||z||| = (Σᵢ ‖xⁱ‖^e)^{1/e}` over `copies` consecutive blocks of `z`.
    Product { base: Box<NormSpec>, copies: usize, exponent: f64 },
}

/// Hölder conjugate `q / (q - 1)`; `q = 1` maps to `+∞`.
pub fn conjugate_exponent(q: f64) -> f64 {
    if q == 1.0 {
        f64::INFINITY
    } else if q.is_infinite() {
        1.0
    } else {
        q / (q - 1.0)
    }
}

fn lq(x: &[f64], q: f64) -> f64 {
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return scale;
    }
    if q.is_infinite() {
        return scale;
    }
    if q == 1.0 {
        return x.iter().map(|v| v.abs()).sum();
    }
    if q == 2.0 {
        return scale * x.iter().map(|v| (v / scale).powi(2)).sum::<f64>().sqrt();
    }
    scale * x.iter().map(|v| (v.abs() / scale).powf(q)).sum::<f64>().powf(1.0 / q)
}

fn lq_gradient(x: &[f64], q: f64) -> Result<Vec<f64>> {
    let value = lq(x, q);
    if value == 0.0 {
        return Err(Error::NonDifferentiable(x.to_vec()));
    }
    if q == 1.0 {
        if x.iter().any(|&v| v == 0.0) {
            return Err(Error::NonDifferentiable(x.to_vec()));
        }
        return Ok(x.iter().map(|v| v.signum()).collect());
    }
    Ok(x
        .iter()
        .map(|&v| {
            if v == 0.0 {
                0.0
            } else {
                v.signum() * (v.abs() / value).powf(q - 1.0)
            }
        })
        .collect())
}

impl NormSpec {
    pub fn euclidean() -> Self {
        NormSpec::Euclidean
    }

    pub fn q_norm(q: f64) -> Result<Self> {
        let spec = NormSpec::QNorm { q };
        spec.validate()?;
        Ok(spec)
    }

    pub fn diagonal(weights: Vec<f64>, q: f64) -> Result<Self> {
        let spec = NormSpec::DiagonalWeighted { weights, q };
        spec.validate()?;
        Ok(spec)
    }

    pub fn product(base: NormSpec, copies: usize, exponent: f64) -> Result<Self> {
        let spec = NormSpec::Product { base: Box::new(base), copies, exponent };
        spec.validate()?;
        Ok(spec)
    }

    /// Checks the parameter constraints of every variant.
    pub fn validate(&self) -> Result<()> {
        match self {
            NormSpec::Euclidean => Ok(()),
            NormSpec::QNorm { q } => check_q(*q),
            NormSpec::DiagonalWeighted { weights, q } => {
                check_q(*q)?;
                if weights.is_empty() || weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
                    return Err(domain("diagonal weights must be finite and positive"));
                }
                Ok(())
            }
            NormSpec::Product { base, copies, exponent } => {
                if *copies == 0 {
                    return Err(domain("product norm needs at least one copy"));
                }
                if !(exponent.is_finite() && *exponent > 1.0) {
                    return Err(domain(format!("product exponent must exceed 1, got {exponent}")));
                }
                base.validate()
            }
        }
    }

    /// The dimension this norm is tied to, if any. Euclidean and q-norms
    /// apply in every dimension.
    pub fn fixed_dim(&self) -> Option<usize> {
        match self {
            NormSpec::Euclidean | NormSpec::QNorm { .. } => None,
            NormSpec::DiagonalWeighted { weights, .. } => Some(weights.len()),
            NormSpec::Product { base, copies, .. } => base.fixed_dim().map(|n| n * copies),
        }
    }

    /// True when the norm is `|·|` in every dimension.
    pub fn is_euclidean(&self) -> bool {
        match self {
            NormSpec::Euclidean => true,
            NormSpec::QNorm { q } => *q == 2.0,
            NormSpec::DiagonalWeighted { weights, q } => *q == 2.0 && weights.iter().all(|w| *w == 1.0),
            NormSpec::Product { base, exponent, .. } => *exponent == 2.0 && base.is_euclidean(),
        }
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if let Some(expected) = self.fixed_dim() {
            if expected != len {
                return Err(Error::DimensionMismatch { expected, got: len });
            }
        }
        if let NormSpec::Product { copies, .. } = self {
            if len == 0 || len % copies != 0 {
                return Err(Error::DimensionMismatch { expected: copies * (len / copies).max(1), got: len });
            }
        }
        Ok(())
    }

    pub fn norm(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x.len())?;
        Ok(self.norm_unchecked(x))
    }

    pub(crate) fn norm_unchecked(&self, x: &[f64]) -> f64 {
        match self {
            NormSpec::Euclidean => lq(x, 2.0),
            NormSpec::QNorm { q } => lq(x, *q),
            NormSpec::DiagonalWeighted { weights, q } => {
                let scaled: Vec<f64> = x.iter().zip(weights).map(|(v, w)| v * w).collect();
                lq(&scaled, *q)
            }
            NormSpec::Product { base, copies, exponent } => {
                let block = x.len() / copies;
                let norms: Vec<f64> = x.chunks(block).map(|b| base.norm_unchecked(b)).collect();
                lq(&norms, *exponent)
            }
        }
    }

    /// `‖ξ‖_* = sup_{‖x‖ ≤ 1} x·ξ`, in closed form for every variant.
    pub fn dual_norm(&self, xi: &[f64]) -> Result<f64> {
        self.check_dim(xi.len())?;
        Ok(self.dual_unchecked(xi))
    }

    pub(crate) fn dual_unchecked(&self, xi: &[f64]) -> f64 {
        match self {
            NormSpec::Euclidean => lq(xi, 2.0),
            NormSpec::QNorm { q } => lq(xi, conjugate_exponent(*q)),
            NormSpec::DiagonalWeighted { weights, q } => {
                let scaled: Vec<f64> = xi.iter().zip(weights).map(|(v, w)| v / w).collect();
                lq(&scaled, conjugate_exponent(*q))
            }
            NormSpec::Product { base, copies, exponent } => {
                let block = xi.len() / copies;
                let duals: Vec<f64> = xi.chunks(block).map(|b| base.dual_unchecked(b)).collect();
                lq(&duals, conjugate_exponent(*exponent))
            }
        }
    }

    /// `∇‖x‖`. Fails at `x = 0` and, for ℓ¹-type norms, on coordinate
    /// hyperplanes.
    pub fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(x.len())?;
        self.gradient_unchecked(x)
    }

    fn gradient_unchecked(&self, x: &[f64]) -> Result<Vec<f64>> {
        match self {
            NormSpec::Euclidean => lq_gradient(x, 2.0),
            NormSpec::QNorm { q } => lq_gradient(x, *q),
            NormSpec::DiagonalWeighted { weights, q } => {
                let scaled: Vec<f64> = x.iter().zip(weights).map(|(v, w)| v * w).collect();
                let g = lq_gradient(&scaled, *q).map_err(|_| Error::NonDifferentiable(x.to_vec()))?;
                Ok(g.iter().zip(weights).map(|(g, w)| g * w).collect())
            }
            NormSpec::Product { base, copies, exponent } => {
                let total = self.norm_unchecked(x);
                if total == 0.0 {
                    return Err(Error::NonDifferentiable(x.to_vec()));
                }
                let block = x.len() / copies;
                let mut out = Vec::with_capacity(x.len());
                for b in x.chunks(block) {
                    let bn = base.norm_unchecked(b);
                    if bn == 0.0 {
                        out.extend(std::iter::repeat(0.0).take(block));
                        continue;
                    }
                    let coef = (bn / total).powf(exponent - 1.0);
                    let g = base.gradient_unchecked(b).map_err(|_| Error::NonDifferentiable(x.to_vec()))?;
                    out.extend(g.into_iter().map(|v| coef * v));
                }
                Ok(out)
            }
        }
    }

    /// Dual norm by direct maximisation of `x·ξ / ‖x‖`, for norms without a
    /// closed-form dual. Projected gradient ascent on the unit sphere.
    ///
    /// Returns the estimate when the tangential gradient falls below `tol`,
    /// otherwise [`Error::DualNotConverged`] with the residual.
    pub fn dual_norm_by_ascent(&self, xi: &[f64], max_iters: usize, tol: f64) -> Result<f64> {
        self.check_dim(xi.len())?;
        if xi.iter().all(|v| *v == 0.0) {
            return Ok(0.0);
        }
        let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
        let normalize = |x: &[f64]| -> Vec<f64> {
            let n = self.norm_unchecked(x);
            x.iter().map(|v| v / n).collect()
        };
        let mut u = normalize(xi);
        let mut value = dot(&u, xi);
        let mut step = 1.0 / lq(xi, 2.0);
        let mut residual = f64::INFINITY;
        for _ in 0..max_iters {
            let g = self.gradient_unchecked(&u)?;
            let along = dot(&u, xi);
            let tangent: Vec<f64> = xi.iter().zip(&g).map(|(x, g)| x - along * g).collect();
            residual = lq(&tangent, 2.0) / lq(xi, 2.0);
            if residual < tol {
                return Ok(value);
            }
            loop {
                let trial: Vec<f64> = u.iter().zip(&tangent).map(|(u, t)| u + step * t).collect();
                let trial = normalize(&trial);
                let trial_value = dot(&trial, xi);
                if trial_value >= value {
                    u = trial;
                    value = trial_value;
                    step *= 1.5;
                    break;
                }
                step *= 0.5;
                if step < 1e-300 {
                    return Err(Error::DualNotConverged { estimate: value, residual });
                }
            }
        }
        Err(Error::DualNotConverged { estimate: value, residual })
    }
}

fn check_q(q: f64) -> Result<()> {
    if q.is_finite() && q >= 1.0 {
        Ok(())
    } else {
        Err(domain(format!("q-norm exponent must be finite and >= 1, got {q}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn shipped() -> Vec<NormSpec> {
        vec![
            NormSpec::Euclidean,
            NormSpec::q_norm(1.0).unwrap(),
            NormSpec::q_norm(1.5).unwrap(),
            NormSpec::q_norm(3.0).unwrap(),
            NormSpec::diagonal(vec![0.5, 2.0, 1.5, 1.0], 3.0).unwrap(),
            NormSpec::product(NormSpec::Euclidean, 2, 2.0).unwrap(),
            NormSpec::product(NormSpec::q_norm(3.0).unwrap(), 2, 1.5).unwrap(),
        ]
    }

    fn sample(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
        (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect()
    }

    #[test]
    fn norm_examples() {
        assert_eq!(NormSpec::Euclidean.norm(&[3.0, 4.0]).unwrap(), 5.0);
        assert_eq!(NormSpec::q_norm(1.0).unwrap().norm(&[1.0, -2.0, 3.0]).unwrap(), 6.0);
        let x = [0.3, -1.2];
        let z = [x[0], x[1], x[0], x[1]];
        let product = NormSpec::product(NormSpec::Euclidean, 2, 2.0).unwrap();
        let expected = 2f64.sqrt() * NormSpec::Euclidean.norm(&x).unwrap();
        assert!((product.norm(&z).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn dual_examples() {
        assert_eq!(NormSpec::Euclidean.dual_norm(&[3.0, 4.0]).unwrap(), 5.0);
        assert_eq!(NormSpec::q_norm(1.0).unwrap().dual_norm(&[1.0, -2.0]).unwrap(), 2.0);
        // product dual is the p-combination of blockwise duals, p = conjugate of the exponent
        let base = NormSpec::q_norm(3.0).unwrap();
        let product = NormSpec::product(base.clone(), 2, 1.5).unwrap();
        let xi = [0.4, -1.0, 2.0, 0.1];
        let d1 = base.dual_norm(&xi[..2]).unwrap();
        let d2 = base.dual_norm(&xi[2..]).unwrap();
        let expected = (d1.powi(3) + d2.powi(3)).powf(1.0 / 3.0);
        assert!((product.dual_norm(&xi).unwrap() - expected).abs() < 1e-14);
    }

    #[test]
    fn gradient_examples() {
        assert_eq!(NormSpec::Euclidean.gradient(&[3.0, 4.0]).unwrap(), vec![0.6, 0.8]);
        let x = [0.7, -1.9, 0.2];
        let g2 = NormSpec::q_norm(2.0).unwrap().gradient(&x).unwrap();
        let ge = NormSpec::Euclidean.gradient(&x).unwrap();
        for (a, b) in g2.iter().zip(&ge) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn gradient_matches_central_differences() {
        let h = 1e-5;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut points = vec![vec![1.0, 1.0]];
        for _ in 0..20 {
            points.push(sample(&mut rng, 4));
        }
        for spec in shipped() {
            for x in &points {
                if spec.fixed_dim().is_some_and(|d| d != x.len()) {
                    continue;
                }
                if matches!(spec, NormSpec::Product { .. }) && x.len() % 2 != 0 {
                    continue;
                }
                let g = spec.gradient(x).unwrap();
                for i in 0..x.len() {
                    let mut plus = x.clone();
                    let mut minus = x.clone();
                    plus[i] += h;
                    minus[i] -= h;
                    let fd = (spec.norm(&plus).unwrap() - spec.norm(&minus).unwrap()) / (2.0 * h);
                    assert!((fd - g[i]).abs() < 1e-6, "{spec:?} at {x:?}: fd {fd} vs {}", g[i]);
                }
            }
        }
    }

    #[test]
    fn non_differentiable_points_are_reported() {
        assert!(matches!(NormSpec::Euclidean.gradient(&[0.0, 0.0]), Err(Error::NonDifferentiable(_))));
        let l1 = NormSpec::q_norm(1.0).unwrap();
        assert!(matches!(l1.gradient(&[0.0, 1.0]), Err(Error::NonDifferentiable(_))));
        // q > 1 is differentiable on the coordinate hyperplanes
        assert!(NormSpec::q_norm(3.0).unwrap().gradient(&[0.0, 1.0]).is_ok());
    }

    #[test]
    fn dimension_mismatch() {
        let diag = NormSpec::diagonal(vec![1.0, 2.0], 2.0).unwrap();
        assert_eq!(diag.norm(&[1.0]), Err(Error::DimensionMismatch { expected: 2, got: 1 }));
        let product = NormSpec::product(NormSpec::Euclidean, 2, 2.0).unwrap();
        assert!(product.norm(&[1.0, 2.0, 3.0]).is_err());
    }

    #[test]
    fn invalid_parameters() {
        assert!(NormSpec::q_norm(0.5).is_err());
        assert!(NormSpec::diagonal(vec![1.0, -1.0], 2.0).is_err());
        assert!(NormSpec::product(NormSpec::Euclidean, 0, 2.0).is_err());
        assert!(NormSpec::product(NormSpec::Euclidean, 2, 1.0).is_err());
    }

    #[test]
    fn holder_inequality_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for spec in shipped() {
            for _ in 0..1000 {
                let x = sample(&mut rng, 4);
                let xi = sample(&mut rng, 4);
                let dot: f64 = x.iter().zip(&xi).map(|(a, b)| a * b).sum();
                assert!(dot <= spec.norm(&x).unwrap() * spec.dual_norm(&xi).unwrap() + 1e-10);
            }
        }
    }

    #[test]
    fn bidual_of_q_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for q in [1.2, 1.5, 2.0, 3.0, 7.5] {
            let primal = NormSpec::q_norm(q).unwrap();
            let dual = NormSpec::q_norm(conjugate_exponent(q)).unwrap();
            for _ in 0..100 {
                let x = sample(&mut rng, 3);
                let bidual = lq(&x, conjugate_exponent(conjugate_exponent(q)));
                assert!((bidual - primal.norm(&x).unwrap()).abs() <= 1e-10 * bidual);
                assert!((dual.dual_norm(&x).unwrap() - primal.norm(&x).unwrap()).abs() <= 1e-10 * bidual);
            }
        }
    }

    #[test]
    fn ascent_fallback_certifies_closed_forms() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let specs = [
            NormSpec::Euclidean,
            NormSpec::q_norm(3.0).unwrap(),
            NormSpec::q_norm(1.5).unwrap(),
            NormSpec::diagonal(vec![0.5, 2.0, 1.5], 3.0).unwrap(),
        ];
        for spec in specs {
            for _ in 0..10 {
                let xi = sample(&mut rng, 3);
                let numeric = spec.dual_norm_by_ascent(&xi, 20_000, 1e-7).unwrap();
                let exact = spec.dual_norm(&xi).unwrap();
                assert!((numeric - exact).abs() <= 1e-8 * exact, "{spec:?}: {numeric} vs {exact}");
            }
        }
    }

    #[test]
    fn json_descriptor() {
        let spec: NormSpec = serde_json::from_str(r#"{"variant": "q_norm", "q": 3.0}"#).unwrap();
        assert_eq!(spec, NormSpec::QNorm { q: 3.0 });
        let spec: NormSpec =
            serde_json::from_str(r#"{"variant": "diagonal_weighted", "q": 2.0, "weights": [1.0, 2.0]}"#).unwrap();
        assert_eq!(spec.fixed_dim(), Some(2));
        let product = NormSpec::product(NormSpec::Euclidean, 3, 1.5).unwrap();
        let back: NormSpec = serde_json::from_str(&serde_json::to_string(&product).unwrap()).unwrap();
        assert_eq!(back, product);
    }

    proptest! {
        #[test]
        fn homogeneity_and_euler_identity(
            x in prop::collection::vec(-5.0f64..5.0, 4),
            lambda in -10.0f64..10.0,
            which in 0usize..7,
        ) {
            let spec = &shipped()[which];
            let n = spec.norm(&x).unwrap();
            let scaled: Vec<f64> = x.iter().map(|v| lambda * v).collect();
            prop_assert!((spec.norm(&scaled).unwrap() - lambda.abs() * n).abs() <= 1e-12 * (1.0 + lambda.abs() * n));
            prop_assert!(n > 0.0 || x.iter().all(|v| *v == 0.0));
            if let Ok(g) = spec.gradient(&x) {
                let euler: f64 = x.iter().zip(&g).map(|(a, b)| a * b).sum();
                prop_assert!((euler - n).abs() <= 1e-10 * n.max(1.0));
                if lambda > 0.0 {
                    let gs = spec.gradient(&scaled).unwrap();
                    for (a, b) in g.iter().zip(&gs) {
                        prop_assert!((a - b).abs() <= 1e-10);
                    }
                }
                // the dual norm of the gradient of a norm is one
                prop_assert!((spec.dual_norm(&g).unwrap() - 1.0).abs() <= 1e-10);
            }
        }

        #[test]
        fn triangle_inequality(
            x in prop::collection::vec(-5.0f64..5.0, 4),
            y in prop::collection::vec(-5.0f64..5.0, 4),
            which in 0usize..7,
        ) {
            let spec = &shipped()[which];
            let sum: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
            prop_assert!(spec.norm(&sum).unwrap() <= spec.norm(&x).unwrap() + spec.norm(&y).unwrap() + 1e-12);
        }
    }
}
