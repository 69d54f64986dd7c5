//! Tensor products `F(z) = f(x¹)···f(xˡ)`: mass and energy factorize, and
//! the product-norm ball has the closed-form volume.
//!
//! ```text
//! cargo run --release --example product_identities
//! ```

use sharp_logsobolev::extremals::make_log_sobolev_extremal;
use sharp_logsobolev::functionals::mass;
use sharp_logsobolev::monomial::MonomialWeight;
use sharp_logsobolev::norms::NormSpec;
use sharp_logsobolev::quadrature::{FnField, QuadratureSpec, ScalarField};
use sharp_logsobolev::tensorization::{product_volume_check, verify_product_identities};
use sharp_logsobolev::Result;

fn unit_mass(profile: impl Fn(f64) -> f64 + Send + Sync + Copy + 'static, p: f64, w: &MonomialWeight, spec: &QuadratureSpec) -> Result<FnField> {
    let scale = mass(&FnField::new(1, move |x| profile(x[0])), p, w, spec)?.powf(-1.0 / p);
    Ok(FnField::new(1, move |x| scale * profile(x[0])))
}

fn main() -> Result<()> {
    let spec = QuadratureSpec::default();
    let w = MonomialWeight::unweighted(1);
    let bump = |x: f64| (1.0 + 0.5 * x.sin()) * (-x * x / 1.3).exp();

    println!("{:<12} {:>3} {:>14} {:>14} {:>14} {:>14}", "f", "p", "int |F|^t", "(int |f|^t)^l", "energy of F", "l * energy f");
    for p in [2.0, 3.0] {
        let gaussian = make_log_sobolev_extremal(p, 1.0, vec![0.0], &w, NormSpec::Euclidean)?;
        let other = unit_mass(bump, p, &w, &spec)?;
        for (name, f) in [("extremal", &gaussian as &dyn ScalarField), ("perturbed", &other as &dyn ScalarField)] {
            let r = verify_product_identities(f, 2, p, p, &w, &NormSpec::Euclidean, &spec)?;
            println!(
                "{name:<12} {p:>3} {:>14.10} {:>14.10} {:>14.10} {:>14.10}   residual {:.1e}",
                r.mass_product,
                r.mass_factorized,
                r.energy_product,
                r.energy_factorized,
                r.max_residual()
            );
        }
    }

    println!("\nproduct-ball volumes, closed form against indicator quadrature");
    for (n, l, pprime) in [(1, 2, 2.0), (1, 2, 3.0), (2, 2, 2.0), (1, 3, 1.5)] {
        let (closed, quadrature) = product_volume_check(n, l, pprime, 24)?;
        println!("  n = {n}, l = {l}, p' = {pprime}: {closed:.10} vs {quadrature:.10} (rel {:.1e})", (quadrature / closed - 1.0).abs());
    }
    Ok(())
}
