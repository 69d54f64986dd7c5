//! Searching for deficit minimizers: the stretched-exponential family finds
//! the exponent `p'`, and a free radial spline finds the Gaussian.
//!
//! ```text
//! cargo run --release --example minimize_deficit
//! ```

use sharp_logsobolev::minimizer::{deficit_landscape, minimize_deficit, slice_grid, write_landscape_csv, MinimizeOptions, ProfileFamily};
use sharp_logsobolev::monomial::MonomialWeight;
use sharp_logsobolev::norms::{conjugate_exponent, NormSpec};
use sharp_logsobolev::quadrature::QuadratureSpec;
use sharp_logsobolev::Result;

fn main() -> Result<()> {
    let opts = MinimizeOptions { seed: 11, ..MinimizeOptions::default() };
    let family = ProfileFamily::stretched_exponential(1, 3.5, 1.0)?;

    for (p, a, norm) in [(2.0, vec![2.0], NormSpec::Euclidean), (3.0, vec![0.0], NormSpec::q_norm(2.0)?)] {
        let w = MonomialWeight::new(a.clone())?;
        let r = minimize_deficit(&family, p, &w, &norm, &opts)?;
        let qs: Vec<String> = r.restarts.iter().map(|s| format!("{:.5}", s.theta_star[0])).collect();
        println!(
            "p = {p}, A = {a:?}: q* = {:.6} (p' = {:.6}), deficit* = {:.2e}, restarts q* = [{}]",
            r.theta_star[0],
            conjugate_exponent(p),
            r.deficit_star,
            qs.join(", ")
        );
    }

    let spline = ProfileFamily::radial_spline(1, 8, 4.0)?;
    let w = MonomialWeight::new(vec![2.0])?;
    let r = minimize_deficit(&spline, 2.0, &w, &NormSpec::Euclidean, &MinimizeOptions { restarts: 0, ..opts.clone() })?;
    println!(
        "\nspline, p = 2, A = (2): deficit* = {:.2e} after {} iterations, L2 distance to the nearest extremal {:.2e} (sigma = {:.4})",
        r.deficit_star, r.iterations, r.distance_to_extremal, r.best_fit_sigma
    );

    println!("\ndeficit along q at sigma = 1, p = 3:");
    let qs: Vec<f64> = (11..26).map(|k| k as f64 / 10.0).collect();
    let cells = deficit_landscape(&family, 3.0, &MonomialWeight::unweighted(1), &NormSpec::Euclidean, &slice_grid(&[2.0, 1.0, 0.0], 0, &qs), &QuadratureSpec::default())?;
    write_landscape_csv(&cells, std::io::stdout())?;
    Ok(())
}
