//! Unit-mass Sobolev extremals on `(ℝⁿ_A)^l` restricted to one block
//! converge to the Gaussian extremal when `b_l = b̃/l`, and collapse under
//! the other two scalings. Also the power-mean limit behind the entropy.
//!
//! ```text
//! cargo run --release --example asymptotic_profiles
//! ```

use sharp_logsobolev::extremals::make_log_sobolev_extremal;
use sharp_logsobolev::monomial::MonomialWeight;
use sharp_logsobolev::norms::NormSpec;
use sharp_logsobolev::quadrature::QuadratureSpec;
use sharp_logsobolev::tensorization::{asymptotic_sequence, degenerate_profile_sup, line_grid, log_mean_limit_check, profile_limit_check, DegenerateRegime};
use sharp_logsobolev::Result;

fn main() -> Result<()> {
    let w = MonomialWeight::unweighted(1);
    let b_tilde = 1.0;
    let ls = [10, 100, 1_000, 10_000, 100_000, 1_000_000];

    let seq = asymptotic_sequence(&w, b_tilde, &ls)?;
    let grid = line_grid(0.0, 3.0, 33);
    let sups = profile_limit_check(&w, b_tilde, &ls, &grid, &[0.0])?;
    println!("{:>9} {:>14} {:>16} {:>14}", "l", "ln a_l", "a_l^(1/l)/target", "sup |f_l - f|");
    for (k, l) in seq.l.iter().enumerate() {
        println!("{l:>9} {:>14.6} {:>16.10} {:>14.3e}", seq.ln_a_l[k], seq.ratios[k], sups[k]);
    }

    println!("\ncollapsing scalings, sup over the grid away from the center");
    for regime in [DegenerateRegime::Growing(1.0), DegenerateRegime::Constant(1.0)] {
        let values: Vec<String> = [100, 1_000, 10_000]
            .iter()
            .map(|&l| degenerate_profile_sup(&w, regime, l, &grid, &[0.0]).map(|s| format!("{s:.2e}")))
            .collect::<Result<_>>()?;
        println!("  {regime:?}: {}", values.join("  "));
    }

    println!("\n(int |g|^t dmu)^(1/t) as t -> 0, dmu = |f|^2 x^A dx, A = (1)");
    let weighted = MonomialWeight::new(vec![1.0])?;
    let f = make_log_sobolev_extremal(2.0, 1.0, vec![0.0], &weighted, NormSpec::Euclidean)?;
    let t: Vec<f64> = (0..7).map(|k| 0.5f64.powi(k)).collect();
    let check = log_mean_limit_check(&f, 2.0, &weighted, &QuadratureSpec::default(), &t)?;
    for (t, m) in check.t.iter().zip(&check.ln_power_means) {
        println!("  t = {t:<9} power mean {:.12}", m.exp());
    }
    println!("  extrapolated {:.12}, geometric mean {:.12}", check.extrapolated, check.geometric_mean);
    Ok(())
}
