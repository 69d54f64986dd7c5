//! Deficits of the equality cases, of perturbed profiles and of a seeded
//! random suite.
//!
//! ```text
//! cargo run --release --example deficit_of_extremals
//! ```

use sharp_logsobolev::extremals::{make_log_sobolev_extremal, StretchedExponential};
use sharp_logsobolev::functionals::{deficit, nonnegativity_suite};
use sharp_logsobolev::monomial::MonomialWeight;
use sharp_logsobolev::norms::NormSpec;
use sharp_logsobolev::quadrature::QuadratureSpec;
use sharp_logsobolev::Result;

fn main() -> Result<()> {
    let spec = QuadratureSpec::default();

    println!("equality cases, p = 2, Euclidean");
    for a in [vec![0.0], vec![1.0], vec![2.0], vec![1.0, 1.0]] {
        let w = MonomialWeight::new(a.clone())?;
        for sigma in [0.3, 1.0, 4.0] {
            let f = make_log_sobolev_extremal(2.0, sigma, vec![0.0; w.dim()], &w, NormSpec::Euclidean)?;
            let r = deficit(&f, 2.0, &w, &NormSpec::Euclidean, &spec)?;
            println!("  A = {:<12} sigma = {sigma:<4} deficit = {:+.2e}", format!("{a:?}"), r.deficit);
        }
    }

    println!("\nequality cases, general norms, A = 0 in the plane");
    let plane = MonomialWeight::unweighted(2);
    for p in [1.5, 2.0, 3.0] {
        for q in [1.5, 2.0, 3.0] {
            let norm = NormSpec::q_norm(q)?;
            let f = make_log_sobolev_extremal(p, 1.0, vec![0.3, -0.2], &plane, norm.clone())?;
            let r = deficit(&f, p, &plane, &norm, &spec)?;
            println!("  p = {p:<4} l^{q:<4} deficit = {:+.2e}", r.deficit);
        }
    }

    println!("\nthe exponent must be p' and the center admissible");
    let w = MonomialWeight::new(vec![2.0])?;
    for exponent in [1.5, 1.9, 2.0, 2.1, 3.0] {
        let (f, _) = StretchedExponential::normalized(2.0, exponent, 1.0, vec![0.0], &w, NormSpec::Euclidean)?;
        println!("  exp(-|x|^{exponent}) on A = (2): deficit = {:.3e}", deficit(&f, 2.0, &w, &NormSpec::Euclidean, &spec)?.deficit);
    }
    let w = MonomialWeight::new(vec![1.0, 0.0])?;
    let shifted = make_log_sobolev_extremal(2.0, 1.0, vec![0.0, 0.7], &w, NormSpec::Euclidean)?;
    println!("  A = (1, 0), center (0, 0.7): deficit = {:+.2e}", deficit(&shifted, 2.0, &w, &NormSpec::Euclidean, &spec)?.deficit);

    println!("\nseeded random fields (deficit must be nonnegative)");
    for (p, a) in [(1.5, vec![0.0]), (2.0, vec![1.0]), (3.0, vec![2.0])] {
        let w = MonomialWeight::new(a.clone())?;
        let reports = nonnegativity_suite(p, &w, &NormSpec::Euclidean, 20, 7, &spec)?;
        let min = reports.iter().map(|r| r.deficit).fold(f64::INFINITY, f64::min);
        println!("  p = {p:<4} A = {a:?}: {} fields, smallest deficit {min:.3e}", reports.len());
    }
    Ok(())
}
