//! The closed-form Gaussian, Cauchy and product-ball integrals against
//! independent quadrature, for weights in one and two dimensions.
//!
//! ```text
//! cargo run --release --example lemma_identities
//! ```

use std::collections::BTreeMap;

use sharp_logsobolev::identities::identity_matrix;
use sharp_logsobolev::quadrature::QuadratureSpec;
use sharp_logsobolev::Result;

fn main() -> Result<()> {
    let report = identity_matrix(2, 1e-6, &QuadratureSpec::adaptive(1e-7))?;

    let mut by_identity: BTreeMap<String, (usize, f64)> = BTreeMap::new();
    for check in &report.checks {
        let entry = by_identity.entry(format!("{:?}", check.identity)).or_default();
        entry.0 += 1;
        entry.1 = entry.1.max(check.rel_error);
    }
    println!("{:<20} {:>6} {:>14}", "identity", "cases", "max rel error");
    for (name, (count, worst)) in &by_identity {
        println!("{name:<20} {count:>6} {worst:>14.3e}");
    }

    let worst = report.checks.iter().max_by(|a, b| a.rel_error.total_cmp(&b.rel_error)).expect("nonempty");
    println!(
        "\nworst case: {:?} A = {:?} center = {:?} params = {:?}\n  closed form {:.15}\n  quadrature  {:.15}",
        worst.identity, worst.exponents, worst.center, worst.params, worst.closed_form, worst.quadrature
    );
    println!("\n{} checks, {} failures at tolerance {:e}", report.count, report.failures, report.rel_tol);
    Ok(())
}
