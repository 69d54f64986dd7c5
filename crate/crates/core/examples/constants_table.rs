//! Sharp constants for a handful of weights, exponents and norms.
//!
//! ```text
//! cargo run --example constants_table
//! ```

use sharp_logsobolev::monomial::{sharp_ls_constant, sharp_ls_constant_for_norm, sharp_sobolev_constant, weighted_ball_measure, MonomialWeight};
use sharp_logsobolev::norms::NormSpec;
use sharp_logsobolev::Result;

fn main() -> Result<()> {
    let weights = [vec![0.0], vec![2.0], vec![0.0, 0.0], vec![1.0, 1.0], vec![0.5, 0.0, 2.0], vec![0.0, 0.0, 0.0]];

    println!("{:<16} {:>5} {:>12} {:>12} {:>5} {:>14} {:>14}", "A", "D", "Pi(A)", "m(B_A)", "p", "L_p(A)", "C_p,n,A");
    for a in &weights {
        let w = MonomialWeight::new(a.clone())?;
        for p in [1.5, 2.0, 3.0] {
            let sobolev = match sharp_sobolev_constant(p, &w) {
                Ok(c) => format!("{c:>14.10}"),
                Err(_) => format!("{:>14}", "p >= D"),
            };
            println!(
                "{:<16} {:>5} {:>12.8} {:>12.8} {:>5} {:>14.10} {sobolev}",
                format!("{a:?}"),
                w.homogeneous_dim(),
                w.pi_constant(),
                w.ball_measure(),
                p,
                sharp_ls_constant(p, &w)?,
            );
        }
    }

    // the same inequality for other norms: only the unit-ball measure changes
    println!("\n{:<16} {:<10} {:>12} {:>14}", "A", "norm", "m(B)", "L_2");
    let w = MonomialWeight::new(vec![0.0, 0.0])?;
    let weighted = MonomialWeight::new(vec![1.0, 0.0])?;
    for (w, name, norm) in [
        (&w, "l1", NormSpec::q_norm(1.0)?),
        (&w, "l2", NormSpec::Euclidean),
        (&w, "l3", NormSpec::q_norm(3.0)?),
        (&w, "l4", NormSpec::q_norm(4.0)?),
        (&weighted, "l1", NormSpec::q_norm(1.0)?),
        (&weighted, "diag(2,1)", NormSpec::diagonal(vec![2.0, 1.0], 2.0)?),
    ] {
        println!(
            "{:<16} {:<10} {:>12.8} {:>14.10}",
            format!("{:?}", w.exponents()),
            name,
            weighted_ball_measure(&norm, w)?,
            sharp_ls_constant_for_norm(2.0, w, &norm)?
        );
    }
    Ok(())
}
