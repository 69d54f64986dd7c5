//! The sharp weighted Sobolev inequality: the Talenti profile attains the
//! constant, a Gaussian does not.
//!
//! ```text
//! cargo run --release --example sobolev_talenti
//! ```

use sharp_logsobolev::extremals::{make_talenti, StretchedExponential};
use sharp_logsobolev::functionals::{sobolev_ratio, sobolev_ratio_radial};
use sharp_logsobolev::monomial::{sharp_sobolev_constant, MonomialWeight};
use sharp_logsobolev::norms::NormSpec;
use sharp_logsobolev::quadrature::QuadratureSpec;
use sharp_logsobolev::Result;

fn main() -> Result<()> {
    let spec = QuadratureSpec::default();
    println!("{:<14} {:>5} {:>16} {:>16} {:>16}", "A", "p", "C_p,n,A", "Talenti ratio", "Gaussian ratio");
    for (a, p) in [(vec![2.0], 2.0), (vec![1.0, 0.0], 1.5), (vec![0.0, 0.0, 0.0], 2.0), (vec![1.0, 0.0, 2.0], 2.5)] {
        let w = MonomialWeight::new(a.clone())?;
        let center = vec![0.0; w.dim()];
        let talenti = make_talenti(p, &w, 1.0, center.clone(), 1.0)?;
        let (gaussian, _) = StretchedExponential::normalized(p, 2.0, 1.0, center, &w, NormSpec::Euclidean)?;
        // one-dimensional cones by tensor quadrature, the rest by polar reduction
        let (t, g) = if w.dim() == 1 {
            (sobolev_ratio(&talenti, p, &w, &spec)?, sobolev_ratio(&gaussian, p, &w, &spec)?)
        } else {
            (sobolev_ratio_radial(&talenti, p, &w, &spec)?, sobolev_ratio_radial(&gaussian, p, &w, &spec)?)
        };
        println!("{:<14} {:>5} {:>16.12} {:>16.12} {:>16.12}", format!("{a:?}"), p, sharp_sobolev_constant(p, &w)?, t, g);
    }
    Ok(())
}
