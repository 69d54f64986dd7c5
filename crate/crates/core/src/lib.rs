pub mod cli;
pub mod error;
pub mod extremals;
pub mod functionals;
pub mod identities;
pub mod minimizer;
pub mod monomial;
pub mod norms;
pub mod quadrature;
pub mod specialfn;
pub mod tensorization;

pub use error::{Error, Result};
