use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The center has a nonzero coordinate on a weighted axis.
    #[error("inadmissible center: coordinate {axis} is {value} but the weight exponent there is positive")]
    InadmissibleCenter { axis: usize, value: f64 },

    /// Parameters are outside the regime where a formula or integral is defined.
    #[error("invalid regime: {0}")]
    InvalidRegime(String),

    #[error("non-finite integrand value {value} at {point:?}")]
    NonFiniteSample { point: Vec<f64>, value: f64 },

    #[error("quadrature did not reach rel_tol {rel_tol:e}: best estimate {estimate} (err {err:e})")]
    QuadratureNotConverged { estimate: f64, err: f64, rel_tol: f64 },

    #[error("norm is not differentiable at {0:?}")]
    NonDifferentiable(Vec<f64>),

    #[error("dual norm ascent did not converge (residual {residual:e})")]
    DualNotConverged { estimate: f64, residual: f64 },

    #[error("zero mass: the field vanishes on every quadrature node")]
    ZeroMass,

    #[error("configuration error: {0}")]
    Config(String),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn regime(msg: impl Into<String>) -> Error {
    Error::InvalidRegime(msg.into())
}
