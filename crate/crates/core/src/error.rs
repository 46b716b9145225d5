use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by every evaluation route.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("continued fraction did not converge after {iterations} iterations")]
    Convergence { iterations: usize },

    #[error(
        "series did not converge within {cap} terms (partial sum {partial}, last term {last_term})"
    )]
    NoConvergence {
        cap: usize,
        partial: Complex64,
        last_term: Complex64,
    },

    #[error("quadrature tolerance not met: estimate {estimate}, achieved bound {bound:e}")]
    ToleranceNotMet { estimate: Complex64, bound: f64 },

    #[error("integral appears divergent: tail contribution {tail:e} does not shrink")]
    DivergenceSuspected { tail: f64 },

    #[error("requested index {requested} exceeds the cap {cap}")]
    CapExceeded { requested: usize, cap: usize },

    #[error("Re(s) = {re_s} lies outside the validity strip Re(s) > {bound} of the order-{order} remainder")]
    Strip { re_s: f64, bound: f64, order: usize },

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("unknown check id `{0}`")]
    UnknownCheckId(String),
}

impl Error {
    /// True for caller mistakes (as opposed to numerical failures).
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::UnknownCheckId(_) | Error::InvalidParams(_))
    }
}
