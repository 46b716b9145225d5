//! Scalar engines: complex gamma, principal-branch powers, the upper
//! incomplete gamma function and double-exponential quadrature.

mod gamma;
mod incomplete_gamma;
mod power;
mod quadrature;
mod sum;

pub use gamma::{gamma, log_gamma, reciprocal_gamma, sin_pi, POLE_DISTANCE};
pub use incomplete_gamma::{upper_incomplete_gamma, upper_incomplete_gamma_scaled};
pub use power::{complex_pow, principal_ln};
pub use quadrature::{
    integrate_semi_infinite, integrate_unit_interval, Quadrature, QuadratureMethod, QuadratureSpec,
};
pub use sum::CompensatedSum;

use crate::{Error, Result};
use num_complex::Complex64;

/// The universal scalar: s, z, x, α, γ and every function value.
pub type ComplexValue = Complex64;

/// Rejects NaN or infinite parts before a value leaves a public operation.
pub(crate) fn finite(value: Complex64, what: &str) -> Result<Complex64> {
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow(format!("{what} is not finite ({value})")))
    }
}

/// Distance from `s` to the nearest non-positive integer, or infinity when
/// Re(s) > 0.5.
pub(crate) fn distance_to_nonpositive_integer(s: Complex64) -> f64 {
    if s.re > 0.5 {
        return f64::INFINITY;
    }
    let n = s.re.round().min(0.0);
    Complex64::new(s.re - n, s.im).norm()
}

/// Distance from `s` to the nearest integer.
pub(crate) fn distance_to_integer(s: Complex64) -> f64 {
    Complex64::new(s.re - s.re.round(), s.im).norm()
}
