use crate::{Error, Result};
use num_complex::Complex64;

/// Principal logarithm with the argument in (−π, π].
///
/// A negative zero imaginary part is treated as +0 so that points on the
/// negative real axis land on arg = +π rather than −π.
pub fn principal_ln(w: Complex64) -> Complex64 {
    let w = if w.im == 0.0 {
        Complex64::new(w.re, 0.0)
    } else {
        w
    };
    Complex64::new(w.norm().ln(), w.im.atan2(w.re))
}

/// `base^exponent = exp(exponent · Log base)` on the principal branch.
///
/// `0^p` is 0 for Re(p) > 0 and a domain error otherwise.
pub fn complex_pow(base: Complex64, exponent: Complex64) -> Result<Complex64> {
    if base == Complex64::new(0.0, 0.0) {
        if exponent.re > 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        return Err(Error::Domain(format!(
            "0 raised to exponent {exponent} with non-positive real part"
        )));
    }
    if exponent == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(1.0, 0.0));
    }
    if exponent.im == 0.0 && base.im == 0.0 && base.re > 0.0 {
        return Ok(Complex64::new(base.re.powf(exponent.re), 0.0));
    }
    let value = (exponent * principal_ln(base)).exp();
    super::finite(value, "complex power")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_exponent_gives_one() {
        for b in [c(3.0, -2.0), c(-1.0, 0.0), c(0.0, 1e-300)] {
            assert_eq!(complex_pow(b, c(0.0, 0.0)).unwrap(), c(1.0, 0.0));
        }
    }

    #[test]
    fn i_squared() {
        let v = complex_pow(c(0.0, 1.0), c(2.0, 0.0)).unwrap();
        assert!((v - c(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn two_pi_i_to_the_zero_at_s_one() {
        let s = c(1.0, 0.0);
        let v = complex_pow(c(0.0, 2.0 * std::f64::consts::PI), s - 1.0).unwrap();
        assert_eq!(v, c(1.0, 0.0));
    }

    #[test]
    fn zero_base() {
        assert_eq!(complex_pow(c(0.0, 0.0), c(0.5, 3.0)).unwrap(), c(0.0, 0.0));
        assert!(matches!(
            complex_pow(c(0.0, 0.0), c(0.0, 1.0)),
            Err(Error::Domain(_))
        ));
        assert!(complex_pow(c(0.0, 0.0), c(-1.0, 0.0)).is_err());
    }

    #[test]
    fn negative_real_axis_uses_plus_pi() {
        let half = complex_pow(c(-4.0, -0.0), c(0.5, 0.0)).unwrap();
        assert!((half - c(0.0, 2.0)).norm() < 1e-15);
        assert!((principal_ln(c(-1.0, -0.0)).im - std::f64::consts::PI).abs() < 1e-16);
    }

    #[test]
    fn minus_two_pi_i_branch() {
        // (−2πi)^{s−1} = (2π)^{s−1} e^{−iπ(s−1)/2}
        let s = c(-0.5, 1.25);
        let tau = 2.0 * std::f64::consts::PI;
        let lhs = complex_pow(c(0.0, -tau), s - 1.0).unwrap();
        let rhs = complex_pow(c(tau, 0.0), s - 1.0).unwrap()
            * (c(0.0, -std::f64::consts::FRAC_PI_2) * (s - 1.0)).exp();
        assert!((lhs - rhs).norm() < 1e-14 * rhs.norm());
    }
}
