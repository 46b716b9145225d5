use super::{complex_pow, finite, gamma, principal_ln, POLE_DISTANCE};
use crate::{Error, Result};
use num_complex::Complex64;

const CF_MAX_ITER: usize = 20_000;
const CF_EPS: f64 = 1e-16;
const SERIES_MAX_TERMS: usize = 500;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_6;

/// Below this modulus of x the power series is used instead of the
/// continued fraction (unless Re(a) makes the series preferable anyway).
const SERIES_RADIUS: f64 = 1.5;

fn use_series(a: Complex64, x: Complex64) -> bool {
    let r = x.norm();
    r < SERIES_RADIUS || (a.re > 0.0 && r < a.re + 1.0)
}

/// Γ(a, x) = ∫ₓ^∞ t^{a−1} e^{−t} dt on the principal branch, x off the
/// negative real axis.
pub fn upper_incomplete_gamma(a: Complex64, x: Complex64) -> Result<Complex64> {
    if x == Complex64::new(0.0, 0.0) {
        if a.re <= 0.0 {
            return Err(Error::Domain(format!(
                "Γ(a, 0) diverges for Re(a) = {} <= 0",
                a.re
            )));
        }
        return gamma(a);
    }
    check_cut(x)?;
    if use_series(a, x) {
        return series(a, x);
    }
    let h = continued_fraction(a, x)?;
    let prefactor = complex_pow(x, a)? * (-x).exp();
    finite(prefactor * h, "Γ(a, x)")
}

/// e^{x} x^{−a} Γ(a, x), which stays O(1/x) where Γ(a, x) itself under- or
/// overflows.
pub fn upper_incomplete_gamma_scaled(a: Complex64, x: Complex64) -> Result<Complex64> {
    if x == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("scaled Γ(a, x) is undefined at x = 0".into()));
    }
    check_cut(x)?;
    if use_series(a, x) {
        let g = series(a, x)?;
        return finite(g * x.exp() * complex_pow(x, -a)?, "scaled Γ(a, x)");
    }
    continued_fraction(a, x)
}

fn check_cut(x: Complex64) -> Result<()> {
    if x.im == 0.0 && x.re < 0.0 {
        return Err(Error::Domain(format!(
            "x = {x} lies on the branch cut of Γ(a, x)"
        )));
    }
    Ok(())
}

/// Modified Lentz evaluation of
/// Γ(a,x) = e^{−x} x^a / (x + 1 − a − 1·(1−a) / (x + 3 − a − 2·(2−a) / …));
/// returns the continued fraction alone.
fn continued_fraction(a: Complex64, x: Complex64) -> Result<Complex64> {
    let tiny = Complex64::new(1e-300, 0.0);
    let mut b = x + 1.0 - a;
    let mut c = Complex64::new(1.0 / 1e-300, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 1..CF_MAX_ITER {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = an * d + b;
        if d.norm() < 1e-300 {
            d = tiny;
        }
        c = b + an / c;
        if c.norm() < 1e-300 {
            c = tiny;
        }
        d = d.inv();
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).norm() < CF_EPS {
            return Ok(h);
        }
    }
    Err(Error::Convergence {
        iterations: CF_MAX_ITER,
    })
}

/// Γ(a, x) = Γ(a) − Σ (−1)ⁿ x^{a+n} / (n! (a+n)), with the limiting form at
/// non-positive integer a.
fn series(a: Complex64, x: Complex64) -> Result<Complex64> {
    let m = (-a.re).round();
    let at_integer = a.re <= 0.5 && (a - Complex64::new(-m, 0.0)).norm() < POLE_DISTANCE;
    if at_integer {
        return integer_order_series(m as usize, x);
    }
    let xa = complex_pow(x, a)?;
    let mut sum = Complex64::new(0.0, 0.0);
    // power = (−x)^n / n!
    let mut power = Complex64::new(1.0, 0.0);
    for n in 0..SERIES_MAX_TERMS {
        let term = power / (a + n as f64);
        sum += term;
        if n > 0 && term.norm() <= 1e-17 * sum.norm() {
            return finite(gamma(a)? - xa * sum, "Γ(a, x)");
        }
        power *= -x / (n as f64 + 1.0);
    }
    Err(Error::NoConvergence {
        cap: SERIES_MAX_TERMS,
        partial: sum,
        last_term: power,
    })
}

/// Γ(−m, x) = ((−1)^m / m!)(ψ(m+1) − ln x) − Σ_{n≠m} (−1)ⁿ x^{n−m} / (n! (n−m)).
fn integer_order_series(m: usize, x: Complex64) -> Result<Complex64> {
    let harmonic: f64 = (1..=m).map(|k| 1.0 / k as f64).sum();
    let psi = -EULER_GAMMA + harmonic;
    let mut m_factorial = 1.0;
    for k in 1..=m {
        m_factorial *= k as f64;
    }
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let log_part = (Complex64::new(psi, 0.0) - principal_ln(x)) * (sign / m_factorial);

    let x_inv_m = x.powi(-(m as i32));
    let mut sum = Complex64::new(0.0, 0.0);
    // power = (−x)^n / n!
    let mut power = Complex64::new(1.0, 0.0);
    for n in 0..SERIES_MAX_TERMS {
        if n != m {
            let term = power / (n as f64 - m as f64);
            sum += term;
            if n > m && term.norm() <= 1e-17 * sum.norm() {
                return finite(log_part - x_inv_m * sum, "Γ(−m, x)");
            }
        }
        power *= -x / (n as f64 + 1.0);
    }
    Err(Error::NoConvergence {
        cap: SERIES_MAX_TERMS,
        partial: sum,
        last_term: power,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn order_one_is_exponential() {
        for x in [c(2.0, 0.0), c(0.3, 0.0), c(5.0, -4.0), c(0.0, 7.0)] {
            let g = upper_incomplete_gamma(c(1.0, 0.0), x).unwrap();
            assert!((g - (-x).exp()).norm() < 1e-14 * (-x).exp().norm(), "{x}");
        }
    }

    #[test]
    fn zero_argument_is_complete_gamma() {
        let g = upper_incomplete_gamma(c(3.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!((g - 2.0).norm() < 1e-14);
        assert!(upper_incomplete_gamma(c(-0.5, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn exponential_integral_at_one() {
        // E1(1) = 0.219383934395520273677...
        let g = upper_incomplete_gamma(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!((g.re - 0.219_383_934_395_520_27).abs() < 1e-15);
        assert!(g.im.abs() < 1e-16);
    }

    #[test]
    fn integer_order_matches_neighbouring_noninteger() {
        // continuity across the integer-order branch of the series
        let x = c(0.4, 0.9);
        let exact = upper_incomplete_gamma(c(-2.0, 0.0), x).unwrap();
        let near = upper_incomplete_gamma(c(-2.0 + 1e-7, 0.0), x).unwrap();
        assert!((exact - near).norm() < 1e-5 * exact.norm());
    }

    #[test]
    fn series_and_fraction_agree_at_the_switch() {
        for a in [c(-0.5, 0.3), c(0.5, 0.0), c(-2.5, 1.0), c(0.0, 0.0)] {
            for x in [c(1.5, 0.0), c(0.0, 1.6), c(1.2, -1.0)] {
                let s = series(a, x).unwrap();
                let cf =
                    continued_fraction(a, x).unwrap() * complex_pow(x, a).unwrap() * (-x).exp();
                assert!(
                    (s - cf).norm() < 1e-12 * s.norm(),
                    "a={a} x={x}: {s} vs {cf}"
                );
            }
        }
    }

    #[test]
    fn branch_cut_rejected() {
        assert!(upper_incomplete_gamma(c(0.5, 0.0), c(-1.0, 0.0)).is_err());
    }
}
