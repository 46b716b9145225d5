use super::{distance_to_nonpositive_integer, finite, principal_ln};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Absolute distance to a non-positive integer below which Γ reports a pole.
pub const POLE_DISTANCE: f64 = 1e-12;

// Lanczos coefficients for g = 607/128, n = 15 (Godfrey's set).
const LANCZOS_G: f64 = 5.242_187_5;
const LANCZOS_C0: f64 = 0.999_999_999_999_997_092;
const LANCZOS: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];
const SQRT_TWO_PI: f64 = 2.506_628_274_631_000_5;

fn sin_cos_pi_real(x: f64) -> (f64, f64) {
    // reduce to [-1, 1] so integers and half-integers come out exact
    let r = x - 2.0 * (x / 2.0).round();
    if r == 0.0 {
        return (0.0, 1.0);
    }
    if r.abs() == 1.0 {
        return (0.0, -1.0);
    }
    if r.abs() == 0.5 {
        return (r.signum(), 0.0);
    }
    ((PI * r).sin(), (PI * r).cos())
}

/// sin(πs), exact zeros at the integers.
pub fn sin_pi(s: Complex64) -> Complex64 {
    let (sn, cs) = sin_cos_pi_real(s.re);
    let b = PI * s.im;
    Complex64::new(sn * b.cosh(), cs * b.sinh())
}

fn pole_check(s: Complex64) -> Result<()> {
    if distance_to_nonpositive_integer(s) < POLE_DISTANCE {
        return Err(Error::Pole(format!("Γ has a pole at {s}")));
    }
    Ok(())
}

/// Lanczos sum for Re(s) >= 0.5.
fn lanczos_log_gamma(s: Complex64) -> Complex64 {
    let mut y = s;
    let mut ser = Complex64::new(LANCZOS_C0, 0.0);
    for c in LANCZOS {
        y += 1.0;
        ser += c / y;
    }
    let t = s + LANCZOS_G;
    (s + 0.5) * principal_ln(t) - t + principal_ln(SQRT_TWO_PI * ser / s)
}

/// log Γ(s). For Re(s) >= 0.5 this is the branch continuous in the right
/// half-plane (real on the positive axis); to the left the reflection formula
/// is applied, so only `exp` of the result is guaranteed to equal Γ(s).
pub fn log_gamma(s: Complex64) -> Result<Complex64> {
    pole_check(s)?;
    if s.re >= 0.5 {
        return finite(lanczos_log_gamma(s), "log Γ");
    }
    // log Γ(s) = log π − log sin(πs) − log Γ(1 − s)
    let sin = sin_pi(s);
    let value = Complex64::new(PI.ln(), 0.0) - sin.ln() - lanczos_log_gamma(1.0 - s);
    finite(value, "log Γ")
}

/// Γ(s), via reflection for Re(s) < 0.5.
pub fn gamma(s: Complex64) -> Result<Complex64> {
    pole_check(s)?;
    if s.re >= 0.5 {
        let lg = lanczos_log_gamma(s);
        if lg.re > f64::MAX.ln() {
            return Err(Error::Overflow(format!("|Γ({s})| exceeds double range")));
        }
        return finite(lg.exp(), "Γ");
    }
    let lg = lanczos_log_gamma(1.0 - s);
    let sin = sin_pi(s);
    // π / (sin(πs) Γ(1−s)); combine in log space when the pieces are extreme
    let log_mag = PI.ln() - sin.norm().ln() - lg.re;
    if log_mag > f64::MAX.ln() {
        return Err(Error::Overflow(format!("|Γ({s})| exceeds double range")));
    }
    let value = if lg.re.abs() < 600.0 && sin.norm() < 1e250 {
        PI / (sin * lg.exp())
    } else {
        (Complex64::new(PI.ln(), 0.0) - sin.ln() - lg).exp()
    };
    finite(value, "Γ")
}

/// 1/Γ(s), zero at the poles of Γ.
pub fn reciprocal_gamma(s: Complex64) -> Result<Complex64> {
    if distance_to_nonpositive_integer(s) < POLE_DISTANCE {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if s.re >= 0.5 {
        return finite((-lanczos_log_gamma(s)).exp(), "1/Γ");
    }
    // 1/Γ(s) = sin(πs) Γ(1−s) / π
    let g = lanczos_log_gamma(1.0 - s);
    finite(sin_pi(s) * g.exp() / PI, "1/Γ")
}
