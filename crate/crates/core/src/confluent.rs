//! Confluent hypergeometric functions: Kummer's M(α, γ; x) (written F in the
//! zeta derivation) and Tricomi's U(α, γ; x), together with the residual
//! checks that tie them to their differential equation
//! x y'' + (γ − x) y' − α y = 0.

use crate::numerics::{
    complex_pow, distance_to_integer, distance_to_nonpositive_integer, finite, gamma,
    integrate_semi_infinite, reciprocal_gamma, upper_incomplete_gamma_scaled, Quadrature,
    POLE_DISTANCE,
};
use crate::{ConfluentParams, Error, Result, URoute};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// γ closer than this to an integer makes the connection formula degenerate.
pub const INTEGER_GAMMA_GUARD: f64 = 1e-8;

const SMALL_TERMS_TO_STOP: usize = 3;

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// Kummer series Σ (α)ₙ xⁿ / ((γ)ₙ n!).
///
/// Stops once three consecutive terms are below `term_tol` relative to the
/// partial sum, so a single vanishing term (α a negative integer offset)
/// cannot end the sum early.
pub fn kummer_m(
    alpha: Complex64,
    gamma_p: Complex64,
    x: Complex64,
    p: &ConfluentParams,
) -> Result<Complex64> {
    p.validate()?;
    if distance_to_nonpositive_integer(gamma_p) < POLE_DISTANCE {
        return Err(Error::Pole(format!(
            "Kummer series undefined for γ = {gamma_p} (Pochhammer symbol vanishes)"
        )));
    }
    let mut sum = one();
    let mut term = one();
    let mut small = 0usize;
    for n in 0..p.series_cap {
        let nf = n as f64;
        term *= (alpha + nf) * x / ((gamma_p + nf) * (nf + 1.0));
        sum += term;
        if term.norm() <= p.term_tol * sum.norm() {
            small += 1;
            if small >= SMALL_TERMS_TO_STOP {
                return finite(sum, "M(α, γ; x)");
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NoConvergence {
        cap: p.series_cap,
        partial: sum,
        last_term: term,
    })
}

fn tricomi_domain(alpha: Complex64, x: Complex64) -> Result<()> {
    if alpha.re.is_nan() || alpha.re <= 0.0 {
        return Err(Error::Domain(format!(
            "Laplace integral for U needs Re(α) > 0, got α = {alpha}"
        )));
    }
    if x == Complex64::new(0.0, 0.0) || x.re < 0.0 {
        return Err(Error::Domain(format!(
            "Laplace integral for U needs x ≠ 0 with Re(x) ≥ 0, got x = {x}"
        )));
    }
    Ok(())
}

/// U(α, γ; x) = (1/Γ(α)) ∫₀^∞ e^{−xu} (1+u)^{γ−α−1} u^{α−1} du, with its
/// quadrature error bound.
///
/// The ray is rotated to u = w/x (arg u = −arg x) so the exponential decays
/// monotonically; for imaginary x this turns the oscillatory integral into an
/// absolutely convergent one. The rotation stays inside |arg u| < π, so it
/// never crosses the branch points u = 0 and u = −1, and the integral
/// becomes x^{−α}/Γ(α) ∫₀^∞ e^{−w} w^{α−1} (1 + w/x)^{γ−α−1} dw.
pub fn tricomi_u_integral_estimate(
    alpha: Complex64,
    gamma_p: Complex64,
    x: Complex64,
    p: &ConfluentParams,
) -> Result<Quadrature> {
    p.validate()?;
    tricomi_domain(alpha, x)?;
    let c = gamma_p - alpha - 1.0;
    let am1 = alpha - 1.0;
    let x_inv = x.inv();
    let integrand = |w: f64| {
        let wc = Complex64::new(w, 0.0);
        let base = one() + wc * x_inv;
        let power = (c * base.ln()).exp();
        let weight = if am1 == Complex64::new(0.0, 0.0) {
            one()
        } else {
            (am1 * w.ln()).exp()
        };
        power * weight * (-w).exp()
    };
    let q = integrate_semi_infinite(integrand, &p.quad)?;
    let scale = complex_pow(x, -alpha)? * reciprocal_gamma(alpha)?;
    Ok(Quadrature {
        value: finite(q.value * scale, "U(α, γ; x)")?,
        error_bound: q.error_bound * scale.norm(),
        evaluations: q.evaluations,
    })
}

pub fn tricomi_u_integral(
    alpha: Complex64,
    gamma_p: Complex64,
    x: Complex64,
    p: &ConfluentParams,
) -> Result<Complex64> {
    tricomi_u_integral_estimate(alpha, gamma_p, x, p).map(|q| q.value)
}

/// U(1, γ; x) = e^x x^{1−γ} Γ(γ−1, x), all powers principal.
///
/// Only α = 1 has this closed form; it is the route used by the zeta lattice
/// sum and the independent check on [`tricomi_u_integral`].
pub fn tricomi_u_gamma(gamma_p: Complex64, x: Complex64) -> Result<Complex64> {
    if x == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("U(1, γ; x) closed form needs x ≠ 0".into()));
    }
    // e^x x^{−a} Γ(a, x) with a = γ − 1
    upper_incomplete_gamma_scaled(gamma_p - 1.0, x)
}

/// U(α, γ; x) by the route selected in `p.u_route`.
pub fn tricomi_u(
    alpha: Complex64,
    gamma_p: Complex64,
    x: Complex64,
    p: &ConfluentParams,
) -> Result<Complex64> {
    match p.u_route {
        URoute::LaplaceIntegral => tricomi_u_integral(alpha, gamma_p, x, p),
        URoute::IncompleteGamma => {
            if alpha != one() {
                return Err(Error::Domain(format!(
                    "incomplete-gamma route for U needs α = 1, got α = {alpha}"
                )));
            }
            tricomi_u_gamma(gamma_p, x)
        }
        URoute::Auto if alpha == one() => tricomi_u_gamma(gamma_p, x),
        URoute::Auto => tricomi_u_integral(alpha, gamma_p, x, p),
    }
}

/// Right side of the connection formula
/// U = Γ(1−γ)/Γ(α−γ+1) · M(α,γ;x) + Γ(γ−1)/Γ(α) · x^{1−γ} e^x M(1−α, 2−γ; −x).
pub fn connection_rhs(
    alpha: Complex64,
    gamma_p: Complex64,
    x: Complex64,
    p: &ConfluentParams,
) -> Result<Complex64> {
    if distance_to_integer(gamma_p) < INTEGER_GAMMA_GUARD {
        return Err(Error::Pole(format!(
            "connection formula is degenerate for integer γ = {gamma_p}"
        )));
    }
    let first_coef = gamma(1.0 - gamma_p)? * reciprocal_gamma(alpha - gamma_p + 1.0)?;
    let second_coef = gamma(gamma_p - 1.0)? * reciprocal_gamma(alpha)?;
    let mut total = Complex64::new(0.0, 0.0);
    if first_coef != Complex64::new(0.0, 0.0) {
        total += first_coef * kummer_m(alpha, gamma_p, x, p)?;
    }
    if second_coef != Complex64::new(0.0, 0.0) {
        let regular = kummer_m(1.0 - alpha, 2.0 - gamma_p, -x, p)?;
        total += second_coef * complex_pow(x, 1.0 - gamma_p)? * x.exp() * regular;
    }
    finite(total, "connection formula")
}

/// |U − connection_rhs| / max(1, |U|) with U from `p.u_route`.
pub fn connection_residual(
    alpha: Complex64,
    gamma_p: Complex64,
    x: Complex64,
    p: &ConfluentParams,
) -> Result<f64> {
    let rhs = connection_rhs(alpha, gamma_p, x, p)?;
    let u = tricomi_u(alpha, gamma_p, x, p)?;
    Ok((u - rhs).norm() / u.norm().max(1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolutionKind {
    Kummer,
    Tricomi,
}

/// Default finite-difference step for [`ode_residual`].
pub fn default_step(x: Complex64) -> f64 {
    1e-4 * x.norm().max(1.0)
}

/// |x y'' + (γ − x) y' − α y| / max(1, |y|) with central differences of
/// step `h` along the real direction.
pub fn ode_residual(
    kind: SolutionKind,
    alpha: Complex64,
    gamma_p: Complex64,
    x: Complex64,
    h: Option<f64>,
    p: &ConfluentParams,
) -> Result<f64> {
    let h = h.unwrap_or_else(|| default_step(x));
    if h.is_nan() || h <= 0.0 || x.norm() < 10.0 * h {
        return Err(Error::Domain(format!(
            "finite differences need |x| >= 10h (x = {x}, h = {h})"
        )));
    }
    let y = |point: Complex64| match kind {
        SolutionKind::Kummer => kummer_m(alpha, gamma_p, point, p),
        SolutionKind::Tricomi => tricomi_u(alpha, gamma_p, point, p),
    };
    let y0 = y(x)?;
    let yp = y(x + h)?;
    let ym = y(x - h)?;
    let d1 = (yp - ym) / (2.0 * h);
    let d2 = (yp - 2.0 * y0 + ym) / (h * h);
    let residual = x * d2 + (gamma_p - x) * d1 - alpha * y0;
    Ok(residual.norm() / y0.norm().max(1.0))
}

/// |x^α U(α, γ; x) − 1| at each real x in `magnitudes`.
pub fn asymptotic_ratio(
    alpha: Complex64,
    gamma_p: Complex64,
    magnitudes: &[f64],
    p: &ConfluentParams,
) -> Result<Vec<f64>> {
    if alpha.re.is_nan() || alpha.re <= 0.0 {
        return Err(Error::Domain(format!(
            "asymptotic law needs Re(α) > 0, got {alpha}"
        )));
    }
    if magnitudes.is_empty() {
        return Err(Error::InvalidParams("magnitude ladder is empty".into()));
    }
    if magnitudes.iter().any(|&m| !m.is_finite() || m < 5.0)
        || magnitudes.windows(2).any(|w| w[1] <= w[0])
    {
        return Err(Error::InvalidParams(
            "magnitudes must be increasing and each at least 5".into(),
        ));
    }
    magnitudes
        .iter()
        .map(|&m| {
            let x = Complex64::new(m, 0.0);
            let u = tricomi_u(alpha, gamma_p, x, p)?;
            Ok((complex_pow(x, alpha)? * u - 1.0).norm())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::upper_incomplete_gamma;
    use std::f64::consts::E;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params() -> ConfluentParams {
        ConfluentParams::default()
    }

    #[test]
    fn kummer_at_zero_and_equal_parameters() {
        let p = params();
        assert_eq!(
            kummer_m(c(0.3, 1.0), c(2.5, -1.0), c(0.0, 0.0), &p).unwrap(),
            c(1.0, 0.0)
        );
        let v = kummer_m(c(1.7, 0.2), c(1.7, 0.2), c(1.0, 0.0), &p).unwrap();
        assert!((v - E).norm() < 1e-15);
    }

    #[test]
    fn kummer_one_two() {
        // brute-force 60-term series of Σ xⁿ/(n+1)! at x = 1
        let mut brute = 0.0;
        let mut fact = 1.0;
        for n in 0..60 {
            fact *= (n + 1) as f64;
            brute += 1.0 / fact;
        }
        let v = kummer_m(c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0), &params()).unwrap();
        assert!((v.re - brute).abs() < 1e-15);
        assert!((v.re - (E - 1.0)).abs() < 1e-15);
    }

    #[test]
    fn kummer_terminating_series() {
        // α = −2: M(−2, γ; x) = 1 − 2x/γ + x²/(γ(γ+1))
        let (g, x) = (c(0.5, 0.0), c(3.0, 0.0));
        let exact = 1.0 - 2.0 * x / g + x * x / (g * (g + 1.0));
        let v = kummer_m(c(-2.0, 0.0), g, x, &params()).unwrap();
        assert!((v - exact).norm() < 1e-13);
    }

    #[test]
    fn kummer_rejects_bad_gamma_and_reports_cap() {
        assert!(matches!(
            kummer_m(c(1.0, 0.0), c(-3.0, 0.0), c(1.0, 0.0), &params()),
            Err(Error::Pole(_))
        ));
        let p = ConfluentParams {
            series_cap: 5,
            ..params()
        };
        match kummer_m(c(1.0, 0.0), c(1.5, 0.0), c(10.0, 0.0), &p) {
            Err(Error::NoConvergence { cap: 5, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn tricomi_one_one_is_scaled_e1() {
        let e1 = upper_incomplete_gamma(c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        let expected = E * e1;
        let a = tricomi_u_integral(c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), &params()).unwrap();
        let b = tricomi_u_gamma(c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!((a - expected).norm() < 1e-9);
        assert!((b - expected).norm() < 1e-9);
        // γ = 1 − s at s = 0 is the same point
        let s = c(0.0, 0.0);
        assert_eq!(tricomi_u_gamma(1.0 - s, c(1.0, 0.0)).unwrap(), b);
    }

    #[test]
    fn tricomi_reciprocal_closed_form() {
        let a = tricomi_u_integral(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), &params()).unwrap();
        assert!((a - 0.5).norm() < 1e-12);
        let b = tricomi_u_gamma(c(2.0, 0.0), c(3.0, 0.0)).unwrap();
        assert!((b - 1.0 / 3.0).norm() < 1e-15);
    }

    #[test]
    fn tricomi_dual_quadrature() {
        use crate::numerics::{QuadratureMethod, QuadratureSpec};
        let de = tricomi_u_integral(c(2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), &params()).unwrap();
        let tight = ConfluentParams {
            quad: QuadratureSpec {
                method: QuadratureMethod::AdaptiveSubdivision,
                max_level: 15,
                target_abs_tol: 1e-13,
                target_rel_tol: 1e-13,
            },
            ..params()
        };
        let gk = tricomi_u_integral(c(2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), &tight).unwrap();
        assert!((de - gk).norm() < 1e-9, "{de} vs {gk}");
    }

    #[test]
    fn tricomi_imaginary_argument_routes_agree() {
        for x in [c(0.0, 4.7), c(0.0, -1.2), c(0.0, 30.0)] {
            let g = c(0.5, 0.0);
            let a = tricomi_u_integral(c(1.0, 0.0), g, x, &params()).unwrap();
            let b = tricomi_u_gamma(g, x).unwrap();
            assert!(
                (a - b).norm() < 1e-9 * b.norm().max(1.0),
                "x={x}: {a} vs {b}"
            );
        }
    }

    #[test]
    fn tricomi_domain_errors() {
        assert!(matches!(
            tricomi_u_integral(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), &params()),
            Err(Error::Domain(_))
        ));
        assert!(tricomi_u_integral(c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.5), &params()).is_err());
        let p = ConfluentParams {
            u_route: URoute::IncompleteGamma,
            ..params()
        };
        assert!(tricomi_u(c(2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), &p).is_err());
    }

    #[test]
    fn connection_examples() {
        let p = params();
        let r = connection_residual(c(1.0, 0.0), c(0.5, 0.0), c(2.0, 0.0), &p).unwrap();
        assert!(r < 1e-9, "{r}");
        // s = −2 gives the integer γ = 1 − s = 3, inside the guard band
        let r = connection_residual(c(1.0, 0.0), c(3.0, 0.0), c(1.0, 1.0), &p);
        assert!(matches!(r, Err(Error::Pole(_))));
        let r = connection_residual(c(2.0, 0.0), c(0.25, 0.0), c(3.0, 0.0), &p).unwrap();
        assert!(r < 1e-8, "{r}");
        assert!(matches!(
            connection_rhs(c(1.0, 0.0), c(2.0, 0.0), c(1.0, 0.0), &p),
            Err(Error::Pole(_))
        ));
    }

    #[test]
    fn connection_reduces_at_alpha_one() {
        // α = 1, γ = 1 − s: (1/s) M(1, 1−s; x) − (1/s) Γ(1−s) x^s e^x
        let p = params();
        for (s, x) in [(c(0.5, 0.0), c(1.3, -0.4)), (c(-0.7, 0.6), c(0.0, -4.7))] {
            let rhs = connection_rhs(c(1.0, 0.0), 1.0 - s, x, &p).unwrap();
            let reduced = (kummer_m(c(1.0, 0.0), 1.0 - s, x, &p).unwrap()
                - gamma(1.0 - s).unwrap() * complex_pow(x, s).unwrap() * x.exp())
                / s;
            assert!((rhs - reduced).norm() < 1e-12 * reduced.norm().max(1.0));
        }
    }

    #[test]
    fn ode_examples() {
        let p = params();
        let r = ode_residual(
            SolutionKind::Kummer,
            c(1.0, 0.0),
            c(2.0, 0.0),
            c(1.0, 0.0),
            None,
            &p,
        )
        .unwrap();
        assert!(r < 1e-6, "{r}");
        let r = ode_residual(
            SolutionKind::Tricomi,
            c(1.0, 0.0),
            c(0.5, 0.0),
            c(2.0, 0.0),
            None,
            &p,
        )
        .unwrap();
        assert!(r < 1e-6, "{r}");
        let r = ode_residual(
            SolutionKind::Kummer,
            c(0.0, 0.0),
            c(1.3, 0.2),
            c(2.0, 1.0),
            None,
            &p,
        )
        .unwrap();
        assert!(r < 1e-12, "{r}");
        assert!(ode_residual(
            SolutionKind::Kummer,
            c(1.0, 0.0),
            c(2.0, 0.0),
            c(1e-4, 0.0),
            None,
            &p
        )
        .is_err());
    }

    #[test]
    fn asymptotic_examples() {
        let p = params();
        let seq = asymptotic_ratio(c(1.0, 0.0), c(0.5, 0.0), &[10.0, 100.0, 1000.0], &p).unwrap();
        assert!(seq.windows(2).all(|w| w[1] < w[0]), "{seq:?}");
        let exact = asymptotic_ratio(c(1.0, 0.0), c(2.0, 0.0), &[10.0, 100.0, 1000.0], &p).unwrap();
        assert!(exact.iter().all(|&r| r <= 1e-12), "{exact:?}");
        let seq = asymptotic_ratio(c(2.0, 0.0), c(1.0, 0.0), &[10.0, 100.0], &p).unwrap();
        assert!(seq[1] < seq[0]);
        assert!(asymptotic_ratio(c(1.0, 0.0), c(0.5, 0.0), &[], &p).is_err());
        assert!(asymptotic_ratio(c(1.0, 0.0), c(0.5, 0.0), &[100.0, 10.0], &p).is_err());
    }
}
