//! The Hurwitz zeta function ζ(s, z) = Σ_{k≥0} (k+z)^{-s} by three routes,
//! the periodic zeta function L(s, z) = Σ_{n≥1} e^{2πinz} n^{-s}, and the
//! right-hand side of the Hurwitz relation
//! ζ(s, z) = Γ(1−s) {(2πi)^{s−1} L(1−s, z) + (−2πi)^{s−1} L(1−s, 1−z)}.
//!
//! Every route returns an [`Estimate`]: the value, an error bound, and the
//! route that produced it. The bound covers truncation and quadrature error
//! plus a rounding allowance; it is an estimate, not a certificate.

use crate::bernoulli;
use crate::confluent::tricomi_u_gamma;
use crate::numerics::{
    complex_pow, finite, gamma, integrate_unit_interval, upper_incomplete_gamma_scaled,
    CompensatedSum,
};
use crate::{Error, EvalParams, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    DirectSeries,
    EulerMaclaurin,
    TricomiLatticeSum,
    Polylog,
    HurwitzRelation,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Route::DirectSeries => "direct series",
            Route::EulerMaclaurin => "Euler-Maclaurin",
            Route::TricomiLatticeSum => "Tricomi lattice sum",
            Route::Polylog => "periodic zeta series",
            Route::HurwitzRelation => "Hurwitz relation",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error_bound: f64,
    pub route: Route,
}

/// Fraction of `tol_abs` spent on each internal truncation, leaving room for
/// the residual comparisons done at `tol_abs` itself.
const INNER_TOL_FACTOR: f64 = 1e-3;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn check_z(z: f64, allow_one: bool) -> Result<()> {
    let upper_ok = if allow_one { z <= 1.0 } else { z < 1.0 };
    if z.is_finite() && z > 0.0 && upper_ok {
        Ok(())
    } else {
        let range = if allow_one { "(0, 1]" } else { "(0, 1)" };
        Err(Error::Domain(format!("z = {z} is outside {range}")))
    }
}

fn check_s(s: Complex64) -> Result<()> {
    if s.re.is_finite() && s.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("s = {s} is not finite")))
    }
}

fn pole_at_one(s: Complex64) -> Result<()> {
    if s == c(1.0) {
        Err(Error::Pole("ζ(s, z) has a simple pole at s = 1".into()))
    } else {
        Ok(())
    }
}

/// Σ_{k=0}^{N−1} (k+z)^{−s} + (N+z)^{−s}/2 + (N+z)^{1−s}/(s−1).
///
/// The tail is the integral ∫_N^∞ (t+z)^{−s} dt with the trapezoidal half
/// weight on the last summed term; N is chosen so the first neglected
/// correction s(N+z)^{−s−1}/12 is below the inner tolerance.
pub fn hurwitz_direct(s: Complex64, z: f64, p: &EvalParams) -> Result<Estimate> {
    p.validate()?;
    check_s(s)?;
    check_z(z, true)?;
    if s.re <= 1.0 {
        return Err(Error::Domain(format!(
            "direct series needs Re(s) > 1, got s = {s}"
        )));
    }
    let tol = p.tol_abs * INNER_TOL_FACTOR;
    let needed = (s.norm() / (12.0 * tol)).powf(1.0 / (s.re + 1.0));
    let n_terms = needed.ceil().max(16.0);
    if n_terms > p.series_cap as f64 {
        return Err(Error::CapExceeded {
            requested: n_terms.min(usize::MAX as f64) as usize,
            cap: p.series_cap,
        });
    }
    let n_terms = n_terms as usize;
    let mut acc = CompensatedSum::new();
    for k in 0..n_terms {
        acc.add(complex_pow(c(k as f64 + z), -s)?);
    }
    let a = n_terms as f64 + z;
    acc.add(0.5 * complex_pow(c(a), -s)?);
    acc.add(complex_pow(c(a), 1.0 - s)? / (s - 1.0));
    let truncation = s.norm() * a.powf(-s.re - 1.0) / 12.0;
    let rounding = 4.0 * f64::EPSILON * n_terms as f64 * z.powf(-s.re);
    Ok(Estimate {
        value: finite(acc.value(), "ζ(s, z)")?,
        error_bound: truncation + rounding,
        route: Route::DirectSeries,
    })
}

/// Pochhammer symbol (s)_n.
fn pochhammer(s: Complex64, n: usize) -> Complex64 {
    (0..n).fold(c(1.0), |acc, k| acc * (s + k as f64))
}

/// Σ_{k≥0} (k+a)^{−s} for real a > 0 by Euler–Maclaurin of even order m at
/// base a, including the periodic-Bernoulli remainder.
pub(crate) fn euler_maclaurin_tail(
    s: Complex64,
    a: f64,
    order: usize,
    tol: f64,
    p: &EvalParams,
) -> Result<(Complex64, f64)> {
    let table = bernoulli::table();
    let mut acc = CompensatedSum::new();
    let mut magnitude = 0.0;
    let mut push = |acc: &mut CompensatedSum, v: Complex64| {
        magnitude += v.norm();
        acc.add(v);
    };
    push(&mut acc, complex_pow(c(a), 1.0 - s)? / (s - 1.0));
    push(&mut acc, 0.5 * complex_pow(c(a), -s)?);
    // B_{2j}/(2j)! (s)_{2j−1} a^{−s−2j+1}
    let mut factorial = 1.0;
    let mut rising = c(1.0);
    let mut power = complex_pow(c(a), -s)?;
    for j in 1..=order {
        // here rising = (s)_{j−1} and power = a^{−s−j+1}
        factorial *= j as f64;
        if j % 2 == 0 {
            let term = table.number_f64(j) / factorial * rising * power;
            push(&mut acc, term);
        }
        rising *= s + (j - 1) as f64;
        power /= a;
    }
    // −((s)_m/m!) ∫₀^∞ B̄_m(t) (t+a)^{−s−m} dt; rising = (s)_m, factorial = m!
    let coef = rising / factorial;
    let mut bound = 0.0;
    if coef != c(0.0) {
        let inner = tol / coef.norm();
        let (remainder, rem_bound) = periodic_remainder(s + order as f64, a, order, inner, p)?;
        push(&mut acc, -coef * remainder);
        bound += rem_bound * coef.norm();
    }
    bound += 4.0 * f64::EPSILON * magnitude;
    Ok((acc.value(), bound))
}

/// ∫₀^∞ B̄_m(t) (t+a)^{−w} dt.
///
/// Unit subintervals are integrated by quadrature until repeated integration
/// by parts from the current left end b,
/// ∫₀^∞ B̄_r(t) H(t+b) dt = −B_{r+1} H(b)/(r+1) − (1/(r+1)) ∫₀^∞ B̄_{r+1}(t) H'(t+b) dt,
/// converges below `tol`; that expansion then closes the remaining tail.
fn periodic_remainder(
    w: Complex64,
    a: f64,
    order: usize,
    tol: f64,
    p: &EvalParams,
) -> Result<(Complex64, f64)> {
    const MAX_INTERVALS: usize = 1_000_000;
    let table = bernoulli::table();
    // |B_m(u)| <= |B_m| on [0, 1] for even m; keep the target above rounding
    let scale = table.number_f64(order).abs();
    let mut acc = CompensatedSum::new();
    let mut bound = 0.0;
    for n in 0..MAX_INTERVALS {
        let b = a + n as f64;
        if let Some((tail, tail_bound)) = integration_by_parts_tail(w, b, order, tol, table) {
            acc.add(tail);
            return Ok((acc.value(), bound + tail_bound));
        }
        let integrand = |u: f64, _: f64| {
            let bm = table.eval_real(order, u);
            (-w * (u + b).ln()).exp() * bm
        };
        let floor = 64.0 * f64::EPSILON * scale * b.powf(-w.re);
        let quad = p
            .quad
            .with_abs_tol((tol * 1e-2).min(p.quad.target_abs_tol).max(floor));
        let q = integrate_unit_interval(integrand, &quad)?;
        acc.add(q.value);
        bound += q.error_bound;
    }
    Err(Error::NoConvergence {
        cap: MAX_INTERVALS,
        partial: acc.value(),
        last_term: c(0.0),
    })
}

fn integration_by_parts_tail(
    w: Complex64,
    b: f64,
    order: usize,
    tol: f64,
    table: &bernoulli::BernoulliTable,
) -> Option<(Complex64, f64)> {
    let mut coef = 1.0;
    // H_j = (d/dt)^j (t+b)^{−w} at t = 0
    let mut deriv = (-w * b.ln()).exp();
    let mut total = c(0.0);
    let mut previous = f64::INFINITY;
    for r in order..bernoulli::MAX_INDEX {
        let bern = table.number_f64(r + 1);
        if bern != 0.0 {
            let term = deriv * (-coef * bern / (r + 1) as f64);
            let size = term.norm();
            if size > previous {
                return None;
            }
            if size < tol {
                // the first omitted term bounds an alternating-type tail
                return Some((total, size));
            }
            total += term;
            previous = size;
        }
        coef *= -1.0 / (r + 1) as f64;
        deriv *= -(w + (r - order) as f64) / b;
    }
    None
}

/// ζ(s, z) for s ≠ 1 and Re(s) > 1 − m: K direct terms, then order-m
/// Euler–Maclaurin at a = K + z with the periodic-Bernoulli remainder.
pub fn hurwitz_em(s: Complex64, z: f64, p: &EvalParams) -> Result<Estimate> {
    p.validate()?;
    check_s(s)?;
    check_z(z, true)?;
    pole_at_one(s)?;
    let strip = 1.0 - p.em_order as f64;
    if s.re <= strip {
        return Err(Error::Strip {
            re_s: s.re,
            bound: strip,
            order: p.em_order,
        });
    }
    let mut acc = CompensatedSum::new();
    let mut magnitude = 0.0;
    for k in 0..p.em_shift {
        let v = complex_pow(c(k as f64 + z), -s)?;
        magnitude += v.norm();
        acc.add(v);
    }
    let a = p.em_shift as f64 + z;
    let (tail, bound) = euler_maclaurin_tail(s, a, p.em_order, p.tol_abs * INNER_TOL_FACTOR, p)?;
    acc.add(tail);
    Ok(Estimate {
        value: finite(acc.value(), "ζ(s, z)")?,
        error_bound: bound + 4.0 * f64::EPSILON * magnitude,
        route: Route::EulerMaclaurin,
    })
}

/// ζ(s) = ζ(s, 1).
pub fn riemann_zeta(s: Complex64, p: &EvalParams) -> Result<Estimate> {
    hurwitz_em(s, 1.0, p)
}

/// Number of asymptotic orders used to close the truncated lattice sum.
const LATTICE_TAIL_ORDERS: usize = 6;

/// ζ(s, z) = z^{1−s}/(s−1) + z^{−s}/2 + (s z^{−s}/2πi) Σ_{l≠0} (1/l) U(1, 1−s; −2πilz).
///
/// Terms l and −l are summed as a pair, which makes the lattice sum exactly
/// real when s is. The sum is truncated at `l_cap`; the remaining tail is
/// closed with the large-argument expansion of U(1, 1−s; x), whose leading
/// term is 1/x, and the first omitted order goes into the error bound.
pub fn hurwitz_via_u(s: Complex64, z: f64, p: &EvalParams) -> Result<Estimate> {
    p.validate()?;
    check_s(s)?;
    check_z(z, false)?;
    pole_at_one(s)?;
    if s.re <= -1.0 {
        return Err(Error::Domain(format!(
            "lattice-sum representation is only used for Re(s) > −1, got s = {s}"
        )));
    }
    let z_pow = complex_pow(c(z), -s)?;
    let base = complex_pow(c(z), 1.0 - s)? / (s - 1.0) + 0.5 * z_pow;
    let prefactor = s * z_pow / Complex64::new(0.0, 2.0 * PI);
    if prefactor == c(0.0) {
        return Ok(Estimate {
            value: base,
            error_bound: 4.0 * f64::EPSILON * base.norm(),
            route: Route::TricomiLatticeSum,
        });
    }
    let gamma_p = 1.0 - s;
    let mut lattice = CompensatedSum::new();
    let mut magnitude = 0.0;
    for l in 1..=p.l_cap {
        let x = Complex64::new(0.0, -2.0 * PI * l as f64 * z);
        let pair = (tricomi_u_gamma(gamma_p, x)? - tricomi_u_gamma(gamma_p, -x)?) / l as f64;
        magnitude += pair.norm();
        lattice.add(pair);
    }
    let (tail, tail_bound) = lattice_tail(s, z, p)?;
    lattice.add(tail);
    let value = base + prefactor * lattice.value();
    let rounding = 8.0 * f64::EPSILON * (base.norm() + prefactor.norm() * magnitude);
    Ok(Estimate {
        value: finite(value, "ζ(s, z)")?,
        error_bound: prefactor.norm() * tail_bound + rounding,
        route: Route::TricomiLatticeSum,
    })
}

/// Σ_{l>L} (1/l)[U(x_l) − U(−x_l)], x_l = −2πilz, from
/// U(1, 1−s; x) ~ Σ_k (1+s)_k (−1)^k x^{−k−1}: odd powers survive the pairing,
/// leaving 2 Σ_{k even} (1+s)_k x₁^{−k−1} ζ(k+2, L+1).
fn lattice_tail(s: Complex64, z: f64, p: &EvalParams) -> Result<(Complex64, f64)> {
    let x1 = Complex64::new(0.0, -2.0 * PI * z);
    let a = p.l_cap as f64 + 1.0;
    let mut total = c(0.0);
    let mut last = f64::INFINITY;
    for j in 0..=LATTICE_TAIL_ORDERS {
        let k = 2 * j;
        // ζ(k+2, a) ≈ a^{−k−1}/(k+1); ask for full relative precision
        let scale = a.powi(-(k as i32) - 1) / (k + 1) as f64;
        let order_zeta = euler_maclaurin_tail(c((k + 2) as f64), a, 8, 1e-16 * scale, p)?.0;
        let term = 2.0 * pochhammer(1.0 + s, k) * x1.powi(-(k as i32) - 1) * order_zeta;
        let size = term.norm();
        if size > last {
            // asymptotic series has started to diverge
            return Ok((total, last));
        }
        if j == LATTICE_TAIL_ORDERS {
            return Ok((total, size));
        }
        total += term;
        last = size;
    }
    unreachable!("loop returns on its final iteration")
}

/// L(s, z) = Σ_{n≥1} e^{2πinz} n^{−s} for Re(s) > 1.
///
/// The first N − 1 terms are summed directly. The tail e^{2πiNz} Σ_{k≥0} g(k),
/// g(t) = e^{iβt} (N+t)^{−s} with β = 2π(z − round(z)), is summed by
/// Euler–Maclaurin; its integral is N^{1−s} e^{x} x^{s−1} Γ(1−s, x) at
/// x = −iβN, which reduces to N^{1−s}/(s−1) when β = 0.
pub fn polylog_l(s: Complex64, z: f64, p: &EvalParams) -> Result<Estimate> {
    p.validate()?;
    check_s(s)?;
    check_z(z, true)?;
    if s.re <= 1.0 {
        return Err(Error::Domain(format!(
            "periodic zeta series needs Re(s) > 1, got s = {s}"
        )));
    }
    let tol = p.tol_abs * INNER_TOL_FACTOR;
    let theta = z - z.round();
    let beta = 2.0 * PI * theta;
    let mut n_start = (4.0 * s.norm()).ceil().max(32.0) as usize;
    loop {
        if let Some((tail, tail_bound)) = polylog_tail(s, beta, n_start, tol)? {
            let mut acc = CompensatedSum::new();
            let mut magnitude = 0.0;
            for n in 1..n_start {
                let v = unit_phase(n as f64 * theta) * complex_pow(c(n as f64), -s)?;
                magnitude += v.norm();
                acc.add(v);
            }
            let phase_n = unit_phase(n_start as f64 * theta);
            acc.add(phase_n * tail);
            magnitude += tail.norm();
            return Ok(Estimate {
                value: finite(acc.value(), "L(s, z)")?,
                error_bound: tail_bound + 4.0 * f64::EPSILON * magnitude,
                route: Route::Polylog,
            });
        }
        n_start *= 2;
        if n_start > p.series_cap {
            return Err(Error::CapExceeded {
                requested: n_start,
                cap: p.series_cap,
            });
        }
    }
}

/// e^{2πi·phase} with the phase reduced mod 1 first.
fn unit_phase(phase: f64) -> Complex64 {
    let frac = phase - phase.round();
    Complex64::from_polar(1.0, 2.0 * PI * frac)
}

/// Σ_{k≥0} e^{iβk} (N+k)^{−s} by Euler–Maclaurin at k = 0, or `None` if the
/// asymptotic terms stop decreasing before reaching `tol`.
fn polylog_tail(s: Complex64, beta: f64, n: usize, tol: f64) -> Result<Option<(Complex64, f64)>> {
    let table = bernoulli::table();
    let nf = n as f64;
    let integral = if beta == 0.0 {
        complex_pow(c(nf), 1.0 - s)? / (s - 1.0)
    } else {
        complex_pow(c(nf), 1.0 - s)?
            * upper_incomplete_gamma_scaled(1.0 - s, Complex64::new(0.0, -beta * nf))?
    };
    // f^{(i)}(N) = (−1)^i (s)_i N^{−s−i}, i = 0..=max_order
    let max_order = bernoulli::MAX_INDEX - 1;
    let mut f_derivs = Vec::with_capacity(max_order + 1);
    let mut d = complex_pow(c(nf), -s)?;
    for i in 0..=max_order {
        f_derivs.push(d);
        d *= -(s + i as f64) / nf;
    }
    let ib = Complex64::new(0.0, beta);
    // g^{(r)}(0) = Σ_i C(r, i) (iβ)^{r−i} f^{(i)}(N)
    let g_deriv = |r: usize| {
        if beta == 0.0 {
            return f_derivs[r];
        }
        let mut total = c(0.0);
        let mut binom = 1.0;
        for (i, fd) in f_derivs.iter().enumerate().take(r + 1) {
            total += binom * ib.powi((r - i) as i32) * fd;
            binom = binom * (r - i) as f64 / (i + 1) as f64;
        }
        total
    };
    let mut total = integral + 0.5 * f_derivs[0];
    let mut previous = f64::INFINITY;
    let mut factorial = 1.0;
    for k in 1..=max_order {
        factorial *= k as f64;
        if k % 2 == 1 {
            continue;
        }
        // −B_k/k! g^{(k−1)}(0)
        let term = -table.number_f64(k) / factorial * g_deriv(k - 1);
        let size = term.norm();
        if size > previous {
            return Ok(None);
        }
        if size < tol {
            return Ok(Some((total, size + 4.0 * f64::EPSILON * integral.norm())));
        }
        total += term;
        previous = size;
    }
    Ok(None)
}

/// Γ(1−s) {(2πi)^{s−1} L(1−s, z) + (−2πi)^{s−1} L(1−s, 1−z)} for Re(s) < 0.
///
/// At z = 1 the second argument 1 − z = 0 is read as 1, since e^{2πin·0} =
/// e^{2πin·1}; the relation then reduces to Riemann's functional equation.
pub fn hurwitz_rhs(s: Complex64, z: f64, p: &EvalParams) -> Result<Estimate> {
    p.validate()?;
    check_s(s)?;
    check_z(z, true)?;
    if s.re >= 0.0 {
        return Err(Error::Domain(format!(
            "Hurwitz relation right side needs Re(s) < 0, got s = {s}"
        )));
    }
    let reflected = 1.0 - z;
    let reflected = if reflected <= 0.0 { 1.0 } else { reflected };
    let w = 1.0 - s;
    let l_plus = polylog_l(w, z, p)?;
    let l_minus = polylog_l(w, reflected, p)?;
    let tau = 2.0 * PI;
    let plus = complex_pow(Complex64::new(0.0, tau), s - 1.0)?;
    let minus = complex_pow(Complex64::new(0.0, -tau), s - 1.0)?;
    let g = gamma(w)?;
    let value = g * (plus * l_plus.value + minus * l_minus.value);
    let bound = g.norm() * (plus.norm() * l_plus.error_bound + minus.norm() * l_minus.error_bound)
        + 8.0 * f64::EPSILON * value.norm();
    Ok(Estimate {
        value: finite(value, "Hurwitz relation right side")?,
        error_bound: bound,
        route: Route::HurwitzRelation,
    })
}
