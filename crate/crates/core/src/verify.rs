//! Residual checks for every identity the crate implements.
//!
//! Each check evaluates both sides of an identity over a set of points and
//! collects the differences into a [`ResidualReport`]. A point that fails to
//! evaluate is recorded with its error and marks the report as failed; it
//! never aborts the remaining points. Points are evaluated in parallel and
//! reported in their declared order, so reports are reproducible bit for bit
//! (apart from the timestamp).

use crate::bernoulli::{fourier_b2_partial, periodic_bernoulli, sawtooth_sum};
use crate::confluent::{asymptotic_ratio, connection_rhs, tricomi_u};
use crate::numerics::{complex_pow, gamma, integrate_unit_interval, sin_pi};
use crate::zeta::{self, Estimate};
use crate::{Error, EvalParams, Result};
use chrono::{SecondsFormat, Utc};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Smallest magnitude used as the denominator of a relative residual.
///
/// Several grid points sit on or near zeros of ζ (ζ(−2, 1/2) = 0, for one),
/// where a purely relative measure would amplify rounding noise.
pub const REL_FLOOR: f64 = 1e-3;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_CONNECTION_SAMPLE: usize = 100;

/// Check ids accepted by [`run_suite`], in the order `all` runs them.
pub const CHECK_IDS: [&str; 7] = [
    "hurwitz",
    "riemann-fe",
    "via-u",
    "connection",
    "vanishing",
    "asymptotics",
    "fourier",
];

/// A rectangular grid of (s, z) points and the parameters to evaluate it with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub s_points: Vec<Complex64>,
    pub z_points: Vec<f64>,
    #[serde(default)]
    pub params: EvalParams,
}

impl GridSpec {
    pub fn new(s_points: Vec<Complex64>, z_points: Vec<f64>, params: EvalParams) -> Self {
        Self {
            s_points,
            z_points,
            params,
        }
    }

    /// Non-empty lists, z in (0, 1], no s at the pole.
    pub fn validate(&self) -> Result<()> {
        if self.s_points.is_empty() || self.z_points.is_empty() {
            return Err(Error::InvalidParams(
                "grid needs at least one s and one z".into(),
            ));
        }
        if let Some(z) = self
            .z_points
            .iter()
            .find(|z| !(z.is_finite() && **z > 0.0 && **z <= 1.0))
        {
            return Err(Error::InvalidParams(format!(
                "grid z = {z} is outside (0, 1]"
            )));
        }
        if let Some(s) = self
            .s_points
            .iter()
            .find(|s| !(s.re.is_finite() && s.im.is_finite()) || **s == Complex64::new(1.0, 0.0))
        {
            return Err(Error::InvalidParams(format!(
                "grid s = {s} is not admissible"
            )));
        }
        self.params.validate()
    }

    fn require_s(&self, ok: impl Fn(Complex64) -> bool, what: &str) -> Result<()> {
        match self.s_points.iter().find(|s| !ok(**s)) {
            Some(s) => Err(Error::InvalidParams(format!("grid s = {s}: {what}"))),
            None => Ok(()),
        }
    }

    fn require_open_z(&self) -> Result<()> {
        match self.z_points.iter().find(|z| **z >= 1.0) {
            Some(z) => Err(Error::InvalidParams(format!(
                "grid z = {z} must be below 1"
            ))),
            None => Ok(()),
        }
    }

    fn points(&self) -> Vec<(Complex64, f64)> {
        self.s_points
            .iter()
            .flat_map(|&s| self.z_points.iter().map(move |&z| (s, z)))
            .collect()
    }
}

/// Extra coordinates of a point that is not indexed by (s, z).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ArgValue {
    Real(f64),
    Complex(Complex64),
}

/// The ungated second evaluation reported next to a gated residual.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub value: Complex64,
    pub error_bound: f64,
    /// |value − gated value|.
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointResidual {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<f64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub args: BTreeMap<String, ArgValue>,
    pub lhs: Option<Complex64>,
    pub rhs: Option<Complex64>,
    pub abs_residual: Option<f64>,
    pub rel_residual: Option<f64>,
    pub error_bound: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<Diagnostic>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl PointResidual {
    fn at(s: Option<Complex64>, z: Option<f64>) -> Self {
        Self {
            s,
            z,
            args: BTreeMap::new(),
            lhs: None,
            rhs: None,
            abs_residual: None,
            rel_residual: None,
            error_bound: None,
            diagnostic: None,
            error: None,
        }
    }

    fn arg(mut self, name: &str, value: ArgValue) -> Self {
        self.args.insert(name.to_string(), value);
        self
    }

    fn with_sides(mut self, lhs: Complex64, rhs: Complex64, rel: f64, bound: f64) -> Self {
        let abs = (lhs - rhs).norm();
        if !(abs.is_finite() && rel.is_finite() && bound.is_finite()) {
            self.error = Some(format!("non-finite residual for lhs {lhs}, rhs {rhs}"));
            return self;
        }
        self.lhs = Some(lhs);
        self.rhs = Some(rhs);
        self.abs_residual = Some(abs);
        self.rel_residual = Some(rel);
        self.error_bound = Some(bound);
        self
    }

    fn with_estimates(self, lhs: Estimate, rhs: Estimate) -> Self {
        let rel = relative(lhs.value, rhs.value);
        self.with_sides(lhs.value, rhs.value, rel, lhs.error_bound + rhs.error_bound)
    }

    fn failed(mut self, err: &Error) -> Self {
        self.error = Some(err.to_string());
        self
    }

    fn settle(self, outcome: Result<Self>, fallback: impl FnOnce(Self, &Error) -> Self) -> Self {
        match outcome {
            Ok(point) => point,
            Err(err) => fallback(self, &err),
        }
    }

    pub fn succeeded(&self) -> bool {
        self.error.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub check_id: String,
    pub pass: bool,
    /// Gate on `max_rel_residual`; `None` for checks gated on another rule.
    pub tolerance: Option<f64>,
    pub max_abs_residual: f64,
    pub max_rel_residual: f64,
    pub params: EvalParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub points: Vec<PointResidual>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub timestamp: String,
}

impl ResidualReport {
    fn assemble(
        check_id: &str,
        tolerance: Option<f64>,
        params: &EvalParams,
        points: Vec<PointResidual>,
    ) -> Self {
        let max_of = |f: fn(&PointResidual) -> Option<f64>| {
            points.iter().filter_map(f).fold(0.0_f64, f64::max)
        };
        let max_abs_residual = max_of(|p| p.abs_residual);
        let max_rel_residual = max_of(|p| p.rel_residual);
        let all_ok = !points.is_empty() && points.iter().all(PointResidual::succeeded);
        let pass = all_ok && tolerance.is_none_or(|tol| max_rel_residual <= tol);
        Self {
            check_id: check_id.to_string(),
            pass,
            tolerance,
            max_abs_residual,
            max_rel_residual,
            params: *params,
            seed: None,
            points,
            note: None,
            timestamp: Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true),
        }
    }

    pub fn failed_points(&self) -> usize {
        self.points.iter().filter(|p| !p.succeeded()).count()
    }
}

/// |lhs − rhs| / max(|lhs|, |rhs|, [`REL_FLOOR`]).
pub fn relative(lhs: Complex64, rhs: Complex64) -> f64 {
    (lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(REL_FLOOR)
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn evaluate_grid<F>(grid: &GridSpec, eval: F) -> Vec<PointResidual>
where
    F: Fn(Complex64, f64, &EvalParams) -> Result<PointResidual> + Sync,
{
    grid.points()
        .into_par_iter()
        .map(|(s, z)| {
            PointResidual::at(Some(s), Some(z))
                .settle(eval(s, z, &grid.params), PointResidual::failed)
        })
        .collect()
}

/// ζ(s, z) by Euler–Maclaurin against the polylogarithm side of the Hurwitz
/// relation. Every grid s must have Re(s) < 0.
pub fn check_hurwitz_relation(grid: &GridSpec, tol: f64) -> Result<ResidualReport> {
    grid.validate()?;
    grid.require_s(|s| s.re < 0.0, "the Hurwitz relation check needs Re(s) < 0")?;
    let points = evaluate_grid(grid, |s, z, p| {
        let lhs = zeta::hurwitz_em(s, z, p)?;
        let rhs = zeta::hurwitz_rhs(s, z, p)?;
        Ok(PointResidual::at(Some(s), Some(z)).with_estimates(lhs, rhs))
    });
    Ok(ResidualReport::assemble(
        "hurwitz",
        Some(tol),
        &grid.params,
        points,
    ))
}

/// 2^s π^{s−1} Γ(1−s) sin(πs/2) ζ(1−s), with ζ(1−s) from the direct series.
pub fn riemann_fe_rhs(s: Complex64, p: &EvalParams) -> Result<Estimate> {
    let reflected = zeta::hurwitz_direct(1.0 - s, 1.0, p)?;
    let factor = complex_pow(c(2.0, 0.0), s)?
        * complex_pow(c(PI, 0.0), s - 1.0)?
        * gamma(1.0 - s)?
        * sin_pi(s / 2.0);
    let value = factor * reflected.value;
    Ok(Estimate {
        value,
        error_bound: factor.norm() * reflected.error_bound + 8.0 * f64::EPSILON * value.norm(),
        route: zeta::Route::DirectSeries,
    })
}

/// ζ(s) against its functional equation, for Re(s) < 0.
pub fn check_riemann_fe(
    s_points: &[Complex64],
    params: &EvalParams,
    tol: f64,
) -> Result<ResidualReport> {
    let grid = GridSpec::new(s_points.to_vec(), vec![1.0], *params);
    grid.validate()?;
    grid.require_s(
        |s| s.re < 0.0,
        "the functional equation check needs Re(s) < 0",
    )?;
    let points: Vec<PointResidual> = s_points
        .par_iter()
        .map(|&s| {
            let base = PointResidual::at(Some(s), None);
            let outcome = (|| {
                let lhs = zeta::riemann_zeta(s, params)?;
                let rhs = riemann_fe_rhs(s, params)?;
                Ok(PointResidual::at(Some(s), None).with_estimates(lhs, rhs))
            })();
            base.settle(outcome, PointResidual::failed)
        })
        .collect();
    Ok(ResidualReport::assemble(
        "riemann-fe",
        Some(tol),
        params,
        points,
    ))
}

/// The Tricomi lattice sum against Euler–Maclaurin, for Re(s) > −1 and
/// z in (0, 1).
pub fn check_via_u_agreement(grid: &GridSpec, tol: f64) -> Result<ResidualReport> {
    grid.validate()?;
    grid.require_s(|s| s.re > -1.0, "the lattice-sum check needs Re(s) > −1")?;
    grid.require_open_z()?;
    let points = evaluate_grid(grid, |s, z, p| {
        let lhs = zeta::hurwitz_via_u(s, z, p)?;
        let rhs = zeta::hurwitz_em(s, z, p)?;
        Ok(PointResidual::at(Some(s), Some(z)).with_estimates(lhs, rhs))
    });
    Ok(ResidualReport::assemble(
        "via-u",
        Some(tol),
        &grid.params,
        points,
    ))
}

/// One (α, γ, x) triple of the connection formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionPoint {
    pub alpha: Complex64,
    pub gamma: Complex64,
    pub x: Complex64,
}

impl ConnectionPoint {
    pub fn new(alpha: Complex64, gamma: Complex64, x: Complex64) -> Self {
        Self { alpha, gamma, x }
    }

    /// The zeta specialization α = 1, γ = 1 − s, x = −2πilz.
    pub fn zeta_specialization(s: Complex64, l: i64, z: f64) -> Self {
        Self::new(c(1.0, 0.0), 1.0 - s, c(0.0, -2.0 * PI * l as f64 * z))
    }
}

/// The (s, l, z) triples whose specializations every connection check includes.
pub const SPECIALIZATION_TRIPLES: [((f64, f64), i64, f64); 5] = [
    ((0.5, 0.0), 3, 0.25),
    ((0.5, 1.0), 1, 0.5),
    ((-0.5, 0.0), -2, 0.75),
    ((-1.5, 0.0), 1, 0.1),
    ((0.25, -0.5), 2, 0.4),
];

/// Seeded sample of (α, γ, x): half with α = 1 (the case the lattice sum
/// uses), half with Re(α) in [0.5, 3]; γ in [−3, 3] × [−2, 2] at least 0.05
/// from the integers; Re(x) in [0.5, 5], Im(x) in [−3, 3].
pub fn connection_sample(sample_size: usize, seed: u64) -> Vec<ConnectionPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..sample_size)
        .map(|i| {
            let alpha = if i % 2 == 0 {
                c(1.0, 0.0)
            } else {
                c(rng.gen_range(0.5..3.0), rng.gen_range(-1.0..1.0))
            };
            let gamma = loop {
                let g = c(rng.gen_range(-3.0..3.0), rng.gen_range(-2.0..2.0));
                if c(g.re - g.re.round(), g.im).norm() >= 0.05 {
                    break g;
                }
            };
            let x = c(rng.gen_range(0.5..5.0), rng.gen_range(-3.0..3.0));
            ConnectionPoint::new(alpha, gamma, x)
        })
        .collect()
}

/// Connection formula residuals at explicit points; U comes from the route
/// selected in `params.confluent`.
pub fn check_connection_points(
    points: &[ConnectionPoint],
    params: &EvalParams,
    tol: f64,
) -> Result<ResidualReport> {
    params.validate()?;
    if points.is_empty() {
        return Err(Error::InvalidParams(
            "connection check needs at least one point".into(),
        ));
    }
    let cp = &params.confluent;
    let residuals = points
        .par_iter()
        .map(|pt| {
            let base = PointResidual::at(None, None)
                .arg("alpha", ArgValue::Complex(pt.alpha))
                .arg("gamma", ArgValue::Complex(pt.gamma))
                .arg("x", ArgValue::Complex(pt.x));
            let outcome = (|| {
                let u = tricomi_u(pt.alpha, pt.gamma, pt.x, cp)?;
                let rhs = connection_rhs(pt.alpha, pt.gamma, pt.x, cp)?;
                let rel = (u - rhs).norm() / u.norm().max(1.0);
                Ok(base.clone().with_sides(u, rhs, rel, 0.0))
            })();
            base.clone().settle(outcome, PointResidual::failed)
        })
        .collect();
    Ok(ResidualReport::assemble(
        "connection",
        Some(tol),
        params,
        residuals,
    ))
}

/// Seeded random sample plus the zeta specializations.
pub fn check_connection(
    sample_size: usize,
    seed: u64,
    params: &EvalParams,
    tol: f64,
) -> Result<ResidualReport> {
    if sample_size == 0 {
        return Err(Error::InvalidParams(
            "sample_size must be at least 1".into(),
        ));
    }
    let mut points = connection_sample(sample_size, seed);
    points.extend(
        SPECIALIZATION_TRIPLES
            .iter()
            .map(|&((re, im), l, z)| ConnectionPoint::zeta_specialization(c(re, im), l, z)),
    );
    let mut report = check_connection_points(&points, params, tol)?;
    report.seed = Some(seed);
    Ok(report)
}

/// z^{1−s}/(s−1) + z^{−s}/2 + z^{−s}·(s/π)∫₀¹ S(zt)(1−t)^{−s} dt with
/// S(θ) = Σ sin(2πnθ)/n in closed form: the l-sum over Kummer functions
/// evaluated through the sine series and termwise integration.
pub fn vanishing_sawtooth_route(s: Complex64, z: f64, p: &EvalParams) -> Result<(Complex64, f64)> {
    let q = integrate_unit_interval(
        |t, one_minus_t| {
            let saw = sawtooth_sum(z * t).unwrap_or(0.0);
            let weight = (-s * one_minus_t.ln()).exp();
            saw * weight
        },
        &p.quad,
    )?;
    let z_pow = complex_pow(c(z, 0.0), -s)?;
    let base = complex_pow(c(z, 0.0), 1.0 - s)? / (s - 1.0) + 0.5 * z_pow;
    let scale = z_pow * s / PI;
    Ok((base + scale * q.value, scale.norm() * q.error_bound))
}

/// The closing identity z^{1−s}/(s−1) + z^{−s}/2 + (z^{−s}/2πi) Σ_{l≠0} F(1, 1−s; −2πilz)/l = 0.
///
/// The gate uses its equivalent form ζ(s, z) − [Hurwitz relation right side].
/// The sawtooth-route value of the left side is attached to each point as an
/// ungated diagnostic.
pub fn check_vanishing_identity(grid: &GridSpec, tol: f64) -> Result<ResidualReport> {
    grid.validate()?;
    grid.require_s(
        |s| s.re < 0.0,
        "the vanishing identity check needs Re(s) < 0",
    )?;
    grid.require_open_z()?;
    let points = evaluate_grid(grid, |s, z, p| {
        let lhs = zeta::hurwitz_em(s, z, p)?;
        let rhs = zeta::hurwitz_rhs(s, z, p)?;
        let mut point = PointResidual::at(Some(s), Some(z)).with_estimates(lhs, rhs);
        let gated = lhs.value - rhs.value;
        point.diagnostic = vanishing_sawtooth_route(s, z, p)
            .ok()
            .map(|(value, bound)| Diagnostic {
                value,
                error_bound: bound,
                deviation: (value - gated).norm(),
            });
        Ok(point)
    });
    Ok(ResidualReport::assemble(
        "vanishing",
        Some(tol),
        &grid.params,
        points,
    ))
}

/// A ratio this small counts as the exact law U = x^{−α}.
pub const EXACT_LAW_TOL: f64 = 1e-12;

/// |x^α U(α, γ; x) − 1| along the ladder for each (α, γ).
///
/// A pair passes when its ratios strictly decrease, or when all of them are
/// at most [`EXACT_LAW_TOL`] (closed forms such as U(1, 2; x) = 1/x).
pub fn check_asymptotics(
    pairs: &[(Complex64, Complex64)],
    ladder: &[f64],
    params: &EvalParams,
) -> Result<ResidualReport> {
    params.validate()?;
    if ladder.is_empty() {
        return Err(Error::InvalidParams("asymptotic ladder is empty".into()));
    }
    if pairs.is_empty() {
        return Err(Error::InvalidParams(
            "asymptotic check needs at least one (α, γ)".into(),
        ));
    }
    if ladder.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParams(
            "asymptotic ladder must increase".into(),
        ));
    }
    let per_pair: Vec<(bool, Vec<PointResidual>)> = pairs
        .par_iter()
        .map(|&(alpha, gamma_p)| {
            let labelled = |m: f64| {
                PointResidual::at(None, None)
                    .arg("alpha", ArgValue::Complex(alpha))
                    .arg("gamma", ArgValue::Complex(gamma_p))
                    .arg("x", ArgValue::Real(m))
            };
            match asymptotic_ratio(alpha, gamma_p, ladder, &params.confluent) {
                Ok(ratios) => {
                    let decreasing = ratios.windows(2).all(|w| w[1] < w[0]);
                    let exact = ratios.iter().all(|&r| r <= EXACT_LAW_TOL);
                    let points = ladder
                        .iter()
                        .zip(&ratios)
                        .map(|(&m, &r)| {
                            let lhs = c(1.0 + r, 0.0);
                            labelled(m).with_sides(lhs, c(1.0, 0.0), r, 0.0)
                        })
                        .collect();
                    (decreasing || exact, points)
                }
                Err(err) => (
                    false,
                    ladder.iter().map(|&m| labelled(m).failed(&err)).collect(),
                ),
            }
        })
        .collect();
    let ok = per_pair.iter().all(|(ok, _)| *ok);
    let points = per_pair.into_iter().flat_map(|(_, p)| p).collect();
    let mut report = ResidualReport::assemble("asymptotics", None, params, points);
    report.pass &= ok;
    report.note =
        Some("pass: ratios strictly decrease along the ladder, or all are ≤ 1e-12".into());
    Ok(report)
}

/// Fourier partial sums of B̄₂ against the polynomial.
///
/// Gate: the error is at most C/N on every rung with C = 1. The note also
/// counts rungs where the error grew while still above `floor`; the tail
/// Σ_{n>N} cos(2πnt)/n² oscillates in sign and size for t ∉ {0, 1/2}, so
/// those are reported rather than gated.
pub fn check_fourier(
    ts: &[f64],
    ladder: &[usize],
    floor: f64,
    params: &EvalParams,
) -> Result<ResidualReport> {
    if ts.is_empty() || ladder.is_empty() {
        return Err(Error::InvalidParams(
            "Fourier check needs t values and a ladder".into(),
        ));
    }
    if ladder[0] == 0 || ladder.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParams(
            "Fourier ladder must be positive and increasing".into(),
        ));
    }
    let per_t: Vec<(f64, usize, Vec<PointResidual>)> = ts
        .par_iter()
        .map(|&t| {
            let label = |n: usize| {
                PointResidual::at(None, None)
                    .arg("t", ArgValue::Real(t))
                    .arg("terms", ArgValue::Real(n as f64))
            };
            let exact = match periodic_bernoulli(2, t) {
                Ok(v) => v,
                Err(err) => {
                    let points = ladder.iter().map(|&n| label(n).failed(&err)).collect();
                    return (f64::INFINITY, 0, points);
                }
            };
            let partials: Vec<f64> = ladder.iter().map(|&n| fourier_b2_partial(t, n)).collect();
            let errors: Vec<f64> = partials.iter().map(|v| (v - exact).abs()).collect();
            let fitted = ladder
                .iter()
                .zip(&errors)
                .map(|(&n, &e)| e * n as f64)
                .fold(0.0, f64::max);
            let rises = errors
                .windows(2)
                .filter(|w| w[0] > floor && w[1] >= w[0])
                .count();
            let points = ladder
                .iter()
                .zip(partials.iter().zip(&errors))
                .map(|(&n, (&partial, &e))| {
                    label(n).with_sides(c(partial, 0.0), c(exact, 0.0), e, 1.0 / n as f64)
                })
                .collect();
            (fitted, rises, points)
        })
        .collect();
    let fitted = per_t.iter().map(|(f, _, _)| *f).fold(0.0, f64::max);
    let rises: usize = per_t.iter().map(|(_, r, _)| *r).sum();
    let points = per_t.into_iter().flat_map(|(_, _, p)| p).collect();
    let mut report = ResidualReport::assemble("fourier", None, params, points);
    report.pass &= fitted <= 1.0;
    report.note = Some(format!(
        "pass: error ≤ C/N with fitted C = {fitted:.3} ≤ 1; \
         {rises} rung(s) where the error grew while above {floor:e} (ungated)"
    ));
    Ok(report)
}

/// Default s values for the relation checks (all Re(s) < 0).
pub fn default_relation_s() -> Vec<Complex64> {
    vec![
        c(-0.5, 0.0),
        c(-1.0, 0.0),
        c(-1.5, 0.0),
        c(-2.0, 0.0),
        c(-2.5, 0.0),
        c(-0.5, 2.0),
        c(-0.5, -2.0),
        c(-2.5, 2.0),
        c(-2.5, -2.0),
        c(-1.5, 0.5),
    ]
}

pub const DEFAULT_RELATION_Z: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 0.9];

pub fn default_riemann_s() -> Vec<Complex64> {
    vec![
        c(-0.5, 0.0),
        c(-1.0, 0.0),
        c(-1.5, 0.0),
        c(-2.0, 0.0),
        c(-2.5, 0.0),
        c(-0.5, 2.0),
    ]
}

pub fn default_via_u_s() -> Vec<Complex64> {
    vec![c(2.0, 0.0), c(0.5, 0.0), c(0.0, 0.0), c(0.5, 1.0)]
}

pub const DEFAULT_VIA_U_Z: [f64; 3] = [0.25, 0.5, 0.75];

pub fn default_asymptotic_pairs() -> Vec<(Complex64, Complex64)> {
    vec![
        (c(1.0, 0.0), c(0.5, 0.0)),
        (c(2.0, 0.0), c(1.0, 0.0)),
        (c(3.0, 0.0), c(1.5, 0.0)),
        (c(1.0, 0.0), c(2.0, 0.0)),
    ]
}

pub const DEFAULT_ASYMPTOTIC_LADDER: [f64; 4] = [10.0, 100.0, 1000.0, 10000.0];

pub fn default_fourier_t() -> Vec<f64> {
    (0..10).map(|k| k as f64 / 10.0).collect()
}

/// N = 16, 32, …, 4096.
pub fn default_fourier_ladder() -> Vec<usize> {
    (4..=12).map(|k| 1usize << k).collect()
}

pub const FOURIER_FLOOR: f64 = 1e-6;

/// Default gate of each check, where it has one.
pub fn default_tolerance(check_id: &str) -> Option<f64> {
    match check_id {
        "hurwitz" | "connection" | "vanishing" => Some(1e-8),
        "riemann-fe" => Some(1e-9),
        "via-u" => Some(1e-6),
        _ => None,
    }
}

/// Inputs shared by the checks of one suite run.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub params: EvalParams,
    /// Overrides every check's default tolerance.
    pub tol: Option<f64>,
    pub seed: u64,
    pub connection_sample: usize,
    /// Replaces the default (s, z) grid of the grid-based checks.
    pub grid: Option<GridSpec>,
}

impl SuiteConfig {
    pub fn new(params: EvalParams) -> Self {
        Self {
            params,
            tol: None,
            seed: DEFAULT_SEED,
            connection_sample: DEFAULT_CONNECTION_SAMPLE,
            grid: None,
        }
    }
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self::new(EvalParams::default())
    }
}

/// Expands `all` and rejects unknown ids, preserving order.
pub fn resolve_ids<S: AsRef<str>>(ids: &[S]) -> Result<Vec<&'static str>> {
    let mut out = Vec::new();
    for id in ids {
        let id = id.as_ref();
        if id == "all" {
            out.extend(CHECK_IDS);
        } else if let Some(known) = CHECK_IDS.iter().find(|k| **k == id) {
            out.push(*known);
        } else {
            return Err(Error::UnknownCheckId(id.to_string()));
        }
    }
    Ok(out)
}

fn run_one(id: &str, cfg: &SuiteConfig) -> Result<ResidualReport> {
    let p = cfg.params;
    let tol = |id: &str| cfg.tol.or(default_tolerance(id)).unwrap_or(f64::INFINITY);
    let grid_or = |s: Vec<Complex64>, z: &[f64]| {
        cfg.grid
            .clone()
            .unwrap_or_else(|| GridSpec::new(s, z.to_vec(), p))
    };
    match id {
        "hurwitz" => {
            check_hurwitz_relation(&grid_or(default_relation_s(), &DEFAULT_RELATION_Z), tol(id))
        }
        "riemann-fe" => {
            let s = cfg
                .grid
                .as_ref()
                .map_or_else(default_riemann_s, |g| g.s_points.clone());
            check_riemann_fe(&s, &p, tol(id))
        }
        "via-u" => check_via_u_agreement(&grid_or(default_via_u_s(), &DEFAULT_VIA_U_Z), tol(id)),
        "connection" => check_connection(cfg.connection_sample, cfg.seed, &p, tol(id)),
        "vanishing" => {
            check_vanishing_identity(&grid_or(default_relation_s(), &DEFAULT_RELATION_Z), tol(id))
        }
        "asymptotics" => {
            check_asymptotics(&default_asymptotic_pairs(), &DEFAULT_ASYMPTOTIC_LADDER, &p)
        }
        "fourier" => check_fourier(
            &default_fourier_t(),
            &default_fourier_ladder(),
            cfg.tol.unwrap_or(FOURIER_FLOOR),
            &p,
        ),
        other => Err(Error::UnknownCheckId(other.to_string())),
    }
}

/// Runs the selected checks in order. Unknown ids are rejected before
/// anything is evaluated.
pub fn run_suite<S: AsRef<str>>(ids: &[S], cfg: &SuiteConfig) -> Result<Vec<ResidualReport>> {
    let ids = resolve_ids(ids)?;
    cfg.params.validate()?;
    ids.into_iter().map(|id| run_one(id, cfg)).collect()
}
