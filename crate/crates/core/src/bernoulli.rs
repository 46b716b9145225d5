//! Exact Bernoulli numbers and polynomials, their 1-periodic extensions, and
//! the two trigonometric series tied to them.
//!
//! Convention: B₁ = −1/2, i.e. Bₙ = Bₙ(0) with Bₙ(t) defined by the generating
//! function u e^{tu} / (e^u − 1).

use crate::{Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use std::f64::consts::PI;
use std::sync::LazyLock;

/// Reduced fraction of arbitrary-precision integers.
pub type Rational = BigRational;

/// Largest supported index.
pub const MAX_INDEX: usize = 128;

/// Bₙ and the coefficients of Bₙ(t) for n = 0..=max_n.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    numbers: Vec<Rational>,
    /// `polys[n][j]` is the coefficient of t^j in Bₙ(t).
    polys: Vec<Vec<Rational>>,
    numbers_f64: Vec<f64>,
    polys_f64: Vec<Vec<f64>>,
}

fn cap_check(n: usize) -> Result<()> {
    if n > MAX_INDEX {
        return Err(Error::CapExceeded {
            requested: n,
            cap: MAX_INDEX,
        });
    }
    Ok(())
}

fn to_f64(r: &Rational) -> f64 {
    // numerator and denominator may both overflow f64 individually
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Pascal rows C(n, 0..=n) for n = 0..=max.
fn binomial_rows(max: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max + 1);
    for n in 0..=max {
        let mut row = vec![BigInt::from(1); n + 1];
        for k in 1..n {
            row[k] = &rows[n - 1][k - 1] + &rows[n - 1][k];
        }
        rows.push(row);
    }
    rows
}

/// Exact table from the recurrence Σ_{k=0}^{n} C(n+1, k) B_k = 0, B₀ = 1.
pub fn bernoulli_numbers(max_n: usize) -> Result<BernoulliTable> {
    cap_check(max_n)?;
    let binom = binomial_rows(max_n + 1);
    let mut numbers: Vec<Rational> = Vec::with_capacity(max_n + 1);
    numbers.push(Rational::from_integer(BigInt::from(1)));
    for n in 1..=max_n {
        if n >= 3 && n % 2 == 1 {
            numbers.push(Rational::zero());
            continue;
        }
        let mut acc = Rational::zero();
        for (k, b) in numbers.iter().enumerate() {
            if !b.is_zero() {
                acc += b * Rational::from_integer(binom[n + 1][k].clone());
            }
        }
        // C(n+1, n) B_n = −acc
        numbers.push(-acc / Rational::from_integer(BigInt::from(n + 1)));
    }
    let polys: Vec<Vec<Rational>> = (0..=max_n)
        .map(|n| {
            (0..=n)
                .map(|j| &numbers[n - j] * Rational::from_integer(binom[n][j].clone()))
                .collect()
        })
        .collect();
    let numbers_f64 = numbers.iter().map(to_f64).collect();
    let polys_f64 = polys
        .iter()
        .map(|p| p.iter().map(to_f64).collect())
        .collect();
    Ok(BernoulliTable {
        numbers,
        polys,
        numbers_f64,
        polys_f64,
    })
}

static TABLE: LazyLock<BernoulliTable> =
    LazyLock::new(|| bernoulli_numbers(MAX_INDEX).expect("MAX_INDEX is within the cap"));

/// Shared table up to [`MAX_INDEX`], built on first use.
pub fn table() -> &'static BernoulliTable {
    &TABLE
}

impl BernoulliTable {
    pub fn max_n(&self) -> usize {
        self.numbers.len() - 1
    }

    pub fn number(&self, n: usize) -> &Rational {
        &self.numbers[n]
    }

    pub fn numbers(&self) -> &[Rational] {
        &self.numbers
    }

    /// Coefficients of Bₙ(t) in ascending powers of t.
    pub fn poly(&self, n: usize) -> &[Rational] {
        &self.polys[n]
    }

    pub fn number_f64(&self, n: usize) -> f64 {
        self.numbers_f64[n]
    }

    /// Bₙ(t) at an exact rational point.
    pub fn eval_exact(&self, n: usize, t: &Rational) -> Rational {
        self.polys[n]
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    /// Horner evaluation on the double-rounded coefficients.
    pub fn eval(&self, n: usize, t: Complex64) -> Complex64 {
        self.polys_f64[n]
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * t + c)
    }

    pub fn eval_real(&self, n: usize, t: f64) -> f64 {
        self.polys_f64[n]
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * t + c)
    }
}

/// Bₙ(t).
pub fn bernoulli_poly(n: usize, t: Complex64) -> Result<Complex64> {
    cap_check(n)?;
    Ok(table().eval(n, t))
}

/// B̄ₙ(t) = Bₙ(t − ⌊t⌋).
pub fn periodic_bernoulli(n: usize, t: f64) -> Result<f64> {
    cap_check(n)?;
    if !t.is_finite() {
        return Err(Error::Domain(format!("t = {t} is not finite")));
    }
    let frac = t - t.floor();
    // t − ⌊t⌋ can round up to 1 for tiny negative t
    let frac = if frac >= 1.0 { 0.0 } else { frac };
    Ok(table().eval_real(n, frac))
}

/// Closed form of Σ_{n≥1} sin(2πnθ)/n on [0, 1).
pub fn sawtooth_sum(theta: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&theta) {
        return Err(Error::Domain(format!("θ = {theta} is outside [0, 1)")));
    }
    if theta == 0.0 {
        return Ok(0.0);
    }
    Ok(PI * (0.5 - theta))
}

/// (1/π²) Σ_{n=1}^{N} cos(2πnt)/n², the Fourier partial sum of B̄₂(t).
pub fn fourier_b2_partial(t: f64, terms: usize) -> f64 {
    let frac = t - t.floor();
    let mut sum = 0.0;
    let mut comp = 0.0;
    for n in 1..=terms {
        let nf = n as f64;
        // reduce n·t mod 1 before multiplying by 2π to keep the phase exact
        let phase = (nf * frac).fract();
        let x = (2.0 * PI * phase).cos() / (nf * nf) - comp;
        let next = sum + x;
        comp = (next - sum) - x;
        sum = next;
    }
    sum / (PI * PI)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn small_numbers() {
        let t = bernoulli_numbers(4).unwrap();
        assert_eq!(t.number(0), &q(1, 1));
        assert_eq!(t.number(1), &q(-1, 2));
        assert_eq!(t.number(2), &q(1, 6));
        assert_eq!(t.number(3), &q(0, 1));
        assert_eq!(t.number(4), &q(-1, 30));
    }

    #[test]
    fn cap() {
        assert!(matches!(
            bernoulli_numbers(129),
            Err(Error::CapExceeded {
                requested: 129,
                cap: 128
            })
        ));
        assert!(bernoulli_poly(129, Complex64::new(0.0, 0.0)).is_err());
        assert!(periodic_bernoulli(200, 0.5).is_err());
    }

    #[test]
    fn table_invariants() {
        let t = table();
        assert_eq!(t.max_n(), MAX_INDEX);
        for n in 0..=MAX_INDEX {
            assert_eq!(&t.eval_exact(n, &Rational::zero()), t.number(n));
            if n >= 3 && n % 2 == 1 {
                assert!(t.number(n).is_zero());
            }
        }
        // von Staudt–Clausen: primes p with (p − 1) | 128 give 2·3·5·17 = 510
        assert_eq!(t.number(128).denom(), &BigInt::from(510));
    }

    #[test]
    fn polynomial_values() {
        let b2 = |x: f64| bernoulli_poly(2, Complex64::new(x, 0.0)).unwrap().re;
        assert!((b2(0.0) - 1.0 / 6.0).abs() < 1e-16);
        for x in [0.3, -1.7, 2.25] {
            assert!((b2(x) - (x * x - x + 1.0 / 6.0)).abs() < 1e-14);
        }
        assert_eq!(bernoulli_poly(1, Complex64::new(0.5, 0.0)).unwrap().re, 0.0);
        assert_eq!(table().eval_exact(1, &q(1, 2)), Rational::zero());
        assert_eq!(table().eval_exact(0, &q(7, 3)), Rational::one());
    }

    #[test]
    fn periodic_extension() {
        let b = |t: f64| periodic_bernoulli(2, t).unwrap();
        let quarter = 0.0625 - 0.25 + 1.0 / 6.0;
        assert!((b(2.25) - quarter).abs() < 1e-15);
        assert!((b(-0.75) - quarter).abs() < 1e-15);
        assert!((b(0.0) - 1.0 / 6.0).abs() < 1e-16);
        assert!(periodic_bernoulli(2, f64::NAN).is_err());
    }

    #[test]
    fn sawtooth_closed_form() {
        assert_eq!(sawtooth_sum(0.0).unwrap(), 0.0);
        assert_eq!(sawtooth_sum(0.5).unwrap(), 0.0);
        assert!((sawtooth_sum(0.25).unwrap() - PI / 4.0).abs() < 1e-16);
        assert!(sawtooth_sum(1.0).is_err());
        assert!(sawtooth_sum(-0.1).is_err());
    }

    #[test]
    fn fourier_empty_sum() {
        assert_eq!(fourier_b2_partial(0.3, 0), 0.0);
    }
}
