use hurwitz_lab::bernoulli::{
    self, bernoulli_poly, fourier_b2_partial, periodic_bernoulli, sawtooth_sum, Rational,
};
use hurwitz_lab::confluent::{
    asymptotic_ratio, connection_residual, kummer_m, tricomi_u_gamma, tricomi_u_integral,
};
use hurwitz_lab::numerics::{complex_pow, gamma, sin_pi, upper_incomplete_gamma};
use hurwitz_lab::verify::{self, GridSpec};
use hurwitz_lab::zeta::{hurwitz_em, hurwitz_rhs, hurwitz_via_u, riemann_zeta};
use hurwitz_lab::{ConfluentParams, EvalParams};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use proptest::prelude::*;
use std::f64::consts::PI;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn close(a: Complex64, b: Complex64, rel: f64) -> bool {
    (a - b).norm() <= rel * a.norm().max(b.norm()).max(1.0)
}

fn off_integers(s: Complex64, gap: f64) -> bool {
    c(s.re - s.re.round(), s.im).norm() > gap
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn gamma_reflection(re in -4.5f64..4.5, im in -3.0f64..3.0) {
        let s = c(re, im);
        prop_assume!(off_integers(s, 0.05));
        let lhs = gamma(s).unwrap() * gamma(1.0 - s).unwrap();
        let rhs = PI / sin_pi(s);
        prop_assert!(close(lhs, rhs, 1e-12), "{lhs} vs {rhs}");
    }

    #[test]
    fn gamma_recurrence(re in -4.5f64..6.0, im in -3.0f64..3.0) {
        let s = c(re, im);
        prop_assume!(off_integers(s, 0.05) || s.re > 0.5);
        let lhs = gamma(s + 1.0).unwrap();
        let rhs = s * gamma(s).unwrap();
        prop_assert!(close(lhs, rhs, 1e-12), "{lhs} vs {rhs}");
    }

    #[test]
    fn power_laws(xr in -3.0f64..3.0, xi in -3.0f64..3.0,
                  ar in -2.0f64..2.0, ai in -2.0f64..2.0,
                  br in -2.0f64..2.0, bi in -2.0f64..2.0) {
        let x = c(xr, xi);
        prop_assume!(x.norm() > 1e-3);
        let (a, b) = (c(ar, ai), c(br, bi));
        let lhs = complex_pow(x, a).unwrap() * complex_pow(x, b).unwrap();
        let rhs = complex_pow(x, a + b).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * rhs.norm().max(1e-300) + 1e-300);
    }

    #[test]
    fn incomplete_gamma_recurrence(ar in -3.0f64..3.0, ai in -1.0f64..1.0,
                                   xr in 0.1f64..8.0, xi in -4.0f64..4.0) {
        // Γ(a+1, x) = a Γ(a, x) + x^a e^{−x}
        let (a, x) = (c(ar, ai), c(xr, xi));
        prop_assume!(off_integers(a, 0.05));
        let lhs = upper_incomplete_gamma(a + 1.0, x).unwrap();
        let rhs = a * upper_incomplete_gamma(a, x).unwrap()
            + complex_pow(x, a).unwrap() * (-x).exp();
        prop_assert!((lhs - rhs).norm() <= 1e-11 * lhs.norm().max(rhs.norm()).max(1e-3),
            "{lhs} vs {rhs}");
    }

    #[test]
    fn euler_maclaurin_exact_on_polynomials(n in 0usize..=10, z in 0.01f64..1.0) {
        // ζ(−n, z) = −B_{n+1}(z)/(n+1)
        let p = EvalParams::default().with_em(12, 0);
        let v = hurwitz_em(c(-(n as f64), 0.0), z, &p).unwrap().value;
        let exact = -bernoulli_poly(n + 1, c(z, 0.0)).unwrap() / (n + 1) as f64;
        prop_assert!((v - exact).norm() <= 1e-12, "n={n} z={z}: {v} vs {exact}");
    }

    #[test]
    fn bernoulli_generating_function(u in 0.05f64..1.0, t in 0.0f64..1.0) {
        let mut series = 0.0;
        let mut u_pow = 1.0;
        for n in 0..=24 {
            series += bernoulli_poly(n, c(t, 0.0)).unwrap().re * u_pow;
            u_pow *= u / (n + 1) as f64;
        }
        let closed = u * (t * u).exp() / u.exp_m1();
        prop_assert!((series - closed).abs() <= 1e-10);
    }

    #[test]
    fn bernoulli_difference_identity(n in 1usize..=20, num in -50i64..50, den in 1i64..20) {
        // B_n(t+1) − B_n(t) = n t^{n−1}, exactly
        let t = Rational::new(BigInt::from(num), BigInt::from(den));
        let table = bernoulli::table();
        let lhs = table.eval_exact(n, &(&t + Rational::one())) - table.eval_exact(n, &t);
        let mut rhs = Rational::from_integer(BigInt::from(n));
        for _ in 1..n {
            rhs *= &t;
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn fourier_error_within_one_over_n(t in -2.0f64..2.0, k in 4u32..=12) {
        let n = 1usize << k;
        let err = (fourier_b2_partial(t, n) - periodic_bernoulli(2, t).unwrap()).abs();
        prop_assert!(err <= 1.0 / n as f64);
    }

    #[test]
    fn sawtooth_antisymmetry(theta in 1e-9f64..1.0) {
        prop_assume!(theta < 1.0);
        let sum = sawtooth_sum(theta).unwrap() + sawtooth_sum(1.0 - theta).unwrap();
        prop_assert!(sum.abs() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn periodicity(n in 0usize..=12, t in -5.0f64..5.0, shift in -3i32..3) {
        let a = periodic_bernoulli(n, t).unwrap();
        let b = periodic_bernoulli(n, t + shift as f64).unwrap();
        prop_assert!((a - b).abs() <= 1e-12);
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn tricomi_routes_agree(gr in -3.0f64..3.0, gi in -2.0f64..2.0,
                            xr in 0.5f64..5.0, xi in -3.0f64..3.0) {
        let g = c(gr, gi);
        prop_assume!(off_integers(g, 0.05));
        let x = c(xr, xi);
        let p = ConfluentParams::default();
        let a = tricomi_u_integral(c(1.0, 0.0), g, x, &p).unwrap();
        let b = tricomi_u_gamma(g, x).unwrap();
        prop_assert!((a - b).norm() <= 1e-8 * b.norm().max(1.0), "{a} vs {b}");
    }

    #[test]
    fn tricomi_routes_agree_on_imaginary_axis(gr in -3.0f64..3.0, gi in -2.0f64..2.0,
                                               y in 0.2f64..40.0, sign in prop::bool::ANY) {
        let g = c(gr, gi);
        prop_assume!(off_integers(g, 0.05));
        let x = c(0.0, if sign { y } else { -y });
        let p = ConfluentParams::default();
        let a = tricomi_u_integral(c(1.0, 0.0), g, x, &p).unwrap();
        let b = tricomi_u_gamma(g, x).unwrap();
        prop_assert!((a - b).norm() <= 1e-8 * b.norm().max(1.0), "{a} vs {b}");
    }

    #[test]
    fn kummer_transformation(ar in -2.0f64..3.0, ai in -1.0f64..1.0,
                             br in -2.5f64..3.0, bi in -1.0f64..1.0,
                             xr in 0.1f64..5.0, xi in -3.0f64..3.0) {
        // M(a, b; x) = e^x M(b − a, b; −x)
        let (a, b, x) = (c(ar, ai), c(br, bi), c(xr, xi));
        prop_assume!(off_integers(b, 0.05) || b.re > 0.5);
        let p = ConfluentParams::default();
        let lhs = kummer_m(a, b, x, &p).unwrap();
        let rhs = x.exp() * kummer_m(b - a, b, -x, &p).unwrap();
        prop_assert!(close(lhs, rhs, 1e-9), "{lhs} vs {rhs}");
    }

    #[test]
    fn connection_formula(alpha_r in 0.5f64..3.0, alpha_i in -1.0f64..1.0,
                          gr in -3.0f64..3.0, gi in -2.0f64..2.0,
                          xr in 0.5f64..5.0, xi in -3.0f64..3.0) {
        let g = c(gr, gi);
        prop_assume!(off_integers(g, 0.05));
        let p = ConfluentParams::default();
        let r = connection_residual(c(alpha_r, alpha_i), g, c(xr, xi), &p).unwrap();
        prop_assert!(r <= 1e-8, "residual {r}");
    }

    #[test]
    fn asymptotic_ratio_decreases(alpha in 0.5f64..3.0, g in -2.0f64..3.0) {
        let p = ConfluentParams::default();
        let r = asymptotic_ratio(c(alpha, 0.0), c(g, 0.0), &[10.0, 100.0, 1000.0, 10000.0], &p)
            .unwrap();
        // the leading correction α(α − γ + 1)/x vanishes when γ = α + 1
        prop_assume!((alpha - g + 1.0).abs() > 0.05);
        prop_assert!(r.windows(2).all(|w| w[1] < w[0]), "{r:?}");
    }

    #[test]
    fn zeta_conjugation(re in -4.0f64..6.0, im in -5.0f64..5.0, z in 0.05f64..1.0) {
        let s = c(re, im);
        prop_assume!((s - 1.0).norm() > 0.05);
        let p = EvalParams::default();
        let a = hurwitz_em(s, z, &p).unwrap().value;
        let b = hurwitz_em(s.conj(), z, &p).unwrap().value;
        prop_assert!(close(a.conj(), b, 1e-13));
    }

    #[test]
    fn zeta_at_one_half(re in -4.0f64..6.0, im in -5.0f64..5.0) {
        // ζ(s, 1/2) = (2^s − 1) ζ(s)
        let s = c(re, im);
        prop_assume!((s - 1.0).norm() > 0.05);
        let p = EvalParams::default();
        let half = hurwitz_em(s, 0.5, &p).unwrap().value;
        let full = riemann_zeta(s, &p).unwrap().value;
        let rhs = (complex_pow(c(2.0, 0.0), s).unwrap() - 1.0) * full;
        prop_assert!(close(half, rhs, 1e-10), "{half} vs {rhs}");
    }

    #[test]
    fn hurwitz_relation(re in -3.5f64..-0.1, im in -4.0f64..4.0, z in 0.02f64..1.0) {
        let s = c(re, im);
        let p = EvalParams::default();
        let lhs = hurwitz_em(s, z, &p).unwrap().value;
        let rhs = hurwitz_rhs(s, z, &p).unwrap().value;
        prop_assert!(verify::relative(lhs, rhs) <= 1e-8, "{lhs} vs {rhs}");
    }
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn lattice_sum_agrees_with_euler_maclaurin(re in -0.9f64..4.0, im in -3.0f64..3.0,
                                               z in 0.05f64..0.95) {
        let s = c(re, im);
        prop_assume!((s - 1.0).norm() > 0.05);
        let p = EvalParams::default();
        let a = hurwitz_via_u(s, z, &p).unwrap();
        let b = hurwitz_em(s, z, &p).unwrap();
        prop_assert!(verify::relative(a.value, b.value) <= 1e-7,
            "{} vs {} (bound {})", a.value, b.value, a.error_bound);
    }
}

#[test]
fn generating_function_on_fixed_grid() {
    for u in [0.1, 0.5, 1.0] {
        for t in [0.0, 0.3, 0.7] {
            let mut series = 0.0;
            let mut u_pow = 1.0;
            for n in 0..=24 {
                series += bernoulli_poly(n, c(t, 0.0)).unwrap().re * u_pow;
                u_pow *= u / (n + 1) as f64;
            }
            let closed = u * (t * u).exp() / u.exp_m1();
            assert!((series - closed).abs() <= 1e-10, "u={u} t={t}");
        }
    }
}

#[test]
fn odd_bernoulli_numbers_vanish() {
    let table = bernoulli::table();
    assert!(table
        .numbers()
        .iter()
        .enumerate()
        .filter(|(n, _)| *n >= 3 && n % 2 == 1)
        .all(|(_, b)| b.is_zero()));
}

#[test]
fn lattice_tail_bound_covers_doubling() {
    let grid = |l_cap| {
        GridSpec::new(
            verify::default_via_u_s(),
            verify::DEFAULT_VIA_U_Z.to_vec(),
            EvalParams::default().with_l_cap(l_cap),
        )
    };
    let coarse = verify::check_via_u_agreement(&grid(500), 1e-6).unwrap();
    let fine = verify::check_via_u_agreement(&grid(1000), 1e-6).unwrap();
    let bound = coarse
        .points
        .iter()
        .map(|p| p.error_bound.unwrap())
        .fold(0.0, f64::max);
    assert!(fine.max_abs_residual <= coarse.max_abs_residual + bound);
}

#[test]
fn reports_are_deterministic() {
    let p = EvalParams::default();
    let mut a = verify::check_connection(30, 9, &p, 1e-8).unwrap();
    let mut b = verify::check_connection(30, 9, &p, 1e-8).unwrap();
    a.timestamp.clear();
    b.timestamp.clear();
    assert_eq!(a, b);
}
