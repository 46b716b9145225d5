//! Complex special functions for the Hurwitz zeta function and its functional
//! relation.
//!
//! The crate evaluates ζ(s, z) by three independent routes (direct series,
//! Euler–Maclaurin continuation, and a lattice sum over Tricomi functions),
//! the periodic zeta function L(s, z) = Σ e^{2πinz} n^{-s}, the Kummer function
//! M(α, γ; x) and the Tricomi function U(α, γ; x). The [`verify`] module turns
//! every identity linking them into a residual report, and [`cli`] exposes the
//! lot as the `hurwitz-lab` binary.
//!
//! ```
//! use hurwitz_lab::{zeta, EvalParams};
//! use num_complex::Complex64;
//!
//! let p = EvalParams::default();
//! let z2 = zeta::riemann_zeta(Complex64::new(2.0, 0.0), &p).unwrap();
//! assert!((z2.value.re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
//! ```

#![allow(clippy::excessive_precision)]
pub mod bernoulli;
pub mod cli;
pub mod confluent;
mod error;
pub mod numerics;
pub mod params;
pub mod verify;
pub mod zeta;

pub use error::{Error, Result};
pub use numerics::{ComplexValue, QuadratureMethod, QuadratureSpec};
pub use params::{ConfluentParams, EvalParams, URoute};
