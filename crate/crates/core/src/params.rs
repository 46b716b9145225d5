//! Truncation and tolerance knobs shared by the evaluation routes.

use crate::numerics::QuadratureSpec;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Which representation evaluates the Tricomi function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum URoute {
    LaplaceIntegral,
    IncompleteGamma,
    /// Incomplete gamma when α = 1, Laplace integral otherwise.
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfluentParams {
    /// Maximum number of Kummer series terms.
    pub series_cap: usize,
    /// Relative size below which a series term counts as negligible.
    pub term_tol: f64,
    pub quad: QuadratureSpec,
    pub u_route: URoute,
}

impl Default for ConfluentParams {
    fn default() -> Self {
        Self {
            series_cap: 10_000,
            term_tol: 1e-17,
            quad: QuadratureSpec::default(),
            u_route: URoute::Auto,
        }
    }
}

impl ConfluentParams {
    pub const MAX_SERIES_CAP: usize = 100_000;

    pub fn validate(&self) -> Result<()> {
        if self.series_cap == 0 || self.series_cap > Self::MAX_SERIES_CAP {
            return Err(Error::InvalidParams(format!(
                "series_cap must lie in 1..={}, got {}",
                Self::MAX_SERIES_CAP,
                self.series_cap
            )));
        }
        if self.term_tol.is_nan() || self.term_tol <= 0.0 {
            return Err(Error::InvalidParams("term_tol must be positive".into()));
        }
        self.quad.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalParams {
    /// Even Euler–Maclaurin order m, 2 ≤ m ≤ 64.
    pub em_order: usize,
    /// Number of leading terms summed directly before Euler–Maclaurin.
    pub em_shift: usize,
    /// Cap on directly summed terms (direct Hurwitz and polylog routes).
    pub series_cap: usize,
    /// Truncation of the lattice sum over l ≠ 0 in the Tricomi route.
    pub l_cap: usize,
    pub tol_abs: f64,
    pub quad: QuadratureSpec,
    pub confluent: ConfluentParams,
}

impl Default for EvalParams {
    fn default() -> Self {
        Self {
            em_order: 8,
            em_shift: 8,
            series_cap: 10_000_000,
            l_cap: 2000,
            tol_abs: 1e-9,
            quad: QuadratureSpec::default(),
            confluent: ConfluentParams::default(),
        }
    }
}

impl EvalParams {
    pub const MAX_EM_ORDER: usize = 64;

    pub fn validate(&self) -> Result<()> {
        if self.em_order < 2
            || self.em_order > Self::MAX_EM_ORDER
            || !self.em_order.is_multiple_of(2)
        {
            return Err(Error::InvalidParams(format!(
                "em_order must be even and in 2..={}, got {}",
                Self::MAX_EM_ORDER,
                self.em_order
            )));
        }
        if self.l_cap == 0 {
            return Err(Error::InvalidParams("l_cap must be at least 1".into()));
        }
        if self.series_cap == 0 {
            return Err(Error::InvalidParams("series_cap must be at least 1".into()));
        }
        if self.tol_abs.is_nan() || self.tol_abs <= 0.0 {
            return Err(Error::InvalidParams("tol_abs must be positive".into()));
        }
        self.quad.validate()?;
        self.confluent.validate()
    }

    pub fn with_em(mut self, order: usize, shift: usize) -> Self {
        self.em_order = order;
        self.em_shift = shift;
        self
    }

    pub fn with_l_cap(mut self, l_cap: usize) -> Self {
        self.l_cap = l_cap;
        self
    }
}
