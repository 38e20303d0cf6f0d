//! Fundamental solutions of `-y'' + q y = λ y` on a unit edge.
//!
//! `c` and `s` solve the equation with `(c, c')(0) = (1, 0)` and
//! `(s, s')(0) = (0, 1)`. For a step potential the fundamental matrix
//! `[[c, s], [c', s']]` is an ordered product of closed-form segment
//! propagators, so no ODE integration is involved.

use crate::error::{Error, Result};
use crate::potential::PiecewisePotential;

/// Below this value of `|μ²| h²` the propagator uses its Taylor expansion.
const SERIES_THRESHOLD: f64 = 1e-8;

/// `c, c', s, s'` of one edge at one `λ` and one position (default `x = 1`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeSolutionValues {
    pub c: f64,
    pub dc: f64,
    pub s: f64,
    pub ds: f64,
    pub lambda: f64,
}

impl EdgeSolutionValues {
    fn identity(lambda: f64) -> Self {
        Self {
            c: 1.0,
            dc: 0.0,
            s: 0.0,
            ds: 1.0,
            lambda,
        }
    }

    /// `c s' - c' s`; identically one.
    pub fn wronskian(&self) -> f64 {
        self.c * self.ds - self.dc * self.s
    }

    /// Left-multiplies by a segment propagator.
    fn propagate(self, p: &[[f64; 2]; 2]) -> Self {
        Self {
            c: p[0][0] * self.c + p[0][1] * self.dc,
            dc: p[1][0] * self.c + p[1][1] * self.dc,
            s: p[0][0] * self.s + p[0][1] * self.ds,
            ds: p[1][0] * self.s + p[1][1] * self.ds,
            lambda: self.lambda,
        }
    }
}

/// Transfer matrix of `(y, y')` across a segment of width `h` with constant
/// potential `v`.
pub fn segment_propagator(h: f64, v: f64, lambda: f64) -> [[f64; 2]; 2] {
    let mu2 = lambda - v;
    let z = mu2 * h * h;
    let (cos, sinc_h, neg_mu_sin) = if z.abs() < SERIES_THRESHOLD {
        let cos = 1.0 - z / 2.0 + z * z / 24.0 - z * z * z / 720.0;
        let sinc = 1.0 - z / 6.0 + z * z / 120.0 - z * z * z / 5040.0;
        (cos, h * sinc, -mu2 * h * sinc)
    } else if mu2 > 0.0 {
        let mu = mu2.sqrt();
        let (sin, cos) = (mu * h).sin_cos();
        (cos, sin / mu, -mu * sin)
    } else {
        let kappa = (-mu2).sqrt();
        let t = kappa * h;
        (t.cosh(), t.sinh() / kappa, kappa * t.sinh())
    };
    [[cos, sinc_h], [neg_mu_sin, cos]]
}

/// `c(1, λ), c'(1, λ), s(1, λ), s'(1, λ)`.
pub fn fundamental_values(q: &PiecewisePotential, lambda: f64) -> Result<EdgeSolutionValues> {
    fundamental_values_at(q, lambda, 1.0)
}

/// `c, c', s, s'` at position `x`.
pub fn fundamental_values_at(
    q: &PiecewisePotential,
    lambda: f64,
    x: f64,
) -> Result<EdgeSolutionValues> {
    if !lambda.is_finite() {
        return Err(Error::NonFiniteInput(format!("lambda = {lambda}")));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::XOutOfRange(x));
    }
    let mut acc = EdgeSolutionValues::identity(lambda);
    for (left, right, v) in q.segments() {
        if left >= x {
            break;
        }
        let h = right.min(x) - left;
        acc = acc.propagate(&segment_propagator(h, v, lambda));
    }
    Ok(acc)
}

/// Leading-order large-λ behaviour of the four compound entries at
/// `λ = (kπ)² + d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticValues {
    pub lambda: f64,
    /// Prediction for `c(1, λ)`.
    pub c: f64,
    /// Prediction for `c'(1, λ) / √λ`.
    pub dc_over_root: f64,
    /// Prediction for `√λ s(1, λ)`.
    pub s_times_root: f64,
    /// Prediction for `s'(1, λ)`.
    pub ds: f64,
}

pub fn asymptotic_values(q_mean: f64, k: u32, d: f64) -> AsymptoticValues {
    let kpi = k as f64 * std::f64::consts::PI;
    let lambda = kpi * kpi + d;
    let root = lambda.sqrt();
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    AsymptoticValues {
        lambda,
        c: sign,
        dc_over_root: sign * (q_mean - d) / (2.0 * root),
        s_times_root: sign * (d - q_mean) / (2.0 * root),
        ds: sign,
    }
}
