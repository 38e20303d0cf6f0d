//! Step-function potentials on the unit edge.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// A potential on `[0, 1]` that is constant on each subinterval
/// `[breakpoints[i], breakpoints[i + 1])`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewisePotential {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    mean: f64,
}

impl PiecewisePotential {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidPotential("no segments".into()));
        }
        if breakpoints.len() != values.len() + 1 {
            return Err(Error::InvalidPotential(format!(
                "{} breakpoints for {} values",
                breakpoints.len(),
                values.len()
            )));
        }
        if breakpoints[0] != 0.0 || *breakpoints.last().unwrap() != 1.0 {
            return Err(Error::InvalidPotential(
                "breakpoints must start at 0 and end at 1".into(),
            ));
        }
        if breakpoints
            .windows(2)
            .any(|w| w[0].partial_cmp(&w[1]) != Some(Ordering::Less))
        {
            return Err(Error::InvalidPotential(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput(format!("potential value {v}")));
        }
        let mean = breakpoints
            .windows(2)
            .zip(&values)
            .map(|(w, v)| v * (w[1] - w[0]))
            .sum();
        Ok(Self {
            breakpoints,
            values,
            mean,
        })
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    pub fn constant(value: f64) -> Self {
        Self {
            breakpoints: vec![0.0, 1.0],
            values: vec![value],
            mean: value,
        }
    }

    /// Uniform grid of `values.len()` segments.
    pub fn uniform(values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        let breakpoints = (0..=n).map(|i| i as f64 / n.max(1) as f64).collect();
        Self::new(breakpoints, values)
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `∫₀¹ q`.
    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `(left, right, value)` for each segment, left to right.
    pub fn segments(&self) -> impl DoubleEndedIterator<Item = (f64, f64, f64)> + '_ {
        self.breakpoints
            .windows(2)
            .zip(&self.values)
            .map(|(w, &v)| (w[0], w[1], v))
    }

    pub fn value_at(&self, x: f64) -> f64 {
        let i = self.breakpoints[1..]
            .partition_point(|&b| b <= x)
            .min(self.values.len() - 1);
        self.values[i]
    }

    /// The potential `x ↦ q(1 − x)`.
    pub fn reversed(&self) -> Self {
        let breakpoints = self.breakpoints.iter().rev().map(|b| 1.0 - b).collect();
        let values = self.values.iter().rev().copied().collect();
        Self::new(breakpoints, values).expect("reversal preserves validity")
    }

    /// The potential `q + c`.
    pub fn shifted(&self, c: f64) -> Self {
        let values = self.values.iter().map(|v| v + c).collect();
        Self::new(self.breakpoints.clone(), values).expect("shift preserves validity")
    }
}

/// Midpoint samples of `f` on a uniform grid of `segments` cells.
pub fn sample_potential<F>(f: F, segments: usize) -> Result<PiecewisePotential>
where
    F: Fn(f64) -> f64,
{
    if segments == 0 {
        return Err(Error::InvalidPotential(
            "at least one segment required".into(),
        ));
    }
    let h = 1.0 / segments as f64;
    let values = (0..segments)
        .map(|i| {
            let x = (i as f64 + 0.5) * h;
            let v = f(x);
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::NonFiniteSample { x })
            }
        })
        .collect::<Result<Vec<_>>>()?;
    PiecewisePotential::uniform(values)
}
