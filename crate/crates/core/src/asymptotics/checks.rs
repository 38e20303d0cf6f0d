//! Numerical hypothesis checks for the Ambarzumian-type criteria.
//!
//! These only report whether the spectral hypotheses hold on the sampled
//! data: `λ = 0` is the bottom of the spectrum, and the requested clusters
//! carry the required number of eigenvalues at shift `≈ 0`.

use rayon::prelude::*;

use super::clusters::{extract_cluster_with, Parity, DEFAULT_WINDOW};
use super::polynomial::cluster_polynomial;
use crate::error::{Error, Result};
use crate::graph::{equal_resistance_precondition, MetricGraph};
use crate::spectral::{find_eigenvalues_with, SearchOptions};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOptions {
    pub tol_zero: f64,
    pub tol_shift: f64,
    pub window: f64,
    pub parity: Parity,
}

impl CheckOptions {
    pub fn for_graph(g: &MetricGraph) -> Self {
        Self {
            tol_zero: 1e-6,
            tol_shift: 5e-2,
            window: DEFAULT_WINDOW,
            parity: Parity::auto(g),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterHypothesis {
    pub k: u32,
    pub required: usize,
    /// Eigenvalues (with multiplicity) whose shift is within `tol_shift` of 0.
    pub near_zero: usize,
    pub total: usize,
    pub shifts: Vec<(f64, usize)>,
    pub holds: bool,
    /// Closest shift outside the tolerance, when the hypothesis fails.
    pub witness_shift: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub smallest_eigenvalue: Option<f64>,
    pub zero_is_bottom: bool,
    pub clusters: Vec<ClusterHypothesis>,
}

impl Verdict {
    /// All hypotheses hold, i.e. the data is consistent with `q = 0`.
    pub fn consistent(&self) -> bool {
        self.zero_is_bottom && self.clusters.iter().all(|c| c.holds)
    }

    /// One human-readable line per failing hypothesis.
    pub fn witnesses(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.zero_is_bottom {
            out.push(match self.smallest_eigenvalue {
                Some(l) => format!("smallest eigenvalue {l:.6e} is not 0"),
                None => "no eigenvalue found near 0".into(),
            });
        }
        for c in self.clusters.iter().filter(|c| !c.holds) {
            let tail = match c.witness_shift {
                Some(s) => format!("cluster shift ≈ {s:.6}"),
                None => "cluster empty".into(),
            };
            out.push(format!(
                "cluster k={}: {} of {} required eigenvalues near 0, {tail}",
                c.k, c.near_zero, c.required
            ));
        }
        out
    }

    pub fn witness(&self) -> Option<String> {
        let w = self.witnesses();
        (!w.is_empty()).then(|| w.join("; "))
    }
}

/// Checks the full-multiplicity hypotheses (`|E| - |V| + 2` per cluster).
pub fn ambarzumian_check(g: &MetricGraph, k_list: &[u32], opts: &CheckOptions) -> Result<Verdict> {
    run_check(g, k_list, opts, g.cluster_size())
}

/// Checks the weakened hypotheses (`|E| - |V| + 1` per cluster), valid when
/// all non-loop edges share one effective resistance `r < 1`.
pub fn weakened_check(g: &MetricGraph, k_list: &[u32], opts: &CheckOptions) -> Result<Verdict> {
    let pre = equal_resistance_precondition(g);
    if !pre.holds {
        return Err(Error::PreconditionNotMet(
            "non-loop edges do not share one effective resistance r < 1".into(),
        ));
    }
    run_check(g, k_list, opts, g.cycle_rank())
}

fn run_check(
    g: &MetricGraph,
    k_list: &[u32],
    opts: &CheckOptions,
    required: usize,
) -> Result<Verdict> {
    // the operator is bounded below by min q
    let lo = (-opts.window).min(g.min_potential() - 1.0);
    let bottom = find_eigenvalues_with(g, lo, opts.window, SearchOptions::default())?;
    let smallest_eigenvalue = bottom.first().map(|r| r.lambda);
    let zero_is_bottom = smallest_eigenvalue.is_some_and(|l| l.abs() <= opts.tol_zero);

    let cp = cluster_polynomial(g)?;
    let clusters = k_list
        .par_iter()
        .map(|&k| {
            let report = extract_cluster_with(g, &cp, k, opts.parity, opts.window)?;
            let near_zero = report
                .shifts
                .iter()
                .filter(|(s, _)| s.abs() <= opts.tol_shift)
                .map(|(_, m)| m)
                .sum();
            let holds = near_zero >= required;
            let witness_shift = if holds {
                None
            } else {
                report
                    .shifts
                    .iter()
                    .map(|&(s, _)| s)
                    .filter(|s| s.abs() > opts.tol_shift)
                    .min_by(|a, b| a.abs().total_cmp(&b.abs()))
            };
            Ok(ClusterHypothesis {
                k,
                required,
                near_zero,
                total: report.total_multiplicity,
                shifts: report.shifts,
                holds,
                witness_shift,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Verdict {
        smallest_eigenvalue,
        zero_is_bottom,
        clusters,
    })
}
