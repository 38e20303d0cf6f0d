//! High-frequency eigenvalue clusters near `(2kπ)²` (or `(kπ)²` on bipartite
//! graphs) and their comparison with the roots of the cluster polynomial.

use std::f64::consts::PI;

use rayon::prelude::*;

use super::polynomial::{cluster_polynomial, ClusterPolynomial};
use crate::error::{Error, Result};
use crate::graph::{is_bipartite, MetricGraph};
use crate::spectral::{find_eigenvalues_with, SearchOptions, DEFAULT_GRID_STEP};

pub const DEFAULT_WINDOW: f64 = 20.0;

/// Scan step in `λ` used inside a cluster window.
const CLUSTER_LAMBDA_STEP: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// Clusters at `(2kπ)²`; valid for every graph.
    Even,
    /// Clusters at `(kπ)²`; requires a bipartite graph.
    All,
}

impl Parity {
    /// `All` for bipartite graphs, `Even` otherwise.
    pub fn auto(g: &MetricGraph) -> Self {
        if is_bipartite(g).is_some() {
            Parity::All
        } else {
            Parity::Even
        }
    }

    /// Multiple of `π` at the centre of cluster `k`.
    pub fn frequency_index(self, k: u32) -> u32 {
        match self {
            Parity::Even => 2 * k,
            Parity::All => k,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchedShift {
    pub shift: f64,
    pub root: f64,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterReport {
    pub k: u32,
    pub parity: Parity,
    /// `(2kπ)²` or `(kπ)²`.
    pub center: f64,
    /// `λ - center` for each eigenvalue in the window, with multiplicity.
    pub shifts: Vec<(f64, usize)>,
    pub total_multiplicity: usize,
    pub matched: Vec<MatchedShift>,
    pub unmatched_roots: Vec<f64>,
    pub unmatched_shifts: Vec<f64>,
}

impl ClusterReport {
    /// Shifts repeated by multiplicity, ascending.
    pub fn expanded_shifts(&self) -> Vec<f64> {
        self.shifts
            .iter()
            .flat_map(|&(s, m)| std::iter::repeat_n(s, m))
            .collect()
    }

    pub fn max_matched_distance(&self) -> f64 {
        self.matched.iter().map(|m| m.distance).fold(0.0, f64::max)
    }

    /// Smallest `|shift - target|`, or infinity for an empty cluster.
    pub fn distance_to(&self, target: f64) -> f64 {
        self.shifts
            .iter()
            .map(|(s, _)| (s - target).abs())
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn extract_cluster(
    g: &MetricGraph,
    k: u32,
    parity: Parity,
    window: f64,
) -> Result<ClusterReport> {
    let cp = cluster_polynomial(g)?;
    extract_cluster_with(g, &cp, k, parity, window)
}

pub(crate) fn extract_cluster_with(
    g: &MetricGraph,
    cp: &ClusterPolynomial,
    k: u32,
    parity: Parity,
    window: f64,
) -> Result<ClusterReport> {
    if k == 0 {
        return Err(Error::PreconditionNotMet(
            "cluster index k must be positive".into(),
        ));
    }
    if parity == Parity::All && is_bipartite(g).is_none() {
        return Err(Error::NotBipartite);
    }
    let c = parity.frequency_index(k) as f64;
    let base = c * PI;
    let center = base * base;
    let below = center - ((c - 1.0) * PI).powi(2);
    let above = ((c + 1.0) * PI).powi(2) - center;
    if window >= below.min(above) {
        return Err(Error::WindowCollision { center, window });
    }
    let opts = SearchOptions {
        grid_step: DEFAULT_GRID_STEP.min(CLUSTER_LAMBDA_STEP / (2.0 * base)),
        ..SearchOptions::default()
    };
    let found = find_eigenvalues_with(g, center - window, center + window, opts)?;
    let shifts: Vec<(f64, usize)> = found
        .iter()
        .map(|r| (r.lambda - center, r.multiplicity))
        .collect();
    let total_multiplicity = shifts.iter().map(|s| s.1).sum();
    let mut report = ClusterReport {
        k,
        parity,
        center,
        shifts,
        total_multiplicity,
        matched: Vec::new(),
        unmatched_roots: Vec::new(),
        unmatched_shifts: Vec::new(),
    };
    let (matched, unmatched_shifts, unmatched_roots) =
        match_sorted(&report.expanded_shifts(), &cp.real_roots());
    report.matched = matched;
    report.unmatched_shifts = unmatched_shifts;
    report.unmatched_roots = unmatched_roots;
    Ok(report)
}

/// Minimum total distance matching of two ascending sequences, pairing
/// `min(len)` elements. In one dimension an optimal matching never crosses,
/// so a DP over prefixes suffices.
pub(crate) fn match_sorted(
    shifts: &[f64],
    roots: &[f64],
) -> (Vec<MatchedShift>, Vec<f64>, Vec<f64>) {
    let swap = shifts.len() > roots.len();
    let (short, long) = if swap {
        (roots, shifts)
    } else {
        (shifts, roots)
    };
    let (n, m) = (short.len(), long.len());
    // cost[i][j]: best matching of short[..i] into long[..j]
    let mut cost = vec![vec![f64::INFINITY; m + 1]; n + 1];
    cost[0].iter_mut().for_each(|c| *c = 0.0);
    for i in 1..=n {
        for j in i..=m {
            let skip = cost[i][j - 1];
            let take = cost[i - 1][j - 1] + (short[i - 1] - long[j - 1]).abs();
            cost[i][j] = skip.min(take);
        }
    }
    let mut pairs = Vec::with_capacity(n);
    let mut used = vec![false; m];
    let (mut i, mut j) = (n, m);
    while i > 0 {
        let take = cost[i - 1][j - 1] + (short[i - 1] - long[j - 1]).abs();
        if cost[i][j] == take {
            pairs.push((short[i - 1], long[j - 1]));
            used[j - 1] = true;
            i -= 1;
        }
        j -= 1;
    }
    pairs.reverse();
    let matched = pairs
        .into_iter()
        .map(|(a, b)| {
            let (shift, root) = if swap { (b, a) } else { (a, b) };
            MatchedShift {
                shift,
                root,
                distance: (shift - root).abs(),
            }
        })
        .collect();
    let leftover: Vec<f64> = long
        .iter()
        .zip(&used)
        .filter(|(_, &u)| !u)
        .map(|(&x, _)| x)
        .collect();
    if swap {
        (matched, leftover, Vec::new())
    } else {
        (matched, Vec::new(), leftover)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub k: u32,
    pub max_matched_distance: f64,
    /// Distance from the cluster to the mean-value root `Q / |E|`.
    pub mean_root_distance: f64,
    pub total_multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub mean_value_root: f64,
    pub rows: Vec<ConvergenceRow>,
}

/// Differences at or below this level count as already converged.
const CONVERGED: f64 = 1e-8;

impl ConvergenceTable {
    /// The last step of the matched-distance sequence does not increase.
    pub fn eventually_decreasing(&self) -> bool {
        non_increasing_tail(self.rows.iter().map(|r| r.max_matched_distance))
    }

    /// The distance to the mean-value root decreases along the whole list.
    pub fn approaches_mean_value_root(&self) -> bool {
        self.rows.windows(2).all(|w| {
            w[1].mean_root_distance < w[0].mean_root_distance
                || w[1].mean_root_distance <= CONVERGED
        })
    }
}

fn non_increasing_tail(values: impl Iterator<Item = f64>) -> bool {
    let v: Vec<f64> = values.collect();
    match v.as_slice() {
        [.., a, b] => b <= a || *b <= CONVERGED,
        _ => true,
    }
}

pub fn cluster_convergence(
    g: &MetricGraph,
    k_list: &[u32],
    parity: Parity,
    window: f64,
) -> Result<ConvergenceTable> {
    let cp = cluster_polynomial(g)?;
    let mean = cp.mean_value_root();
    let rows = k_list
        .par_iter()
        .map(|&k| {
            let report = extract_cluster_with(g, &cp, k, parity, window)?;
            Ok(ConvergenceRow {
                k,
                max_matched_distance: report.max_matched_distance(),
                mean_root_distance: report.distance_to(mean),
                total_multiplicity: report.total_multiplicity,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceTable {
        mean_value_root: mean,
        rows,
    })
}
