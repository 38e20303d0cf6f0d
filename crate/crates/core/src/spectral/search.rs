//! Eigenvalue search by minimizing the smallest singular value of `M(λ)`.
//!
//! The scan variable is `t = √λ` for `λ > 0` and `t = λ` for `λ ≤ 0`.
//! Zeros of even order are found as well, since `σ_min` touches zero whether
//! or not `det M` changes sign.

use std::cmp::Ordering;

use rayon::prelude::*;

use super::{assemble_matrix, DEFAULT_NULLITY_TOL};
use crate::error::{Error, Result};
use crate::graph::MetricGraph;

/// Default scan step in `√λ`.
pub const DEFAULT_GRID_STEP: f64 = 0.01;

const MAX_REFINE_DEPTH: usize = 3;
const REFINE_FACTOR: f64 = 10.0;
/// Half-width, in grid steps, of the neighbourhood searched by deflation.
const DEFLATION_REACH: f64 = 3.0;
const DEFLATION_SAMPLES: usize = 96;
const MAX_DEFLATIONS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenvalueRecord {
    pub lambda: f64,
    pub multiplicity: usize,
    pub window_k: Option<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub grid_step: f64,
    pub nullity_tol: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            grid_step: DEFAULT_GRID_STEP,
            nullity_tol: DEFAULT_NULLITY_TOL,
        }
    }
}

fn to_scan(lambda: f64) -> f64 {
    if lambda > 0.0 {
        lambda.sqrt()
    } else {
        lambda
    }
}

fn from_scan(t: f64) -> f64 {
    if t > 0.0 {
        t * t
    } else {
        t
    }
}

pub fn find_eigenvalues(
    g: &MetricGraph,
    lo: f64,
    hi: f64,
    grid_step: f64,
) -> Result<Vec<EigenvalueRecord>> {
    find_eigenvalues_with(
        g,
        lo,
        hi,
        SearchOptions {
            grid_step,
            ..SearchOptions::default()
        },
    )
}

pub fn find_eigenvalues_with(
    g: &MetricGraph,
    lo: f64,
    hi: f64,
    opts: SearchOptions,
) -> Result<Vec<EigenvalueRecord>> {
    if lo.partial_cmp(&hi) != Some(Ordering::Less) {
        return Err(Error::EmptyInterval { lo, hi });
    }
    if !(opts.grid_step > 0.0 && opts.grid_step.is_finite()) {
        return Err(Error::NonFiniteInput(format!(
            "grid step {}",
            opts.grid_step
        )));
    }
    let roots = scan(
        g,
        to_scan(lo),
        to_scan(hi),
        opts.grid_step,
        opts.nullity_tol,
        0,
    )?;
    Ok(roots
        .into_iter()
        .map(|(t, multiplicity)| EigenvalueRecord {
            lambda: from_scan(t),
            multiplicity,
            window_k: None,
        })
        .collect())
}

fn objective(g: &MetricGraph, t: f64) -> Result<f64> {
    Ok(assemble_matrix(g, from_scan(t))?.singular_values()[0])
}

/// Accepted roots in scan coordinates with their multiplicities.
fn scan(
    g: &MetricGraph,
    t_lo: f64,
    t_hi: f64,
    step: f64,
    tol: f64,
    depth: usize,
) -> Result<Vec<(f64, usize)>> {
    let n = (((t_hi - t_lo) / step).ceil() as usize).max(2);
    let h = (t_hi - t_lo) / n as f64;
    let grid: Vec<f64> = (0..=n).map(|i| t_lo + i as f64 * h).collect();
    let sigma = grid
        .par_iter()
        .map(|&t| objective(g, t))
        .collect::<Result<Vec<_>>>()?;

    let candidates: Vec<(f64, f64)> = (0..=n)
        .filter(|&i| {
            let left = i == 0 || sigma[i] <= sigma[i - 1];
            let right = i == n || sigma[i] <= sigma[i + 1];
            left && right
        })
        .map(|i| (grid[i.saturating_sub(1)], grid[(i + 1).min(n)]))
        .collect();

    let refined = candidates
        .par_iter()
        .map(|&(a, b)| -> Result<Option<(f64, usize)>> {
            let t = golden_section(|t| objective(g, t), a, b)?;
            let mult = assemble_matrix(g, from_scan(t))?.nullity(tol);
            Ok((mult > 0).then_some((t, mult)))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut roots: Vec<(f64, usize)> = Vec::new();
    for (t, mult) in refined.into_iter().flatten() {
        match roots.last_mut() {
            Some(last) if same_root(last.0, t) => last.1 = last.1.max(mult),
            _ => roots.push((t, mult)),
        }
    }

    deflate(g, &mut roots, t_lo, t_hi, h, tol)?;

    // Roots closer than two grid steps may hide further roots between them.
    let mut out: Vec<(f64, usize)> = Vec::with_capacity(roots.len());
    let mut i = 0;
    while i < roots.len() {
        let mut j = i;
        while j + 1 < roots.len() && roots[j + 1].0 - roots[j].0 < 2.0 * h {
            j += 1;
        }
        if j == i {
            out.push(roots[i]);
        } else if depth == MAX_REFINE_DEPTH {
            return Err(Error::GridTooCoarse {
                lambda: from_scan(roots[i].0),
            });
        } else {
            let a = (roots[i].0 - h).max(t_lo);
            let b = (roots[j].0 + h).min(t_hi);
            out.extend(scan(g, a, b, h / REFINE_FACTOR, tol, depth + 1)?);
        }
        i = j + 1;
    }
    out.dedup_by(|b, a| {
        let same = same_root(a.0, b.0);
        if same {
            a.1 = a.1.max(b.1);
        }
        same
    });
    Ok(out)
}

/// Looks for roots hidden next to known ones inside a single grid cell.
///
/// Near a root `λ₁` of multiplicity `m`, `|det M(λ)| / |λ - λ₁|^m` is
/// non-vanishing unless another root is close by, so its minima on a fine
/// local grid expose neighbours that `σ_min` alone merges into one dip.
fn deflate(
    g: &MetricGraph,
    roots: &mut Vec<(f64, usize)>,
    t_lo: f64,
    t_hi: f64,
    h: f64,
    tol: f64,
) -> Result<()> {
    let mut i = 0;
    while i < roots.len() {
        let a = (roots[i].0 - DEFLATION_REACH * h).max(t_lo);
        let b = (roots[i].0 + DEFLATION_REACH * h).min(t_hi);
        for _ in 0..MAX_DEFLATIONS {
            let known: Vec<(f64, usize)> = roots
                .iter()
                .filter(|r| r.0 >= a - h && r.0 <= b + h)
                .map(|&(t, m)| (from_scan(t), m))
                .collect();
            let deflated = |t: f64| -> Result<f64> {
                let lambda = from_scan(t);
                let det = assemble_matrix(g, lambda)?.determinant().abs();
                Ok(known.iter().fold(det, |acc, &(l, m)| {
                    acc / (lambda - l).abs().max(f64::MIN_POSITIVE).powi(m as i32)
                }))
            };
            let n = DEFLATION_SAMPLES;
            let step = (b - a) / n as f64;
            let grid: Vec<f64> = (0..=n).map(|k| a + k as f64 * step).collect();
            let values = grid
                .par_iter()
                .map(|&t| deflated(t))
                .collect::<Result<Vec<_>>>()?;
            let mut found = None;
            for k in 1..n {
                if values[k] <= values[k - 1] && values[k] <= values[k + 1] {
                    let t = golden_section(deflated, grid[k - 1], grid[k + 1])?;
                    if known.iter().any(|&(l, _)| same_root(to_scan(l), t)) {
                        continue;
                    }
                    let mult = assemble_matrix(g, from_scan(t))?.nullity(tol);
                    if mult > 0 && separated(g, &known, t, tol)? {
                        found = Some((t, mult));
                        break;
                    }
                }
            }
            match found {
                Some(r) => {
                    let at = roots.partition_point(|x| x.0 < r.0);
                    roots.insert(at, r);
                    if at <= i {
                        i += 1;
                    }
                }
                None => break,
            }
        }
        i += 1;
    }
    Ok(())
}

/// A deflation candidate counts as a new root only if `M` is regular halfway
/// to the nearest known root. Otherwise it is the known root seen again
/// through the slack of the nullity threshold.
fn separated(g: &MetricGraph, known: &[(f64, usize)], t: f64, tol: f64) -> Result<bool> {
    let nearest = known
        .iter()
        .map(|&(l, _)| to_scan(l))
        .min_by(|a, b| (a - t).abs().total_cmp(&(b - t).abs()));
    match nearest {
        None => Ok(true),
        Some(s) => Ok(assemble_matrix(g, from_scan(0.5 * (s + t)))?.nullity(tol) == 0),
    }
}

fn same_root(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-10 * a.abs().max(1.0)
}

/// Minimizer of `f` on `[a, b]`, run to floating-point resolution.
fn golden_section<F>(f: F, mut a: f64, mut b: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let (mut f1, mut f2) = (f(x1)?, f(x2)?);
    for _ in 0..200 {
        if b - a <= 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(1e-300) {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2)?;
        }
    }
    Ok(if f1 <= f2 { x1 } else { x2 })
}
