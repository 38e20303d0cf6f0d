//! Eigenfunctions reconstructed from the nullspace of `M(λ)`.

use super::{assemble_matrix, nullity_threshold, DEFAULT_NULLITY_TOL};
use crate::edge::fundamental_values_at;
use crate::error::{Error, Result};
use crate::graph::MetricGraph;

/// Midpoint-rule nodes per edge for the L² norm.
const QUADRATURE_POINTS: usize = 64;

/// One eigenfunction: `y_j(x) = A_v c_j(x) + ω B_j s_j(x)` on edge `j`
/// leaving `v`, normalized so that `Σ_j ∫ y_j² = 1`.
#[derive(Debug, Clone)]
pub struct Eigenfunction<'g> {
    graph: &'g MetricGraph,
    pub lambda: f64,
    pub scale: f64,
    /// `A_v`, one per vertex.
    pub vertex_coeffs: Vec<f64>,
    /// `B_j`, one per edge.
    pub edge_coeffs: Vec<f64>,
}

impl Eigenfunction<'_> {
    pub fn value(&self, edge: usize, x: f64) -> Result<f64> {
        Ok(self.value_and_derivative(edge, x)?.0)
    }

    pub fn derivative(&self, edge: usize, x: f64) -> Result<f64> {
        Ok(self.value_and_derivative(edge, x)?.1)
    }

    pub fn value_and_derivative(&self, edge: usize, x: f64) -> Result<(f64, f64)> {
        let e = &self.graph.edges()[edge];
        let f = fundamental_values_at(&e.potential, self.lambda, x)?;
        let a = self.vertex_coeffs[e.tail];
        let b = self.scale * self.edge_coeffs[edge];
        Ok((a * f.c + b * f.s, a * f.dc + b * f.ds))
    }

    /// `Σ_j ∫₀¹ y_j²` by the composite midpoint rule.
    pub fn norm_squared(&self) -> Result<f64> {
        let h = 1.0 / QUADRATURE_POINTS as f64;
        let mut total = 0.0;
        for j in 0..self.graph.edge_count() {
            for i in 0..QUADRATURE_POINTS {
                let y = self.value(j, (i as f64 + 0.5) * h)?;
                total += y * y * h;
            }
        }
        Ok(total)
    }

    /// Largest `|y_j(κ_j) - y_k(κ_k)|` over pairs of edge ends meeting at a
    /// vertex.
    pub fn continuity_residual(&self) -> Result<f64> {
        let mut ends: Vec<Vec<f64>> = vec![Vec::new(); self.graph.vertex_count()];
        for (j, e) in self.graph.edges().iter().enumerate() {
            ends[e.tail].push(self.value(j, 0.0)?);
            ends[e.head].push(self.value(j, 1.0)?);
        }
        Ok(ends
            .iter()
            .map(|vals| {
                let max = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let min = vals.iter().copied().fold(f64::INFINITY, f64::min);
                max - min
            })
            .fold(0.0, f64::max))
    }

    /// Largest `|Σ_out y'(0) - Σ_in y'(1)|` over vertices.
    pub fn kirchhoff_residual(&self) -> Result<f64> {
        let mut balance = vec![0.0; self.graph.vertex_count()];
        for (j, e) in self.graph.edges().iter().enumerate() {
            balance[e.tail] += self.derivative(j, 0.0)?;
            balance[e.head] -= self.derivative(j, 1.0)?;
        }
        Ok(balance.iter().map(|b| b.abs()).fold(0.0, f64::max))
    }
}

/// An L²-normalized basis of the eigenspace at `λ`, built from an
/// orthonormal basis of `ker M(λ)`.
pub fn eigenfunctions(g: &MetricGraph, lambda: f64) -> Result<Vec<Eigenfunction<'_>>> {
    let m = assemble_matrix(g, lambda)?;
    let svd = m.entries.clone().svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let threshold = nullity_threshold(svd.singular_values.max(), DEFAULT_NULLITY_TOL);
    let nv = g.vertex_count();
    let mut out = Vec::new();
    for (i, &sigma) in svd.singular_values.iter().enumerate() {
        if sigma >= threshold {
            continue;
        }
        let row = v_t.row(i);
        let mut f = Eigenfunction {
            graph: g,
            lambda,
            scale: m.scale,
            vertex_coeffs: row.iter().take(nv).copied().collect(),
            edge_coeffs: row.iter().skip(nv).copied().collect(),
        };
        let norm = f.norm_squared()?.sqrt();
        f.vertex_coeffs.iter_mut().for_each(|a| *a /= norm);
        f.edge_coeffs.iter_mut().for_each(|b| *b /= norm);
        out.push(f);
    }
    if out.is_empty() {
        return Err(Error::NotAnEigenvalue(lambda));
    }
    Ok(out)
}
