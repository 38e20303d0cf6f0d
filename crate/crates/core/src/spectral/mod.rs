//! The spectral matrix `M(λ)` of the vertex conditions and its determinant.
//!
//! Unknowns are the vertex values `A_v` followed by the scaled edge
//! coefficients `B_j = B̃_j / ω`, where an eigenfunction on edge `j` leaving
//! `v` reads `y_j = A_v c_j + B̃_j s_j`. Rows are the Kirchhoff conditions at
//! the vertices (divided by `ω`) followed by the continuity conditions at the
//! heads of the edges:
//!
//! ```text
//!     [ A  B ]   a_vu = Σ_{u→v} c_j'(1)/ω      b_vj = s_j'(1) at the head, -1 at the tail
//! M = [      ]
//!     [ C  D ]   c_jv = c_j(1) at the tail, -1 at the head      d_jj = ω s_j(1)
//! ```
//!
//! with loops picking up both contributions. For `λ > 0`, `ω = √λ`. For
//! `λ ≤ 0` the branch `√λ = i√(-λ)` only multiplies rows and columns by
//! powers of `i`, so the real matrix with `ω = √(-λ)` has the same zeros and
//! nullity. `ω` never drops below [`SCALE_FLOOR`], which keeps the matrix
//! regular around `λ = 0`.

mod eigenfunction;
mod search;

pub use eigenfunction::{eigenfunctions, Eigenfunction};
pub use search::{
    find_eigenvalues, find_eigenvalues_with, EigenvalueRecord, SearchOptions, DEFAULT_GRID_STEP,
};

use nalgebra::DMatrix;

use crate::edge::{fundamental_values, EdgeSolutionValues};
use crate::error::{Error, Result};
use crate::graph::MetricGraph;

/// Lower bound on the row/column scale `ω`.
pub const SCALE_FLOOR: f64 = 1e-2;

/// Singular values below `DEFAULT_NULLITY_TOL * max(σ_max, 1)` count toward
/// the nullity. The floor of 1 matters for graphs such as a single loop,
/// where every entry of `M` vanishes at an eigenvalue.
pub const DEFAULT_NULLITY_TOL: f64 = 1e-8;

pub(crate) fn nullity_threshold(sigma_max: f64, rel_tol: f64) -> f64 {
    rel_tol * sigma_max.max(1.0)
}

pub fn scale_for(lambda: f64) -> f64 {
    lambda.abs().sqrt().max(SCALE_FLOOR)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralMatrix {
    pub lambda: f64,
    /// The scale `ω` used for the compound entries.
    pub scale: f64,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub entries: DMatrix<f64>,
    pub edge_values: Vec<EdgeSolutionValues>,
}

impl SpectralMatrix {
    pub fn size(&self) -> usize {
        self.vertex_count + self.edge_count
    }

    pub fn determinant(&self) -> f64 {
        self.entries.clone().lu().determinant()
    }

    /// Singular values in ascending order.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut sv: Vec<f64> = self
            .entries
            .clone()
            .singular_values()
            .iter()
            .copied()
            .collect();
        sv.sort_by(f64::total_cmp);
        sv
    }

    pub fn nullity(&self, rel_tol: f64) -> usize {
        let sv = self.singular_values();
        let threshold = nullity_threshold(sv.last().copied().unwrap_or(0.0), rel_tol);
        sv.iter().filter(|&&s| s < threshold).count()
    }
}

pub fn assemble_matrix(g: &MetricGraph, lambda: f64) -> Result<SpectralMatrix> {
    let (nv, ne) = (g.vertex_count(), g.edge_count());
    let scale = scale_for(lambda);
    let mut m = DMatrix::zeros(nv + ne, nv + ne);
    let mut edge_values = Vec::with_capacity(ne);
    for (j, e) in g.edges().iter().enumerate() {
        let vals = fundamental_values(&e.potential, lambda)?;
        let (u, v, row) = (e.tail, e.head, nv + j);
        m[(v, u)] += vals.dc / scale;
        m[(v, nv + j)] += vals.ds;
        m[(u, nv + j)] -= 1.0;
        m[(row, u)] += vals.c;
        m[(row, v)] -= 1.0;
        m[(row, nv + j)] = scale * vals.s;
        edge_values.push(vals);
    }
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFiniteEntry { lambda });
    }
    Ok(SpectralMatrix {
        lambda,
        scale,
        vertex_count: nv,
        edge_count: ne,
        entries: m,
        edge_values,
    })
}

pub fn spectral_determinant(g: &MetricGraph, lambda: f64) -> Result<f64> {
    Ok(assemble_matrix(g, lambda)?.determinant())
}

pub fn nullity(g: &MetricGraph, lambda: f64, rel_tol: f64) -> Result<usize> {
    Ok(assemble_matrix(g, lambda)?.nullity(rel_tol))
}

/// Smallest singular value of `M(λ)`.
pub fn sigma_min(g: &MetricGraph, lambda: f64) -> Result<f64> {
    Ok(assemble_matrix(g, lambda)?.singular_values()[0])
}
