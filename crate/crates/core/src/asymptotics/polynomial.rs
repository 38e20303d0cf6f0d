//! The cluster polynomial `p(d) = (Q - |E| d) T(d)` with
//! `T(d) = Σ_τ Π_{e ∉ τ} (d - q̄_e)` over spanning trees `τ`.

use crate::error::Result;
use crate::graph::{enumerate_spanning_trees, MetricGraph};
use crate::poly::{Poly, Root};

/// Imaginary parts below this count as real roots.
pub const REAL_ROOT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub struct ClusterPolynomial {
    /// `Q = Σ_j ∫₀¹ q_j`.
    pub total: f64,
    pub edge_count: usize,
    pub tree_count: usize,
    pub tree_factor: Poly,
    pub p: Poly,
    pub roots: Vec<Root>,
}

impl ClusterPolynomial {
    /// `Q / |E|`, always a root of `p`.
    pub fn mean_value_root(&self) -> f64 {
        self.total / self.edge_count as f64
    }

    /// Real roots, each repeated by its multiplicity, ascending.
    pub fn real_roots(&self) -> Vec<f64> {
        self.roots
            .iter()
            .filter(|r| r.is_real(REAL_ROOT_TOL))
            .flat_map(|r| std::iter::repeat_n(r.value.re, r.multiplicity))
            .collect()
    }

    pub fn degree(&self) -> usize {
        self.p.coeffs().len() - 1
    }
}

pub fn cluster_polynomial(g: &MetricGraph) -> Result<ClusterPolynomial> {
    let trees = enumerate_spanning_trees(g)?;
    let means = g.edge_means();
    let mut in_tree = vec![false; g.edge_count()];
    let mut tree_factor = Poly(vec![0.0; g.cycle_rank() + 1]);
    for tree in &trees.trees {
        in_tree.iter_mut().for_each(|b| *b = false);
        for &j in tree {
            in_tree[j] = true;
        }
        let term = means
            .iter()
            .zip(&in_tree)
            .filter(|(_, &t)| !t)
            .fold(Poly::constant(1.0), |acc, (&q, _)| {
                &acc * &Poly::linear(-q, 1.0)
            });
        tree_factor = &tree_factor + &term;
    }
    let total = g.total_potential();
    let p = &Poly::linear(total, -(g.edge_count() as f64)) * &tree_factor;
    let roots = p.roots();
    Ok(ClusterPolynomial {
        total,
        edge_count: g.edge_count(),
        tree_count: trees.count(),
        tree_factor,
        p,
        roots,
    })
}

/// `Q / |E|`, checked against the polynomial.
pub fn mean_value_root(g: &MetricGraph) -> Result<f64> {
    let cp = cluster_polynomial(g)?;
    let root = cp.mean_value_root();
    let scale: f64 =
        cp.p.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c.abs() * root.abs().max(1.0).powi(i as i32))
            .sum();
    assert!(
        cp.p.eval(root).abs() <= 1e-12 * scale.max(1.0),
        "p(Q/|E|) = {} is not zero",
        cp.p.eval(root)
    );
    Ok(root)
}
