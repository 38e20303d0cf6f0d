//! Spectral analysis of Schrödinger operators `-y'' + q y` on connected
//! equilateral metric graphs with continuity and Kirchhoff vertex
//! conditions.
//!
//! * [`graph`]: the multigraph, spanning trees and effective resistances.
//! * [`edge`]: fundamental solutions on one edge for step potentials.
//! * [`spectral`]: the spectral matrix, its determinant, eigenvalues and
//!   eigenfunctions.
//! * [`asymptotics`]: the cluster polynomial and cluster extraction near
//!   `(2kπ)²`, plus the Ambarzumian-type hypothesis checks.

pub mod asymptotics;
pub mod edge;
pub mod error;
pub mod graph;
pub mod poly;
pub mod potential;
pub mod spectral;

pub use asymptotics::{
    ambarzumian_check, cluster_convergence, cluster_polynomial, extract_cluster, mean_value_root,
    weakened_check, CheckOptions, ClusterPolynomial, ClusterReport, Parity, Verdict,
};
pub use edge::{asymptotic_values, fundamental_values, fundamental_values_at, EdgeSolutionValues};
pub use error::{Error, Result};
pub use graph::{
    build_graph, effective_resistance, enumerate_spanning_trees, equal_resistance_precondition,
    incidence_matrices, is_bipartite, matrix_tree_count, EdgeDescription, GraphDescription,
    MetricGraph,
};
pub use potential::{sample_potential, PiecewisePotential};
pub use spectral::{
    assemble_matrix, eigenfunctions, find_eigenvalues, nullity, spectral_determinant,
    EigenvalueRecord, SpectralMatrix,
};
