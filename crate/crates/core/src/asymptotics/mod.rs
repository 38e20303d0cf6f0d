//! Asymptotic cluster structure of the spectrum.

mod checks;
mod clusters;
mod polynomial;

pub use checks::{ambarzumian_check, weakened_check, CheckOptions, ClusterHypothesis, Verdict};
pub use clusters::{
    cluster_convergence, extract_cluster, ClusterReport, ConvergenceRow, ConvergenceTable,
    MatchedShift, Parity, DEFAULT_WINDOW,
};
pub use polynomial::{cluster_polynomial, mean_value_root, ClusterPolynomial, REAL_ROOT_TOL};
