//! Graphs shared by the benchmarks.

use qgraph::{MetricGraph, PiecewisePotential};

pub fn complete_graph(n: usize) -> MetricGraph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    MetricGraph::from_edges(n, &edges).expect("complete graph is connected")
}

/// Complete graph with a two-step potential on every edge.
pub fn complete_graph_with_potential(n: usize) -> MetricGraph {
    let g = complete_graph(n);
    let potentials = (0..g.edge_count())
        .map(|j| {
            PiecewisePotential::new(vec![0.0, 0.5, 1.0], vec![j as f64 * 0.25, -1.0])
                .expect("valid potential")
        })
        .collect();
    g.with_potentials(potentials)
}
