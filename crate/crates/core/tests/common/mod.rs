#![allow(dead_code)]

use proptest::prelude::*;
use qgraph::{MetricGraph, PiecewisePotential};

pub fn loop_graph() -> MetricGraph {
    MetricGraph::from_edges(1, &[(0, 0)]).unwrap()
}

pub fn star() -> MetricGraph {
    MetricGraph::from_edges(4, &[(1, 0), (2, 0), (3, 0)]).unwrap()
}

pub fn triangle() -> MetricGraph {
    MetricGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
}

pub fn k4() -> MetricGraph {
    MetricGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
}

pub fn double_edge() -> MetricGraph {
    MetricGraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap()
}

pub fn path() -> MetricGraph {
    MetricGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap()
}

pub fn loop_with_pendant() -> MetricGraph {
    MetricGraph::from_edges(2, &[(0, 0), (0, 1)]).unwrap()
}

/// A square with one diagonal and a loop: mixed cycle structure.
pub fn kite_with_loop() -> MetricGraph {
    MetricGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 3)]).unwrap()
}

pub fn all_graphs() -> Vec<(&'static str, MetricGraph)> {
    vec![
        ("loop", loop_graph()),
        ("star", star()),
        ("triangle", triangle()),
        ("k4", k4()),
        ("double_edge", double_edge()),
        ("path", path()),
        ("loop_with_pendant", loop_with_pendant()),
        ("kite_with_loop", kite_with_loop()),
    ]
}

/// Step potentials with one to five pieces and values in `[-5, 5]`.
pub fn potential() -> impl Strategy<Value = PiecewisePotential> {
    (1usize..=5)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(0.02f64..0.98, n - 1),
                prop::collection::vec(-5.0f64..5.0, n),
            )
        })
        .prop_map(|(mut cuts, values)| {
            cuts.sort_by(f64::total_cmp);
            cuts.dedup_by(|b, a| *b - *a < 1e-3);
            let mut breakpoints = vec![0.0];
            breakpoints.extend(cuts);
            breakpoints.push(1.0);
            let values = values[..breakpoints.len() - 1].to_vec();
            PiecewisePotential::new(breakpoints, values).unwrap()
        })
}

pub fn potentials(n: usize) -> impl Strategy<Value = Vec<PiecewisePotential>> {
    prop::collection::vec(potential(), n)
}
