//! Effective resistances with unit-resistance edges, as exact fractions.

use num_rational::Ratio;

use super::trees::{spanning_tree_count, spanning_tree_count_without};
use super::MetricGraph;

/// `(#spanning trees containing e) / (#spanning trees)`. Loops are in no
/// spanning tree and get resistance 0.
pub fn effective_resistance(g: &MetricGraph, edge: usize) -> Ratio<i128> {
    if g.edges()[edge].is_loop() {
        return Ratio::from_integer(0);
    }
    let total = spanning_tree_count(g);
    let avoiding = spanning_tree_count_without(g, Some(edge));
    Ratio::new(total - avoiding, total)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EqualResistance {
    pub holds: bool,
    /// The shared resistance of the non-loop edges, when they share one.
    pub r: Option<Ratio<i128>>,
}

/// Whether every non-loop edge has the same effective resistance `r < 1`.
/// Holds vacuously when there are no non-loop edges.
pub fn equal_resistance_precondition(g: &MetricGraph) -> EqualResistance {
    let mut values = (0..g.edge_count())
        .filter(|&j| !g.edges()[j].is_loop())
        .map(|j| effective_resistance(g, j));
    let Some(first) = values.next() else {
        return EqualResistance {
            holds: true,
            r: None,
        };
    };
    if values.all(|r| r == first) {
        EqualResistance {
            holds: first < Ratio::from_integer(1),
            r: Some(first),
        }
    } else {
        EqualResistance {
            holds: false,
            r: None,
        }
    }
}
