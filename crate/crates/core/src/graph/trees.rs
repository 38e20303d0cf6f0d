//! Spanning trees: enumeration and Matrix-Tree counts.

use nalgebra::DMatrix;

use super::{DisjointSets, MetricGraph};
use crate::error::{Error, Result};

pub const DEFAULT_TREE_LIMIT: usize = 1 << 20;

/// All spanning trees of a graph, each as sorted edge indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTreeSet {
    pub trees: Vec<Vec<usize>>,
}

impl SpanningTreeSet {
    pub fn count(&self) -> usize {
        self.trees.len()
    }
}

pub fn enumerate_spanning_trees(g: &MetricGraph) -> Result<SpanningTreeSet> {
    enumerate_spanning_trees_with_limit(g, DEFAULT_TREE_LIMIT)
}

/// Deletion–contraction over the non-loop edges: each edge is either
/// contracted into the tree (when it joins two components) or deleted (when
/// the rest of the graph still connects everything).
pub fn enumerate_spanning_trees_with_limit(
    g: &MetricGraph,
    limit: usize,
) -> Result<SpanningTreeSet> {
    let candidates: Vec<(usize, usize, usize)> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_loop())
        .map(|(j, e)| (j, e.tail, e.head))
        .collect();
    let mut search = TreeSearch {
        candidates: &candidates,
        target: g.vertex_count() - 1,
        limit,
        chosen: Vec::with_capacity(g.vertex_count()),
        trees: Vec::new(),
    };
    search.descend(0, DisjointSets::new(g.vertex_count()))?;
    Ok(SpanningTreeSet {
        trees: search.trees,
    })
}

struct TreeSearch<'a> {
    candidates: &'a [(usize, usize, usize)],
    target: usize,
    limit: usize,
    chosen: Vec<usize>,
    trees: Vec<Vec<usize>>,
}

impl TreeSearch<'_> {
    fn descend(&mut self, next: usize, forest: DisjointSets) -> Result<()> {
        if self.chosen.len() == self.target {
            if self.trees.len() == self.limit {
                return Err(Error::EnumerationLimitExceeded { limit: self.limit });
            }
            self.trees.push(self.chosen.clone());
            return Ok(());
        }
        if next == self.candidates.len() {
            return Ok(());
        }
        let (j, tail, head) = self.candidates[next];

        let mut contracted = forest.clone();
        if contracted.union(tail, head) {
            self.chosen.push(j);
            self.descend(next + 1, contracted)?;
            self.chosen.pop();
        }

        let mut rest = forest.clone();
        for &(_, t, h) in &self.candidates[next + 1..] {
            rest.union(t, h);
        }
        if rest.count() == 1 {
            self.descend(next + 1, forest)?;
        }
        Ok(())
    }
}

/// Exact number of spanning trees (Bareiss elimination on the reduced
/// loopless Laplacian).
pub fn spanning_tree_count(g: &MetricGraph) -> i128 {
    spanning_tree_count_without(g, None)
}

pub(crate) fn spanning_tree_count_without(g: &MetricGraph, skip: Option<usize>) -> i128 {
    let n = g.vertex_count();
    let mut lap = vec![vec![0i128; n]; n];
    for (j, e) in g.edges().iter().enumerate() {
        if e.is_loop() || Some(j) == skip {
            continue;
        }
        lap[e.tail][e.tail] += 1;
        lap[e.head][e.head] += 1;
        lap[e.tail][e.head] -= 1;
        lap[e.head][e.tail] -= 1;
    }
    let reduced: Vec<Vec<i128>> = lap[1..].iter().map(|row| row[1..].to_vec()).collect();
    bareiss_determinant(reduced)
}

/// Fraction-free Gaussian elimination; exact for integer matrices.
fn bareiss_determinant(mut a: Vec<Vec<i128>>) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Any cofactor of the weighted loopless Laplacian, i.e. the sum over
/// spanning trees of the product of tree-edge weights. Without weights
/// this is the exact tree count.
pub fn matrix_tree_count(g: &MetricGraph, weights: Option<&[f64]>) -> f64 {
    let Some(w) = weights else {
        return spanning_tree_count(g) as f64;
    };
    assert_eq!(w.len(), g.edge_count(), "one weight per edge");
    let n = g.vertex_count();
    if n == 1 {
        return 1.0;
    }
    let mut lap = DMatrix::<f64>::zeros(n - 1, n - 1);
    let mut add = |r: usize, c: usize, v: f64| {
        if r > 0 && c > 0 {
            lap[(r - 1, c - 1)] += v;
        }
    };
    for (e, &we) in g.edges().iter().zip(w) {
        if e.is_loop() {
            continue;
        }
        add(e.tail, e.tail, we);
        add(e.head, e.head, we);
        add(e.tail, e.head, -we);
        add(e.head, e.tail, -we);
    }
    lap.lu().determinant()
}
