//! Directed multigraphs with unit-length edges.

mod resistance;
mod trees;

pub use resistance::{effective_resistance, equal_resistance_precondition, EqualResistance};
pub use trees::{
    enumerate_spanning_trees, enumerate_spanning_trees_with_limit, matrix_tree_count,
    spanning_tree_count, SpanningTreeSet, DEFAULT_TREE_LIMIT,
};

use std::collections::{HashMap, HashSet, VecDeque};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::potential::PiecewisePotential;

/// An edge parametrized by `x ∈ [0, 1]`, running from `tail` (`x = 0`)
/// to `head` (`x = 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
    pub potential: PiecewisePotential,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeDescription {
    pub id: String,
    pub from: String,
    pub to: String,
    pub potential: PiecewisePotential,
}

/// Input record for [`build_graph`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GraphDescription {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDescription>,
}

/// A connected equilateral metric graph. Loops and parallel edges are
/// allowed. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

pub fn build_graph(desc: &GraphDescription) -> Result<MetricGraph> {
    let mut index = HashMap::new();
    for (i, v) in desc.vertices.iter().enumerate() {
        if index.insert(v.as_str(), i).is_some() {
            return Err(Error::DuplicateId(v.clone()));
        }
    }
    let mut seen = HashSet::new();
    let mut edges = Vec::with_capacity(desc.edges.len());
    for e in &desc.edges {
        if !seen.insert(e.id.as_str()) {
            return Err(Error::DuplicateId(e.id.clone()));
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::DanglingEndpoint {
                    edge: e.id.clone(),
                    vertex: name.to_string(),
                })
        };
        edges.push(Edge {
            id: e.id.clone(),
            tail: lookup(&e.from)?,
            head: lookup(&e.to)?,
            potential: e.potential.clone(),
        });
    }
    MetricGraph::new(desc.vertices.clone(), edges)
}

impl MetricGraph {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        if vertices.is_empty() || edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let n = vertices.len();
        if let Some(e) = edges.iter().find(|e| e.tail >= n || e.head >= n) {
            let bad = if e.tail >= n { e.tail } else { e.head };
            return Err(Error::DanglingEndpoint {
                edge: e.id.clone(),
                vertex: bad.to_string(),
            });
        }
        let g = Self { vertices, edges };
        let components = g.component_count();
        if components != 1 {
            return Err(Error::DisconnectedGraph { components });
        }
        Ok(g)
    }

    /// Graph on vertices `v0..v{n-1}` with edges `e1..` and zero potentials.
    pub fn from_edges(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let vertices = (0..vertex_count).map(|i| format!("v{i}")).collect();
        let edges = edges
            .iter()
            .enumerate()
            .map(|(j, &(tail, head))| Edge {
                id: format!("e{}", j + 1),
                tail,
                head,
                potential: PiecewisePotential::zero(),
            })
            .collect();
        Self::new(vertices, edges)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    /// Dimension of the cycle space, `|E| - |V| + 1`.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + 1 - self.vertices.len()
    }

    /// `|E| - |V| + 2`, the number of eigenvalues in a high-frequency cluster.
    pub fn cluster_size(&self) -> usize {
        self.cycle_rank() + 1
    }

    /// `Σ_j ∫₀¹ q_j`.
    pub fn total_potential(&self) -> f64 {
        self.edges.iter().map(|e| e.potential.mean()).sum()
    }

    pub fn edge_means(&self) -> Vec<f64> {
        self.edges.iter().map(|e| e.potential.mean()).collect()
    }

    pub fn min_potential(&self) -> f64 {
        self.edges
            .iter()
            .map(|e| e.potential.min_value())
            .fold(f64::INFINITY, f64::min)
    }

    pub fn with_potentials(&self, potentials: Vec<PiecewisePotential>) -> Self {
        assert_eq!(potentials.len(), self.edges.len());
        let mut g = self.clone();
        for (e, q) in g.edges.iter_mut().zip(potentials) {
            e.potential = q;
        }
        g
    }

    pub fn with_uniform_potential(&self, q: PiecewisePotential) -> Self {
        self.with_potentials(vec![q; self.edges.len()])
    }

    /// Reverses edge `j` and replaces its potential by `q_j(1 - x)`.
    pub fn with_reversed_edge(&self, j: usize) -> Self {
        let mut g = self.clone();
        let e = &mut g.edges[j];
        std::mem::swap(&mut e.tail, &mut e.head);
        e.potential = e.potential.reversed();
        g
    }

    /// Renumbers vertices (`vertex_perm[old] = new`) and reorders edges
    /// (`edge_order[new] = old`).
    pub fn relabeled(&self, vertex_perm: &[usize], edge_order: &[usize]) -> Self {
        let mut vertices = vec![String::new(); self.vertices.len()];
        for (old, &new) in vertex_perm.iter().enumerate() {
            vertices[new] = self.vertices[old].clone();
        }
        let edges = edge_order
            .iter()
            .map(|&old| {
                let e = &self.edges[old];
                Edge {
                    tail: vertex_perm[e.tail],
                    head: vertex_perm[e.head],
                    ..e.clone()
                }
            })
            .collect();
        Self { vertices, edges }
    }

    fn component_count(&self) -> usize {
        let mut dsu = DisjointSets::new(self.vertices.len());
        for e in &self.edges {
            dsu.union(e.tail, e.head);
        }
        dsu.count()
    }
}

/// A two-colouring (`1` or `2` per vertex) with every edge bicoloured, if
/// one exists. Loops rule it out.
pub fn is_bipartite(g: &MetricGraph) -> Option<Vec<u8>> {
    let adj = adjacency(g);
    let mut color = vec![0u8; g.vertex_count()];
    color[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &(v, _) in &adj[u] {
            if color[v] == 0 {
                color[v] = 3 - color[u];
                queue.push_back(v);
            } else if color[v] == color[u] {
                return None;
            }
        }
    }
    Some(color)
}

/// Edge indices of a closed walk of odd length, if the graph has one.
pub fn odd_closed_walk(g: &MetricGraph) -> Option<Vec<usize>> {
    if let Some(j) = g.edges.iter().position(Edge::is_loop) {
        return Some(vec![j]);
    }
    let adj = adjacency(g);
    let n = g.vertex_count();
    let mut depth = vec![usize::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    depth[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for &(v, j) in &adj[u] {
            if depth[v] == usize::MAX {
                depth[v] = depth[u] + 1;
                parent[v] = u;
                parent_edge[v] = j;
                queue.push_back(v);
            } else if depth[v] == depth[u] {
                // climb both BFS paths to their common ancestor
                let (mut a, mut b) = (u, v);
                let (mut left, mut right) = (Vec::new(), Vec::new());
                while a != b {
                    left.push(parent_edge[a]);
                    right.push(parent_edge[b]);
                    a = parent[a];
                    b = parent[b];
                }
                // ancestor → u, across j, then v → ancestor
                left.reverse();
                left.push(j);
                left.extend(right);
                return Some(left);
            }
        }
    }
    None
}

fn adjacency(g: &MetricGraph) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); g.vertex_count()];
    for (j, e) in g.edges.iter().enumerate() {
        adj[e.tail].push((e.head, j));
        if !e.is_loop() {
            adj[e.head].push((e.tail, j));
        }
    }
    adj
}

/// Vertex-by-edge incidence matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct IncidenceMatrices {
    /// `-1` at the tail, `+1` at the head; loop columns vanish.
    pub ordered: DMatrix<f64>,
    /// `1` at each endpoint; `2` for a loop.
    pub unordered: DMatrix<f64>,
}

pub fn incidence_matrices(g: &MetricGraph) -> IncidenceMatrices {
    let (n, m) = (g.vertex_count(), g.edge_count());
    let mut ordered = DMatrix::zeros(n, m);
    let mut unordered = DMatrix::zeros(n, m);
    for (j, e) in g.edges.iter().enumerate() {
        ordered[(e.tail, j)] -= 1.0;
        ordered[(e.head, j)] += 1.0;
        unordered[(e.tail, j)] += 1.0;
        unordered[(e.head, j)] += 1.0;
    }
    IncidenceMatrices { ordered, unordered }
}

#[derive(Debug, Clone)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    count: usize,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            count: n,
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `false` when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.count -= 1;
        true
    }

    pub(crate) fn count(&self) -> usize {
        self.count
    }
}
