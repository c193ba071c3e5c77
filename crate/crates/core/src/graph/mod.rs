//! Simple undirected graphs on dense vertex ids `0..n`.

mod format;
mod invariants;

use std::collections::BTreeSet;

use thiserror::Error;

pub use format::{parse_auto, parse_edge_list, parse_graph6, write_edge_list, write_graph6, ParseError};
pub use invariants::{
    independence_number, induced, is_connected, is_independent, is_k1r_free, k1r_witness, sigma_p,
    SigmaValue, StarWitness,
};

/// Order above which the exponential invariants (`α`, `σ_p`) log a warning.
pub const EXACT_INVARIANT_SOFT_LIMIT: usize = 20;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("sigma_p is defined for p >= 1")]
    ZeroSigmaOrder,
    #[error("star order r must be >= 1")]
    ZeroStarOrder,
}

/// A finite simple graph. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<BTreeSet<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![BTreeSet::new(); n], edge_count: 0 }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn insert_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        let n = self.order();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if !self.adj[u].insert(v) {
            return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
        }
        self.adj[v].insert(u);
        self.edge_count += 1;
        Ok(())
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("complete graph edges are valid")
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let edges = (0..n).map(|v| (v, (v + 1) % n));
        Graph::from_edges(n, edges).expect("cycle edges are valid")
    }

    /// Star `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star edges are valid")
    }

    /// Number of vertices, `|G|`.
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().copied()
    }

    pub fn neighbor_set(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].contains(&v)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.range(u + 1..).map(move |&v| (u, v)))
    }

    /// `deg_G(X)`, the degree sum over a vertex set.
    pub fn degree_sum<'a, I>(&self, set: I) -> usize
    where
        I: IntoIterator<Item = &'a usize>,
    {
        set.into_iter().map(|&v| self.degree(v)).sum()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.vertices().map(|v| self.degree(v)).min()
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.order() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.order() })
        }
    }
}
