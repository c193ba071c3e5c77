//! Spanning trees and the tree-relative notions used by the local search:
//! tree paths, the directional neighbor `u_v`, the far endpoint `g(e, v)`,
//! oblique neighbors, pseudoadjacency and the reducible stem.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::Graph;

/// Tree edge as a canonical `(min, max)` pair.
pub type Edge = (usize, usize);

pub fn edge(a: usize, b: usize) -> Edge {
    (a.min(b), a.max(b))
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("a spanning tree of {n} vertices needs {expected} edges, got {found}")]
    EdgeCount { n: usize, expected: usize, found: usize },
    #[error("edge {0}-{1} is not an edge of the host graph")]
    NotGraphEdge(usize, usize),
    #[error("edge {0}-{1} listed twice")]
    DuplicateEdge(usize, usize),
    #[error("edge set contains a cycle through {0}-{1}")]
    Cycle(usize, usize),
    #[error("edge {0}-{1} is not a tree edge")]
    NotTreeEdge(usize, usize),
    #[error("vertex {vertex} out of range for a tree on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("step_toward needs distinct endpoints, got {0} twice")]
    SameVertex(usize),
    #[error("tree has no branch vertices")]
    NoBranchVertices,
    #[error("vertex {0} is not a leaf")]
    NotALeaf(usize),
    #[error("malformed parent array: {0}")]
    ParentArray(String),
}

/// A spanning tree of some host graph. Immutable; exchanges build new values.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpanningTree {
    adj: Vec<Vec<usize>>,
    edges: BTreeSet<Edge>,
}

impl SpanningTree {
    /// Validates that `edges` is a spanning tree of `g`: `n - 1` distinct
    /// graph edges without a cycle.
    pub fn new<I>(g: &Graph, edges: I) -> Result<Self, TreeError>
    where
        I: IntoIterator<Item = Edge>,
    {
        let n = g.order();
        let mut set = BTreeSet::new();
        let mut dsu = Dsu::new(n);
        for (a, b) in edges {
            let e = edge(a, b);
            for v in [a, b] {
                if v >= n {
                    return Err(TreeError::VertexOutOfRange { vertex: v, n });
                }
            }
            if !g.has_edge(a, b) {
                return Err(TreeError::NotGraphEdge(e.0, e.1));
            }
            if !set.insert(e) {
                return Err(TreeError::DuplicateEdge(e.0, e.1));
            }
            if !dsu.union(a, b) {
                return Err(TreeError::Cycle(e.0, e.1));
            }
        }
        let expected = n.saturating_sub(1);
        if set.len() != expected {
            return Err(TreeError::EdgeCount { n, expected, found: set.len() });
        }
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &set {
            adj[a].push(b);
            adj[b].push(a);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        Ok(SpanningTree { adj, edges: set })
    }

    /// Reads the tree from a parent array (`None` marks the root).
    pub fn from_parents(g: &Graph, parents: &[Option<usize>]) -> Result<Self, TreeError> {
        if parents.len() != g.order() {
            return Err(TreeError::ParentArray(format!(
                "{} entries for a graph on {} vertices",
                parents.len(),
                g.order()
            )));
        }
        let roots = parents.iter().filter(|p| p.is_none()).count();
        if !parents.is_empty() && roots != 1 {
            return Err(TreeError::ParentArray(format!("expected exactly one root, found {roots}")));
        }
        let edges = parents.iter().enumerate().filter_map(|(v, p)| p.map(|p| (v, p)));
        SpanningTree::new(g, edges)
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn contains_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&edge(a, b))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Tree neighbors in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// `L(T)`, ascending. Empty when `n <= 1`.
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.degree(v) == 1).collect()
    }

    /// `B(T)`, ascending.
    pub fn branch_vertices(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.degree(v) >= 3).collect()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.degree(v) == 1
    }

    pub fn is_branch(&self, v: usize) -> bool {
        self.degree(v) >= 3
    }

    /// `|L(T)| + |B(T)|`.
    pub fn leaf_branch_count(&self) -> usize {
        self.adj.iter().filter(|a| a.len() == 1 || a.len() >= 3).count()
    }

    /// `|L(T)| = 2 + Σ_{b ∈ B(T)} (deg_T(b) - 2)`; vacuous for `n <= 1`.
    pub fn leaf_identity_holds(&self) -> bool {
        if self.order() <= 1 {
            return true;
        }
        let excess: usize = self.branch_vertices().iter().map(|&b| self.degree(b) - 2).sum();
        self.leaves().len() == 2 + excess
    }

    pub fn is_hamiltonian_path(&self) -> bool {
        self.order() <= 1 || (self.leaves().len() == 2 && self.branch_vertices().is_empty())
    }

    fn check_vertex(&self, v: usize) -> Result<(), TreeError> {
        if v < self.order() {
            Ok(())
        } else {
            Err(TreeError::VertexOutOfRange { vertex: v, n: self.order() })
        }
    }

    fn parents_from(&self, root: usize) -> Vec<Option<usize>> {
        let mut parent = vec![None; self.order()];
        let mut seen = vec![false; self.order()];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    /// BFS distances in `T` from `v`.
    pub fn distances_from(&self, v: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.order()];
        let mut queue = VecDeque::from([v]);
        dist[v] = 0;
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// `P_T[u, v]` oriented from `u` to `v`. Successor and predecessor of a
    /// vertex are its neighbors in this sequence.
    pub fn tree_path(&self, u: usize, v: usize) -> Result<Vec<usize>, TreeError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let parent = self.parents_from(v);
        let mut path = vec![u];
        let mut cur = u;
        while let Some(p) = parent[cur] {
            path.push(p);
            cur = p;
        }
        Ok(path)
    }

    /// `u_v`: the tree neighbor of `u` on `P_T[u, v]`.
    pub fn step_toward(&self, u: usize, v: usize) -> Result<usize, TreeError> {
        if u == v {
            return Err(TreeError::SameVertex(u));
        }
        Ok(self.tree_path(u, v)?[1])
    }

    /// `g(e, v)`: the endpoint of `e` farther from `v` in `T`.
    pub fn far_endpoint(&self, e: Edge, v: usize) -> Result<usize, TreeError> {
        self.check_vertex(v)?;
        if !self.contains_edge(e.0, e.1) {
            return Err(TreeError::NotTreeEdge(e.0, e.1));
        }
        let dist = self.distances_from(v);
        Ok(if dist[e.0] > dist[e.1] { e.0 } else { e.1 })
    }

    /// `v` is an oblique neighbor of `e` when `v·g(e, v) ∈ E(G)`.
    pub fn is_oblique_neighbor(&self, g: &Graph, v: usize, e: Edge) -> Result<bool, TreeError> {
        Ok(g.has_edge(v, self.far_endpoint(e, v)?))
    }

    pub fn oblique_neighbors_in(&self, g: &Graph, e: Edge, set: &[usize]) -> Result<Vec<usize>, TreeError> {
        let mut out = Vec::new();
        for &v in set {
            if self.is_oblique_neighbor(g, v, e)? {
                out.push(v);
            }
        }
        Ok(out)
    }

    /// Some tree edge has both `u` and `v` as oblique neighbors.
    pub fn pseudoadjacent(&self, g: &Graph, u: usize, v: usize) -> Result<bool, TreeError> {
        for e in self.edges() {
            if self.is_oblique_neighbor(g, u, e)? && self.is_oblique_neighbor(g, v, e)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// First branch vertex on the path from leaf `s`.
    pub fn nearest_branch(&self, s: usize) -> Result<usize, TreeError> {
        self.check_vertex(s)?;
        if !self.is_leaf(s) {
            return Err(TreeError::NotALeaf(s));
        }
        let mut prev = s;
        let mut cur = self.adj[s][0];
        loop {
            match self.degree(cur) {
                2 => {
                    let next = if self.adj[cur][0] == prev { self.adj[cur][1] } else { self.adj[cur][0] };
                    prev = cur;
                    cur = next;
                }
                1 => return Err(TreeError::NoBranchVertices),
                _ => return Ok(cur),
            }
        }
    }

    /// The run of vertices from leaf `s` up to, excluding, its nearest
    /// branch vertex.
    pub fn leg(&self, s: usize) -> Result<Vec<usize>, TreeError> {
        let b = self.nearest_branch(s)?;
        let mut path = self.tree_path(s, b)?;
        path.pop();
        Ok(path)
    }

    /// `R_Stem(T)`: all vertices minus every leaf's leg. Requires `B(T) ≠ ∅`.
    pub fn reducible_stem(&self) -> Result<BTreeSet<usize>, TreeError> {
        if self.branch_vertices().is_empty() {
            return Err(TreeError::NoBranchVertices);
        }
        let mut stem: BTreeSet<usize> = (0..self.order()).collect();
        for s in self.leaves() {
            for v in self.leg(s)? {
                stem.remove(&v);
            }
        }
        Ok(stem)
    }

    /// Tree paths between consecutive branch vertices `b < r` (no branch
    /// vertex in the interior), each oriented from `b` to `r`, sorted.
    pub fn branch_paths(&self) -> Vec<Vec<usize>> {
        let mut paths = Vec::new();
        for b in self.branch_vertices() {
            for &first in &self.adj[b] {
                let mut path = vec![b];
                let mut prev = b;
                let mut cur = first;
                while self.degree(cur) == 2 {
                    path.push(cur);
                    let next = if self.adj[cur][0] == prev { self.adj[cur][1] } else { self.adj[cur][0] };
                    prev = cur;
                    cur = next;
                }
                path.push(cur);
                if self.is_branch(cur) && b < cur {
                    paths.push(path);
                }
            }
        }
        paths.sort();
        paths
    }

    /// Parent array rooted at vertex 0 (`None` for the root).
    pub fn parent_array(&self) -> Vec<Option<usize>> {
        if self.order() == 0 {
            return Vec::new();
        }
        self.parents_from(0)
    }
}

/// `n: p_0 p_1 ... p_{n-1}` with `-1` for the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParentArray(pub Vec<Option<usize>>);

impl fmt::Display for ParentArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.0.len())?;
        for p in &self.0 {
            match p {
                Some(p) => write!(f, " {p}")?,
                None => f.write_str(" -1")?,
            }
        }
        Ok(())
    }
}

impl FromStr for ParentArray {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: &str| TreeError::ParentArray(msg.to_string());
        let (count, rest) = s.trim().split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let n: usize = count.trim().parse().map_err(|_| bad("bad vertex count"))?;
        let parents = rest
            .split_whitespace()
            .map(|tok| match tok {
                "-1" => Ok(None),
                t => t.parse().map(Some).map_err(|_| bad(&format!("bad parent {t:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if parents.len() != n {
            return Err(bad(&format!("announced {n} entries, found {}", parents.len())));
        }
        Ok(ParentArray(parents))
    }
}

impl From<&SpanningTree> for ParentArray {
    fn from(t: &SpanningTree) -> Self {
        ParentArray(t.parent_array())
    }
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
