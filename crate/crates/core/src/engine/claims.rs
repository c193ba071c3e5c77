//! The six structural predicates a leaf-minimal, stem-maximal spanning tree
//! satisfies. A failing predicate yields a witness from which an improving
//! edge exchange is derived.
//!
//! Scans are deterministic: pairs of branch vertices, leaves, and tree edges
//! are visited in ascending order and the first violation is returned.

use serde::Serialize;

use crate::graph::Graph;
use crate::tree::{edge, Edge, SpanningTree};

/// Case split for two pseudoadjacent leaves `s`, `t` sharing tree edge `e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum PseudoCase {
    /// `g(e, s) ≠ g(e, t)`: the leaves see opposite endpoints.
    Opposite,
    /// `g(e, s) = g(e, t) = x`; `z` is the other endpoint of `e` and `y` the
    /// smallest tree neighbor of `x` other than `z` (absent only if `x` is a
    /// leaf, which the first predicate rules out).
    Shared { x: usize, z: usize, y: Option<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClaimViolation {
    /// Claim 1: leaves `s < t` adjacent in `G`.
    AdjacentLeaves { s: usize, t: usize },
    /// Claim 2: `b ∈ B(T)`, `x ∈ N_T(b)`, `b` on `P_T[s, x]`, `sx ∈ E(G)`.
    LeafBeyondBranch { s: usize, b: usize, x: usize },
    /// Claim 3: on the branch-to-branch path `b..r`, leaf `s` is adjacent to
    /// both `x` and its predecessor `x_prev`.
    LeafSpansPathEdge { b: usize, r: usize, s: usize, x: usize, x_prev: usize },
    /// Claim 4: interior `x` of the path `b..r` has two leaf neighbors.
    /// Oriented so that `b` lies on `P_T[s, x]`; `x_prev` is toward `b`.
    SharedInteriorNeighbor { b: usize, r: usize, x: usize, x_prev: usize, x_next: usize, s: usize, t: usize },
    /// Claim 5: leaves `s < t` are both oblique neighbors of tree edge `e`.
    Pseudoadjacent { s: usize, t: usize, e: Edge, case: PseudoCase },
    /// Claim 6: every edge of the branch-to-branch path has an oblique
    /// neighbor among the leaves. `t` is oblique to the first edge, `s` to the
    /// second (when the path has one).
    CoveredBranchPath { path: Vec<usize>, t: usize, s: Option<usize> },
}

impl ClaimViolation {
    pub fn claim_id(&self) -> u8 {
        match self {
            ClaimViolation::AdjacentLeaves { .. } => 1,
            ClaimViolation::LeafBeyondBranch { .. } => 2,
            ClaimViolation::LeafSpansPathEdge { .. } => 3,
            ClaimViolation::SharedInteriorNeighbor { .. } => 4,
            ClaimViolation::Pseudoadjacent { .. } => 5,
            ClaimViolation::CoveredBranchPath { .. } => 6,
        }
    }

    /// Re-checks the witness against `(G, T)` using only the tree API.
    pub fn verify(&self, g: &Graph, t: &SpanningTree) -> bool {
        let leaf = |v: usize| v < t.order() && t.is_leaf(v);
        let branch = |v: usize| v < t.order() && t.is_branch(v);
        let consecutive = |b: usize, r: usize| -> Option<Vec<usize>> {
            let path = t.tree_path(b, r).ok()?;
            let ok = b != r && branch(b) && branch(r) && path[1..path.len() - 1].iter().all(|&v| !branch(v));
            ok.then_some(path)
        };
        match *self {
            ClaimViolation::AdjacentLeaves { s, t: u } => s != u && leaf(s) && leaf(u) && g.has_edge(s, u),
            ClaimViolation::LeafBeyondBranch { s, b, x } => {
                leaf(s)
                    && branch(b)
                    && t.contains_edge(b, x)
                    && t.tree_path(s, x).is_ok_and(|p| p.contains(&b))
                    && g.has_edge(s, x)
            }
            ClaimViolation::LeafSpansPathEdge { b, r, s, x, x_prev } => {
                let Some(path) = consecutive(b, r) else { return false };
                let pos = path.iter().position(|&v| v == x);
                leaf(s)
                    && pos.is_some_and(|i| i >= 1 && path[i - 1] == x_prev)
                    && g.has_edge(s, x)
                    && g.has_edge(s, x_prev)
            }
            ClaimViolation::SharedInteriorNeighbor { b, r, x, x_prev, x_next, s, t: u } => {
                let Some(path) = consecutive(b, r) else { return false };
                let pos = path.iter().position(|&v| v == x);
                s != u
                    && leaf(s)
                    && leaf(u)
                    && pos.is_some_and(|i| i >= 1 && i + 1 < path.len() && path[i - 1] == x_prev && path[i + 1] == x_next)
                    && g.has_edge(x, s)
                    && g.has_edge(x, u)
                    && t.tree_path(s, x).is_ok_and(|p| p.contains(&b))
            }
            ClaimViolation::Pseudoadjacent { s, t: u, e, ref case } => {
                if s == u || !leaf(s) || !leaf(u) || !t.contains_edge(e.0, e.1) {
                    return false;
                }
                let (Ok(gs), Ok(gt)) = (t.far_endpoint(e, s), t.far_endpoint(e, u)) else { return false };
                let oblique = g.has_edge(s, gs) && g.has_edge(u, gt);
                oblique
                    && match *case {
                        PseudoCase::Opposite => gs != gt,
                        PseudoCase::Shared { x, z, y } => {
                            gs == gt
                                && x == gs
                                && edge(x, z) == e
                                && y.map_or(t.degree(x) == 1, |y| y != z && t.contains_edge(x, y))
                        }
                    }
            }
            ClaimViolation::CoveredBranchPath { ref path, t: tl, s } => {
                let (Some(&b), Some(&r)) = (path.first(), path.last()) else { return false };
                if consecutive(b, r).as_ref() != Some(path) {
                    return false;
                }
                let leaves = t.leaves();
                let covered = path.windows(2).all(|w| {
                    t.oblique_neighbors_in(g, edge(w[0], w[1]), &leaves).is_ok_and(|o| !o.is_empty())
                });
                let first_ok = leaf(tl) && t.is_oblique_neighbor(g, tl, edge(path[0], path[1])).unwrap_or(false);
                let second_ok = match (s, path.get(2)) {
                    (Some(s), Some(&x2)) => leaf(s) && t.is_oblique_neighbor(g, s, edge(path[1], x2)).unwrap_or(false),
                    (None, None) => true,
                    _ => false,
                };
                covered && first_ok && second_ok
            }
        }
    }
}

/// Per-tree cache shared by the predicates and the move derivation.
pub(crate) struct TreeView<'a> {
    pub g: &'a Graph,
    pub t: &'a SpanningTree,
    dist: Vec<Vec<usize>>,
    pub leaves: Vec<usize>,
    pub branch_paths: Vec<Vec<usize>>,
}

impl<'a> TreeView<'a> {
    pub fn new(g: &'a Graph, t: &'a SpanningTree) -> Self {
        let dist = (0..t.order()).map(|v| t.distances_from(v)).collect();
        TreeView { g, t, dist, leaves: t.leaves(), branch_paths: t.branch_paths() }
    }

    pub fn far(&self, e: Edge, v: usize) -> usize {
        if self.dist[v][e.0] > self.dist[v][e.1] {
            e.0
        } else {
            e.1
        }
    }

    pub fn near(&self, e: Edge, v: usize) -> usize {
        if self.far(e, v) == e.0 {
            e.1
        } else {
            e.0
        }
    }

    pub fn oblique(&self, v: usize, e: Edge) -> bool {
        self.g.has_edge(v, self.far(e, v))
    }

    /// `mid` lies on `P_T[a, b]`.
    pub fn on_path(&self, a: usize, mid: usize, b: usize) -> bool {
        self.dist[a][mid] + self.dist[mid][b] == self.dist[a][b]
    }

    /// `u_v` for `u ≠ v`.
    pub fn step(&self, u: usize, v: usize) -> usize {
        debug_assert_ne!(u, v);
        *self
            .t
            .neighbors(u)
            .iter()
            .find(|&&w| self.dist[w][v] + 1 == self.dist[u][v])
            .expect("tree is connected")
    }
}

pub(crate) fn claim1(view: &TreeView) -> Option<ClaimViolation> {
    let l = &view.leaves;
    for (i, &s) in l.iter().enumerate() {
        for &t in &l[i + 1..] {
            if view.g.has_edge(s, t) {
                return Some(ClaimViolation::AdjacentLeaves { s, t });
            }
        }
    }
    None
}

pub(crate) fn claim2(view: &TreeView) -> Option<ClaimViolation> {
    let branches = view.t.branch_vertices();
    for &s in &view.leaves {
        for &b in &branches {
            let toward_s = view.step(b, s);
            for &x in view.t.neighbors(b) {
                if x != toward_s && view.g.has_edge(s, x) {
                    return Some(ClaimViolation::LeafBeyondBranch { s, b, x });
                }
            }
        }
    }
    None
}

pub(crate) fn claim3(view: &TreeView) -> Option<ClaimViolation> {
    for path in &view.branch_paths {
        let (b, r) = (path[0], path[path.len() - 1]);
        for &s in &view.leaves {
            for w in path.windows(2) {
                if view.g.has_edge(s, w[1]) && view.g.has_edge(s, w[0]) {
                    return Some(ClaimViolation::LeafSpansPathEdge { b, r, s, x: w[1], x_prev: w[0] });
                }
            }
        }
    }
    None
}

pub(crate) fn claim4(view: &TreeView) -> Option<ClaimViolation> {
    for path in &view.branch_paths {
        let last = path.len() - 1;
        for i in 1..last {
            let x = path[i];
            let mut adjacent = view.leaves.iter().copied().filter(|&l| view.g.has_edge(x, l));
            let (Some(s), Some(t)) = (adjacent.next(), adjacent.next()) else { continue };
            let v = if view.on_path(s, path[0], x) {
                ClaimViolation::SharedInteriorNeighbor { b: path[0], r: path[last], x, x_prev: path[i - 1], x_next: path[i + 1], s, t }
            } else {
                ClaimViolation::SharedInteriorNeighbor { b: path[last], r: path[0], x, x_prev: path[i + 1], x_next: path[i - 1], s, t }
            };
            return Some(v);
        }
    }
    None
}

pub(crate) fn claim5(view: &TreeView) -> Option<ClaimViolation> {
    let edges: Vec<Edge> = view.t.edges().collect();
    let oblique: Vec<Vec<bool>> =
        view.leaves.iter().map(|&l| edges.iter().map(|&e| view.oblique(l, e)).collect()).collect();
    for (i, &s) in view.leaves.iter().enumerate() {
        for (j, &t) in view.leaves.iter().enumerate().skip(i + 1) {
            let Some(k) = (0..edges.len()).find(|&k| oblique[i][k] && oblique[j][k]) else { continue };
            let e = edges[k];
            let (gs, gt) = (view.far(e, s), view.far(e, t));
            let case = if gs != gt {
                PseudoCase::Opposite
            } else {
                let z = if e.0 == gs { e.1 } else { e.0 };
                let y = view.t.neighbors(gs).iter().copied().find(|&w| w != z);
                PseudoCase::Shared { x: gs, z, y }
            };
            return Some(ClaimViolation::Pseudoadjacent { s, t, e, case });
        }
    }
    None
}

pub(crate) fn claim6(view: &TreeView) -> Option<ClaimViolation> {
    let first_oblique = |e: Edge| view.leaves.iter().copied().find(|&l| view.oblique(l, e));
    for path in &view.branch_paths {
        let covered = path.windows(2).all(|w| first_oblique(edge(w[0], w[1])).is_some());
        if covered {
            let t = first_oblique(edge(path[0], path[1])).expect("covered");
            let s = path.get(2).map(|&x2| first_oblique(edge(path[1], x2)).expect("covered"));
            return Some(ClaimViolation::CoveredBranchPath { path: path.clone(), t, s });
        }
    }
    None
}

pub(crate) fn first_violation(view: &TreeView) -> Option<ClaimViolation> {
    claim1(view)
        .or_else(|| claim2(view))
        .or_else(|| claim3(view))
        .or_else(|| claim4(view))
        .or_else(|| claim5(view))
        .or_else(|| claim6(view))
}

macro_rules! public_check {
    ($(#[$doc:meta])* $name:ident, $inner:ident) => {
        $(#[$doc])*
        pub fn $name(g: &Graph, t: &SpanningTree) -> Option<ClaimViolation> {
            $inner(&TreeView::new(g, t))
        }
    };
}

public_check!(
    /// `L(T)` is independent in `G`.
    check_claim1, claim1
);
public_check!(
    /// No leaf sees a tree neighbor of a branch vertex lying between them.
    check_claim2, claim2
);
public_check!(
    /// No leaf is adjacent to both ends of an edge on a branch-to-branch path.
    check_claim3, claim3
);
public_check!(
    /// Interior vertices of branch-to-branch paths have at most one leaf neighbor.
    check_claim4, claim4
);
public_check!(
    /// `L(T)` is pseudoindependent.
    check_claim5, claim5
);
public_check!(
    /// Every branch-to-branch path has an edge with no oblique leaf neighbor.
    check_claim6, claim6
);

/// Claims 1 to 6 in order; the first violation found.
pub fn check_claims(g: &Graph, t: &SpanningTree) -> Option<ClaimViolation> {
    first_violation(&TreeView::new(g, t))
}
