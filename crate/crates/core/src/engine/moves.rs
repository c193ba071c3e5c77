//! Edge exchanges derived from predicate violations.

use std::fmt;

use serde::Serialize;

use super::claims::{ClaimViolation, PseudoCase, TreeView};
use super::{potential, EngineError};
use crate::graph::{k1r_witness, Graph, StarWitness};
use crate::tree::{edge, Edge, SpanningTree};

/// `T' = T - removed + added`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Move {
    pub claim: u8,
    /// Which exchange of the claim's case analysis produced the move.
    pub rule: &'static str,
    pub removed: Vec<Edge>,
    pub added: Vec<Edge>,
}

pub(crate) fn fmt_edges(edges: &[Edge]) -> String {
    edges.iter().map(|(a, b)| format!("{a}-{b}")).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "claim={} remove={} add={}", self.claim, fmt_edges(&self.removed), fmt_edges(&self.added))
    }
}

fn mv(claim: u8, rule: &'static str, removed: &[(usize, usize)], added: &[(usize, usize)]) -> Move {
    Move {
        claim,
        rule,
        removed: removed.iter().map(|&(a, b)| edge(a, b)).collect(),
        added: added.iter().map(|&(a, b)| edge(a, b)).collect(),
    }
}

/// Induced star on `center` and `others`, if those four vertices really form
/// one. Used to explain a missing chord.
fn star_on(g: &Graph, center: usize, others: &[usize]) -> Option<StarWitness> {
    let w = StarWitness { center, leaves: others.to_vec() };
    if w.verify(g) {
        Some(w)
    } else {
        k1r_witness(g, 4).ok().flatten()
    }
}

/// Derives the improving exchange for a verified violation.
pub fn derive_move(g: &Graph, t: &SpanningTree, violation: &ClaimViolation) -> Result<Move, EngineError> {
    if !violation.verify(g, t) {
        return Err(EngineError::Inconsistent(format!("violation does not verify against the tree: {violation:?}")));
    }
    derive(&TreeView::new(g, t), violation)
}

pub(crate) fn derive(view: &TreeView, violation: &ClaimViolation) -> Result<Move, EngineError> {
    let g = view.g;
    let t = view.t;
    // Edge from the nearest branch vertex of leaf `s` toward `s`.
    let branch_edge = |s: usize| -> Result<(usize, usize), EngineError> {
        let b = t.nearest_branch(s)?;
        Ok((b, view.step(b, s)))
    };
    match *violation {
        ClaimViolation::AdjacentLeaves { s, t: u } => {
            let (b, bs) = branch_edge(s)?;
            Ok(mv(1, "drop b.b_s, add s.t", &[(b, bs)], &[(s, u)]))
        }
        ClaimViolation::LeafBeyondBranch { s, b, x } => Ok(mv(2, "drop b.x, add s.x", &[(b, x)], &[(s, x)])),
        ClaimViolation::LeafSpansPathEdge { s, x, x_prev, .. } => {
            let s_c = t.neighbors(s)[0];
            Ok(mv(3, "drop x.x-, s.s_c; add s.x, s.x-", &[(x, x_prev), (s, s_c)], &[(s, x), (s, x_prev)]))
        }
        ClaimViolation::SharedInteriorNeighbor { x, x_prev, x_next, s, t: u, .. } => {
            if !g.has_edge(x_prev, x_next) {
                return Err(EngineError::NoApplicableChord {
                    claim: 4,
                    context: format!("x={x} x-={x_prev} x+={x_next} s={s} t={u}: x-.x+ missing"),
                    star: star_on(g, x, &[x_prev, x_next, s, u]),
                });
            }
            let (c, cs) = branch_edge(s)?;
            Ok(mv(
                4,
                "drop x.x-, x.x+, c.c_s; add s.x, t.x, x-.x+",
                &[(x, x_prev), (x, x_next), (c, cs)],
                &[(s, x), (u, x), (x_prev, x_next)],
            ))
        }
        ClaimViolation::Pseudoadjacent { s, t: u, e, ref case } => match *case {
            PseudoCase::Opposite => {
                let (es, et) = (view.near(e, s), view.far(e, s));
                let (b, bs) = branch_edge(s)?;
                if edge(b, bs) == e {
                    // e is s's attaching edge itself; one exchange suffices.
                    Ok(mv(5, "case 1 (e = b.b_s): drop e, add t.e_s", &[e], &[(u, es)]))
                } else {
                    Ok(mv(5, "case 1: drop e, b.b_s; add s.e_t, t.e_s", &[e, (b, bs)], &[(s, et), (u, es)]))
                }
            }
            PseudoCase::Shared { x, z, y } => {
                let y = y.ok_or_else(|| {
                    EngineError::Inconsistent(format!("shared far endpoint {x} is a leaf; adjacent leaves missed"))
                })?;
                let (b, bs) = branch_edge(s)?;
                let (w, wt) = branch_edge(u)?;
                if g.has_edge(s, z) {
                    Ok(mv(5, "case 2 (sz): drop b.b_s, e; add s.z, t.x", &[(b, bs), e], &[(s, z), (u, x)]))
                } else if g.has_edge(u, z) {
                    Ok(mv(5, "case 2 (tz): drop u.u_t, e; add t.z, s.x", &[(w, wt), e], &[(u, z), (s, x)]))
                } else if g.has_edge(s, y) {
                    Ok(mv(5, "case 2 (sy): drop x.y, u.u_t; add s.y, t.x", &[(x, y), (w, wt)], &[(s, y), (u, x)]))
                } else if g.has_edge(u, y) {
                    Ok(mv(5, "case 2 (ty): drop x.y, b.b_s; add t.y, s.x", &[(x, y), (b, bs)], &[(u, y), (s, x)]))
                } else if g.has_edge(y, z) {
                    Ok(mv(
                        5,
                        "case 2 (yz): drop e, x.y, b.b_s; add s.x, t.x, y.z",
                        &[e, (x, y), (b, bs)],
                        &[(s, x), (u, x), (y, z)],
                    ))
                } else {
                    Err(EngineError::NoApplicableChord {
                        claim: 5,
                        context: format!("x={x} y={y} z={z} s={s} t={u}: none of sz, tz, sy, ty, yz"),
                        star: star_on(g, x, &[y, z, s, u]),
                    })
                }
            }
        },
        ClaimViolation::CoveredBranchPath { ref path, t: u, s } => {
            let (Some(s), Some(&x_next)) = (s, path.get(2)) else {
                return Err(EngineError::Inconsistent(format!(
                    "branch path {path:?} of length 1 is covered; a leaf-beyond-branch violation was missed"
                )));
            };
            let (b, x) = (path[0], path[1]);
            if view.far(edge(b, x), u) != b {
                return Err(EngineError::Inconsistent(format!(
                    "leaf {u} sees {x} across {b}; a leaf-beyond-branch violation was missed"
                )));
            }
            if view.far(edge(x, x_next), s) == x {
                if s == u {
                    return Err(EngineError::Inconsistent(format!(
                        "leaf {s} spans {b}-{x}; a path-edge violation was missed"
                    )));
                }
                let (c, cs) = branch_edge(s)?;
                return Ok(mv(6, "drop e, c.c_s; add t.b, s.x", &[(b, x), (c, cs)], &[(u, b), (s, x)]));
            }
            let bs = view.step(b, s);
            let y = t.neighbors(b).iter().copied().find(|&v| v != x && v != bs).ok_or_else(|| {
                EngineError::Inconsistent(format!("branch vertex {b} has fewer than three tree neighbors"))
            })?;
            if g.has_edge(x, y) {
                Ok(mv(6, "xy: drop b.x, b.y; add b.t, x.y", &[(b, x), (b, y)], &[(b, u), (x, y)]))
            } else if g.has_edge(x, bs) {
                Ok(mv(6, "xb_s: drop b.x, b.b_s; add b.t, x.b_s", &[(b, x), (b, bs)], &[(b, u), (x, bs)]))
            } else if g.has_edge(y, bs) {
                Ok(mv(
                    6,
                    "yb_s: drop b.y, b.b_s, x.x+; add b.t, s.x+, y.b_s",
                    &[(b, y), (b, bs), (x, x_next)],
                    &[(b, u), (s, x_next), (y, bs)],
                ))
            } else {
                Err(EngineError::NoApplicableChord {
                    claim: 6,
                    context: format!("b={b} x={x} b_s={bs} y={y} t={u}: none of xy, xb_s, yb_s"),
                    star: star_on(g, b, &[x, bs, y, u]),
                })
            }
        }
    }
}

/// Performs the exchange, checking only that the result is a spanning tree.
pub fn exchange(g: &Graph, t: &SpanningTree, mv: &Move) -> Result<SpanningTree, EngineError> {
    let invalid = |reason: String| EngineError::InvalidMove { trace: mv.to_string(), reason };
    if mv.removed.len() != mv.added.len() {
        return Err(invalid("removed and added edge counts differ".into()));
    }
    let mut edges = t.edge_set().clone();
    for &(a, b) in &mv.removed {
        if !edges.remove(&edge(a, b)) {
            return Err(invalid(format!("{a}-{b} is not a tree edge")));
        }
    }
    for &(a, b) in &mv.added {
        if !g.has_edge(a, b) {
            return Err(invalid(format!("{a}-{b} is not a graph edge")));
        }
        if t.contains_edge(a, b) || !edges.insert(edge(a, b)) {
            return Err(invalid(format!("{a}-{b} is already in the tree")));
        }
    }
    SpanningTree::new(g, edges).map_err(|e| invalid(e.to_string()))
}

/// Performs the exchange and requires a strict potential decrease.
pub fn apply_move(g: &Graph, t: &SpanningTree, mv: &Move) -> Result<SpanningTree, EngineError> {
    let next = exchange(g, t, mv)?;
    let (before, after) = (potential(t), potential(&next));
    if after >= before {
        return Err(EngineError::MoveDidNotImprove { trace: mv.to_string(), before, after });
    }
    Ok(next)
}
