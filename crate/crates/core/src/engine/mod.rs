//! Lexicographic local search over spanning trees.
//!
//! Starting from a DFS tree, the search repeatedly checks six structural
//! predicates. A violated predicate yields an edge exchange that strictly
//! decreases the potential `(|L(T)|, -|R_Stem(T)|)`. The search stops as soon
//! as `|L(T)| + |B(T)| <= m + k + 2`, or, when every predicate holds, emits a
//! certificate that the degree-sum hypothesis `σ_{m+2}(G) >= n - k` fails.

mod certificate;
mod claims;
mod moves;

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{is_connected, k1r_witness, Graph, StarWitness};
use crate::tree::{SpanningTree, TreeError};

pub use certificate::{build_certificate, Certificate};
pub use claims::{
    check_claim1, check_claim2, check_claim3, check_claim4, check_claim5, check_claim6, check_claims,
    ClaimViolation, PseudoCase,
};
pub use moves::{apply_move, derive_move, exchange, Move};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph contains an induced K_{{1,4}} centered at {} with leaves {:?}", .0.center, .0.leaves)]
    NotK14Free(StarWitness),
    #[error("need m <= k + 1, got k={k} m={m}")]
    BoundOrder { k: usize, m: usize },
    #[error("invalid move [{trace}]: {reason}")]
    InvalidMove { trace: String, reason: String },
    #[error("move [{trace}] did not decrease the potential: {before} -> {after}")]
    MoveDidNotImprove { trace: String, before: Potential, after: Potential },
    #[error("claim {claim}: no applicable chord ({context}); induced star: {star:?}")]
    NoApplicableChord { claim: u8, context: String, star: Option<StarWitness> },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("certificate precondition failed: {0}")]
    CertificatePrecondition(String),
    #[error("certificate assertion failed: {0}")]
    CertificateAssertion(String),
    #[error("exceeded the move budget n^2 = {budget}")]
    MoveBudgetExceeded { budget: usize },
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// `(|L(T)|, |R_Stem(T)|)`, ordered lexicographically on
/// `(leaf_count, -stem_size)`: smaller is better.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Potential {
    pub leaf_count: usize,
    /// `n` when the tree is a path (no branch vertices).
    pub stem_size: usize,
}

impl Ord for Potential {
    fn cmp(&self, other: &Self) -> Ordering {
        self.leaf_count.cmp(&other.leaf_count).then(other.stem_size.cmp(&self.stem_size))
    }
}

impl PartialOrd for Potential {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, -{})", self.leaf_count, self.stem_size)
    }
}

pub fn potential(t: &SpanningTree) -> Potential {
    let stem_size = t.reducible_stem().map_or(t.order(), |s| s.len());
    Potential { leaf_count: t.leaves().len(), stem_size }
}

/// One applied exchange together with the tree statistics after it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoveRecord {
    #[serde(rename = "move")]
    pub mv: Move,
    pub before: Potential,
    pub after: Potential,
    pub leaves: usize,
    pub branches: usize,
}

impl fmt::Display for MoveRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} L={} B={} stem={}", self.mv, self.leaves, self.branches, self.after.stem_size)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// A spanning tree with at most `m + k + 2` leaves and branch vertices.
    GoodTree { tree: SpanningTree, trace: Vec<MoveRecord> },
    /// Every predicate holds and the bound is still missed; the certificate
    /// shows `σ_{m+2}(G) <= n - 1 - k`.
    HypothesisViolation { certificate: Certificate, tree: SpanningTree, trace: Vec<MoveRecord> },
}

impl Outcome {
    pub fn tree(&self) -> &SpanningTree {
        match self {
            Outcome::GoodTree { tree, .. } | Outcome::HypothesisViolation { tree, .. } => tree,
        }
    }

    pub fn trace(&self) -> &[MoveRecord] {
        match self {
            Outcome::GoodTree { trace, .. } | Outcome::HypothesisViolation { trace, .. } => trace,
        }
    }

    pub fn is_good(&self) -> bool {
        matches!(self, Outcome::GoodTree { .. })
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Outcome::HypothesisViolation { certificate, .. } => Some(certificate),
            Outcome::GoodTree { .. } => None,
        }
    }
}

/// DFS tree from vertex 0, visiting neighbors in ascending order.
pub fn initial_tree(g: &Graph) -> Result<SpanningTree, EngineError> {
    let n = g.order();
    if n == 0 {
        return Err(EngineError::EmptyGraph);
    }
    if !is_connected(g) {
        return Err(EngineError::Disconnected);
    }
    let mut seen = vec![false; n];
    let mut edges = Vec::with_capacity(n - 1);
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(0, g.neighbors(0).collect())];
    seen[0] = true;
    while let Some((v, pending)) = stack.last_mut() {
        let v = *v;
        let next = pending.iter().position(|&w| !seen[w]);
        match next {
            Some(i) => {
                let w = pending[i];
                pending.drain(..=i);
                seen[w] = true;
                edges.push((v, w));
                stack.push((w, g.neighbors(w).collect()));
            }
            None => {
                stack.pop();
            }
        }
    }
    Ok(SpanningTree::new(g, edges)?)
}

fn check_preconditions(g: &Graph, k: usize, m: usize) -> Result<(), EngineError> {
    if m > k + 1 {
        return Err(EngineError::BoundOrder { k, m });
    }
    if g.order() == 0 {
        return Err(EngineError::EmptyGraph);
    }
    if !is_connected(g) {
        return Err(EngineError::Disconnected);
    }
    if let Some(w) = k1r_witness(g, 4).expect("r = 4 is positive") {
        return Err(EngineError::NotK14Free(w));
    }
    Ok(())
}

/// Searches for a spanning tree with at most `m + k + 2` leaves and branch
/// vertices in a connected `K_{1,4}`-free graph (`m <= k + 1`).
pub fn improve(g: &Graph, k: usize, m: usize) -> Result<Outcome, EngineError> {
    check_preconditions(g, k, m)?;
    improve_unchecked(g, initial_tree(g)?, k, m)
}

/// Same search started from an arbitrary spanning tree of `g`.
pub fn improve_from(g: &Graph, start: SpanningTree, k: usize, m: usize) -> Result<Outcome, EngineError> {
    check_preconditions(g, k, m)?;
    let start = SpanningTree::new(g, start.edges())?;
    improve_unchecked(g, start, k, m)
}

fn improve_unchecked(g: &Graph, mut tree: SpanningTree, k: usize, m: usize) -> Result<Outcome, EngineError> {
    let n = g.order();
    let mut trace = Vec::new();
    if n <= 2 {
        return Ok(Outcome::GoodTree { tree, trace });
    }
    let budget = n * n;
    loop {
        if tree.leaf_branch_count() <= m + k + 2 {
            return Ok(Outcome::GoodTree { tree, trace });
        }
        let view = claims::TreeView::new(g, &tree);
        let Some(violation) = claims::first_violation(&view) else {
            let certificate = build_certificate(g, &tree, k, m)?;
            return Ok(Outcome::HypothesisViolation { certificate, tree, trace });
        };
        let mv = moves::derive(&view, &violation)?;
        let next = apply_move(g, &tree, &mv)?;
        let record = MoveRecord {
            before: potential(&tree),
            after: potential(&next),
            leaves: next.leaves().len(),
            branches: next.branch_vertices().len(),
            mv,
        };
        log::debug!("{record}");
        trace.push(record);
        if trace.len() > budget {
            return Err(EngineError::MoveBudgetExceeded { budget });
        }
        tree = next;
    }
}
