//! Exact ground truth for small graphs, and the theorem checks that compare
//! the local search against it.

mod enumerate;
mod hamilton;
pub mod kirchhoff;
mod sweep;

use std::ops::ControlFlow;

use serde::Serialize;
use thiserror::Error;

use crate::engine::{improve, initial_tree, potential, Certificate, Outcome};
use crate::graph::{is_connected, is_k1r_free, sigma_p, write_graph6, Graph, SigmaValue};
use crate::tree::{ParentArray, SpanningTree};

pub use enumerate::{count_spanning_trees, enumerate_spanning_trees, for_each_spanning_tree};
pub use hamilton::{hamiltonian_path, HAMILTON_DP_LIMIT};
pub use sweep::{
    persist_counterexamples, sweep_exhaustive, sweep_random, Counterexample, SweepConfig, SweepReport,
    EXHAUSTIVE_ORDER_LIMIT,
};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph contains an induced K_{{1,4}}")]
    NotK14Free,
    #[error("need m <= k + 1, got k={k} m={m}")]
    BoundOrder { k: usize, m: usize },
    #[error("exhaustive sweep limited to n <= {limit}, got {requested}")]
    TooLarge { requested: usize, limit: usize },
    #[error("io error writing counterexamples: {0}")]
    Io(String),
}

/// Exact minima over all spanning trees, each with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeExtremes {
    pub min_leaf_branch: usize,
    pub min_leaf_branch_witness: SpanningTree,
    pub min_leaves: usize,
    pub min_leaves_witness: SpanningTree,
}

fn leaf_stats(n: usize, edges: &[(usize, usize)], deg: &mut [usize]) -> (usize, usize) {
    deg.iter_mut().for_each(|d| *d = 0);
    for &(a, b) in edges {
        deg[a] += 1;
        deg[b] += 1;
    }
    let leaves = deg[..n].iter().filter(|&&d| d == 1).count();
    let branches = deg[..n].iter().filter(|&&d| d >= 3).count();
    (leaves, branches)
}

/// Minimum `|L|+|B|` and minimum `|L|` by full enumeration.
pub fn extremes_by_enumeration(g: &Graph) -> Result<TreeExtremes, OracleError> {
    let n = g.order();
    let mut deg = vec![0; n];
    let mut best_lb: Option<(usize, Vec<(usize, usize)>)> = None;
    let mut best_l: Option<(usize, Vec<(usize, usize)>)> = None;
    for_each_spanning_tree(g, |edges| {
        let (l, b) = leaf_stats(n, edges, &mut deg);
        if best_lb.as_ref().is_none_or(|(v, _)| l + b < *v) {
            best_lb = Some((l + b, edges.to_vec()));
        }
        if best_l.as_ref().is_none_or(|(v, _)| l < *v) {
            best_l = Some((l, edges.to_vec()));
        }
        ControlFlow::Continue(())
    })?;
    let (lb, lb_edges) = best_lb.expect("a connected graph has a spanning tree");
    let (l, l_edges) = best_l.expect("a connected graph has a spanning tree");
    let build = |e: Vec<(usize, usize)>| SpanningTree::new(g, e).expect("enumerated tree");
    Ok(TreeExtremes {
        min_leaf_branch: lb,
        min_leaf_branch_witness: build(lb_edges),
        min_leaves: l,
        min_leaves_witness: build(l_edges),
    })
}

/// Same minima, short-circuited by a Hamiltonian path when one exists
/// (both minima are then 2, which no spanning tree on `n >= 2` vertices
/// can beat).
pub fn tree_extremes(g: &Graph) -> Result<TreeExtremes, OracleError> {
    if !is_connected(g) {
        return Err(OracleError::Disconnected);
    }
    if g.order() >= 2 {
        if let Some(path) = hamiltonian_path(g) {
            let tree = SpanningTree::new(g, path.windows(2).map(|w| (w[0], w[1]))).expect("Hamiltonian path");
            return Ok(TreeExtremes {
                min_leaf_branch: 2,
                min_leaf_branch_witness: tree.clone(),
                min_leaves: 2,
                min_leaves_witness: tree,
            });
        }
    }
    extremes_by_enumeration(g)
}

/// `min_T |L(T)| + |B(T)|` with an argmin.
pub fn min_leaf_branch(g: &Graph) -> Result<(usize, SpanningTree), OracleError> {
    let ex = tree_extremes(g)?;
    Ok((ex.min_leaf_branch, ex.min_leaf_branch_witness))
}

/// Graph-level facts shared by every `(k, m)` check on the same graph.
#[derive(Debug, Clone)]
pub struct GraphFacts {
    pub extremes: TreeExtremes,
    /// `sigma[p]` for `1 <= p < sigma.len()`; index 0 is unused.
    pub sigma: Vec<SigmaValue>,
}

impl GraphFacts {
    pub fn compute(g: &Graph, max_p: usize) -> Result<Self, OracleError> {
        let extremes = tree_extremes(g)?;
        let mut sigma = vec![SigmaValue::Infinite];
        sigma.extend((1..=max_p).map(|p| sigma_p(g, p).expect("p >= 1")));
        Ok(GraphFacts { extremes, sigma })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ImproveStatus {
    GoodTree,
    HypothesisViolation,
    Error,
}

/// What the local search returned for one `(k, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImproveSummary {
    pub status: ImproveStatus,
    pub leaf_branch: Option<usize>,
    pub moves: usize,
    pub certificate: Option<Certificate>,
    pub error: Option<String>,
}

/// One theorem instance: hypothesis, exact conclusion, and the local search
/// outcome, with the consistency flags between them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremRecord {
    pub k: usize,
    pub m: usize,
    pub bound: usize,
    pub sigma: SigmaValue,
    /// `σ_{m+2}(G) >= n - k`.
    pub hypothesis: bool,
    pub min_leaf_branch: usize,
    /// `min |L|+|B| <= m + k + 2`.
    pub conclusion: bool,
    pub improve: ImproveSummary,
    /// Hypothesis implies conclusion.
    pub theorem_holds: bool,
    /// A returned tree meets the bound and is no better than the exact minimum.
    pub good_tree_sound: bool,
    /// A returned certificate verifies and the hypothesis really fails.
    pub certificate_sound: bool,
    /// Every move strictly decreased the potential, at most `n^2` moves, and
    /// replaying the trace reproduces the final tree.
    pub descent_ok: bool,
    /// The leaf identity held on every tree visited by the search.
    pub leaf_identity_ok: bool,
}

impl TheoremRecord {
    pub fn all_ok(&self) -> bool {
        self.theorem_holds
            && self.good_tree_sound
            && self.certificate_sound
            && self.descent_ok
            && self.leaf_identity_ok
            && self.improve.status != ImproveStatus::Error
    }
}

/// Replays the move trace from the DFS start tree. Returns
/// `(descent_ok, leaf_identity_ok)`.
pub fn audit_trace(g: &Graph, outcome: &Outcome) -> (bool, bool) {
    match initial_tree(g) {
        Ok(start) => audit_trace_from(g, start, outcome),
        Err(_) => (false, false),
    }
}

/// Replays the move trace from `start`.
pub fn audit_trace_from(g: &Graph, start: SpanningTree, outcome: &Outcome) -> (bool, bool) {
    let mut tree = start;
    let mut identity = tree.leaf_identity_holds();
    let mut descent = outcome.trace().len() <= g.order() * g.order();
    for rec in outcome.trace() {
        let before = potential(&tree);
        let Ok(next) = crate::engine::exchange(g, &tree, &rec.mv) else { return (false, identity) };
        let after = potential(&next);
        descent &= before == rec.before && after == rec.after && after < before;
        identity &= next.leaf_identity_holds();
        tree = next;
    }
    identity &= outcome.tree().leaf_identity_holds();
    (descent && &tree == outcome.tree(), identity)
}

/// Theorem check against precomputed facts. `facts.sigma` must cover `m + 2`.
pub fn theorem_check_with(g: &Graph, k: usize, m: usize, facts: &GraphFacts) -> TheoremRecord {
    let n = g.order();
    let bound = m + k + 2;
    let sigma = facts.sigma[m + 2];
    let hypothesis = sigma.at_least(n.saturating_sub(k));
    let min = facts.extremes.min_leaf_branch;
    let conclusion = min <= bound;
    let result = improve(g, k, m);
    let (descent_ok, leaf_identity_ok) = match &result {
        Ok(outcome) => audit_trace(g, outcome),
        Err(_) => (false, false),
    };
    let (summary, good_tree_sound, certificate_sound) = match result {
        Ok(Outcome::GoodTree { tree, trace }) => {
            let value = tree.leaf_branch_count();
            let summary = ImproveSummary {
                status: ImproveStatus::GoodTree,
                leaf_branch: Some(value),
                moves: trace.len(),
                certificate: None,
                error: None,
            };
            (summary, value <= bound && value >= min, true)
        }
        Ok(Outcome::HypothesisViolation { certificate, tree, trace }) => {
            let sound = certificate.verify(g)
                && !hypothesis
                && sigma.finite().is_some_and(|s| s <= n - 1 - k)
                && certificate.degree_sum >= sigma.finite().unwrap_or(usize::MAX);
            let summary = ImproveSummary {
                status: ImproveStatus::HypothesisViolation,
                leaf_branch: Some(tree.leaf_branch_count()),
                moves: trace.len(),
                certificate: Some(certificate),
                error: None,
            };
            (summary, true, sound)
        }
        Err(e) => {
            let summary = ImproveSummary {
                status: ImproveStatus::Error,
                leaf_branch: None,
                moves: 0,
                certificate: None,
                error: Some(e.to_string()),
            };
            (summary, false, false)
        }
    };
    TheoremRecord {
        k,
        m,
        bound,
        sigma,
        hypothesis,
        min_leaf_branch: min,
        conclusion,
        improve: summary,
        theorem_holds: !hypothesis || conclusion,
        good_tree_sound,
        certificate_sound,
        descent_ok,
        leaf_identity_ok,
    }
}

fn check_theorem_input(g: &Graph, k: usize, m: usize) -> Result<(), OracleError> {
    if m > k + 1 {
        return Err(OracleError::BoundOrder { k, m });
    }
    if !is_connected(g) {
        return Err(OracleError::Disconnected);
    }
    if !is_k1r_free(g, 4).expect("r = 4") {
        return Err(OracleError::NotK14Free);
    }
    Ok(())
}

/// Evaluates hypothesis, exact conclusion and the local search for one
/// `(k, m)` on a connected `K_{1,4}`-free graph.
pub fn theorem_check(g: &Graph, k: usize, m: usize) -> Result<TheoremRecord, OracleError> {
    check_theorem_input(g, k, m)?;
    let facts = GraphFacts::compute(g, m + 2)?;
    Ok(theorem_check_with(g, k, m, &facts))
}

/// Full oracle report for one graph over `0 <= k <= k_max`, `0 <= m <= k+1`.
#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub graph6: String,
    pub n: usize,
    pub edges: usize,
    pub tree_count: u64,
    pub min_leaf_branch: usize,
    pub min_leaf_branch_witness: String,
    pub min_leaves: usize,
    pub min_leaves_witness: String,
    pub rows: Vec<TheoremRecord>,
}

pub fn oracle_report(g: &Graph, k_max: usize) -> Result<OracleReport, OracleError> {
    check_theorem_input(g, 0, 0)?;
    let facts = GraphFacts::compute(g, k_max + 3)?;
    let rows = (0..=k_max)
        .flat_map(|k| (0..=k + 1).map(move |m| (k, m)))
        .map(|(k, m)| theorem_check_with(g, k, m, &facts))
        .collect();
    let ex = &facts.extremes;
    Ok(OracleReport {
        graph6: write_graph6(g),
        n: g.order(),
        edges: g.size(),
        tree_count: kirchhoff::spanning_tree_count::<i128>(g) as u64,
        min_leaf_branch: ex.min_leaf_branch,
        min_leaf_branch_witness: ParentArray::from(&ex.min_leaf_branch_witness).to_string(),
        min_leaves: ex.min_leaves,
        min_leaves_witness: ParentArray::from(&ex.min_leaves_witness).to_string(),
        rows,
    })
}
