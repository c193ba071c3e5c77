use serde::Serialize;

use super::claims::{first_violation, TreeView};
use super::EngineError;
use crate::graph::{is_independent, Graph};
use crate::tree::SpanningTree;

/// Witness that `σ_{m+2}(G) <= n - 1 - k`.
///
/// `independent_set` holds the `m + 2` smallest leaves of a stalled tree;
/// `uncovered_edges` (h) counts tree edges with no oblique neighbor in it.
/// Since the leaves are pseudoindependent, every other tree edge has exactly
/// one oblique neighbor in the set, so `degree_sum = n - 1 - h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub independent_set: Vec<usize>,
    pub uncovered_edges: usize,
    pub degree_sum: usize,
    pub n: usize,
    pub k: usize,
    pub m: usize,
}

impl Certificate {
    /// `n - 1 - k`, the bound the certificate places on `σ_{m+2}(G)`.
    pub fn sigma_bound(&self) -> usize {
        self.n - 1 - self.k
    }

    /// Re-checks the certificate against `G` alone.
    pub fn verify(&self, g: &Graph) -> bool {
        let s = &self.independent_set;
        self.n == g.order()
            && s.len() == self.m + 2
            && s.iter().all(|&v| v < g.order())
            && is_independent(g, s)
            && g.degree_sum(s) == self.degree_sum
            && self.uncovered_edges >= self.k
            && self.degree_sum + self.k < self.n
    }
}

/// Builds the certificate for a tree on which all six predicates hold while
/// `|L(T)| + |B(T)| >= m + k + 3`.
///
/// The count of uncovered edges is at least `(|L| - m - 2) + (|B| - 1)`:
/// pendant edges of leaves outside the set, plus one edge per
/// branch-to-branch path. This needs only `|L(T)| >= m + 2`, which follows
/// from `|L| >= |B| + 2` and `m <= k + 1`.
pub fn build_certificate(g: &Graph, t: &SpanningTree, k: usize, m: usize) -> Result<Certificate, EngineError> {
    let pre = EngineError::CertificatePrecondition;
    let fail = EngineError::CertificateAssertion;
    if m > k + 1 {
        return Err(EngineError::BoundOrder { k, m });
    }
    let n = g.order();
    if t.order() != n {
        return Err(pre(format!("tree has {} vertices, graph has {n}", t.order())));
    }
    let lb = t.leaf_branch_count();
    if lb < m + k + 3 {
        return Err(pre(format!("|L|+|B| = {lb} already within the bound m+k+2 = {}", m + k + 2)));
    }
    let view = TreeView::new(g, t);
    if let Some(v) = first_violation(&view) {
        return Err(pre(format!("claim {} is violated: {v:?}", v.claim_id())));
    }
    let leaves = &view.leaves;
    if leaves.len() < m + 2 {
        return Err(fail(format!("only {} leaves, need m+2 = {}", leaves.len(), m + 2)));
    }
    let set: Vec<usize> = leaves[..m + 2].to_vec();
    let uncovered = t.edges().filter(|&e| set.iter().all(|&s| !view.oblique(s, e))).count();
    let branches = t.branch_vertices().len();
    let counted = leaves.len() - (m + 2) + branches - 1;
    if uncovered < counted || uncovered < k {
        return Err(fail(format!(
            "h = {uncovered}, expected at least max(k = {k}, |L|-m-2+|B|-1 = {counted})"
        )));
    }
    if !is_independent(g, &set) {
        return Err(fail(format!("leaf set {set:?} is not independent")));
    }
    let degree_sum = g.degree_sum(&set);
    if degree_sum + uncovered > n - 1 {
        return Err(fail(format!("degree sum {degree_sum} exceeds n-1-h = {}", n - 1 - uncovered)));
    }
    Ok(Certificate { independent_set: set, uncovered_edges: uncovered, degree_sum, n, k, m })
}
