//! Graph families: the extremal path-of-cliques family and seeded random
//! connected `K_{1,4}`-free graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{is_connected, is_k1r_free, Graph};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum GeneratorError {
    #[error("k = 0 is a degenerate member of the family; pass allow_degenerate to build it")]
    DegenerateK,
    #[error("clique size p must be >= 1")]
    ZeroCliqueSize,
    #[error("edge probability must lie in (0, 1), got {0}")]
    EdgeProbability(f64),
    #[error("n must be >= 1")]
    EmptyOrder,
    #[error("no connected K_{{1,4}}-free graph on {n} vertices after {tries} tries (raise the edge probability)")]
    TriesExhausted { n: usize, tries: usize },
}

/// Parameters of the extremal family: a path `x_1 .. x_{k+1}` and `k + 3`
/// cliques `D_0 .. D_{k+2}` of order `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SharpnessParams {
    pub k: usize,
    pub p: usize,
    /// Accept `k = 0` (a single hub joined to three cliques). No extremality
    /// is claimed for that case.
    pub allow_degenerate: bool,
}

impl SharpnessParams {
    pub fn new(k: usize, p: usize) -> Self {
        SharpnessParams { k, p, allow_degenerate: false }
    }

    pub fn degenerate(k: usize, p: usize) -> Self {
        SharpnessParams { k, p, allow_degenerate: true }
    }

    /// `(k + 1) + (k + 3) p`: path vertices plus all clique vertices.
    pub fn order(&self) -> usize {
        (self.k + 1) + (self.k + 3) * self.p
    }

    /// `k + 1 + (k + 2) p`, the order obtained when one clique is left out of
    /// the count. Reported next to [`order`](Self::order) when they differ.
    pub fn short_count_order(&self) -> usize {
        (self.k + 1) + (self.k + 2) * self.p
    }
}

/// Builds the family member. Vertices: path `x_1..x_{k+1}` as `0..=k`, then
/// clique `D_j` as `k + 1 + j p ..`.
///
/// Hub `x_i` is joined to all of `D_i`; `x_1` also to `D_0` and `x_{k+1}`
/// also to `D_{k+2}`.
pub fn sharpness_graph(params: SharpnessParams) -> Result<Graph, GeneratorError> {
    let SharpnessParams { k, p, allow_degenerate } = params;
    if k == 0 && !allow_degenerate {
        return Err(GeneratorError::DegenerateK);
    }
    if p == 0 {
        return Err(GeneratorError::ZeroCliqueSize);
    }
    let n = params.order();
    let mut edges = Vec::new();
    for i in 1..=k {
        edges.push((i - 1, i));
    }
    let clique = |j: usize| (k + 1 + j * p)..(k + 1 + (j + 1) * p);
    for j in 0..k + 3 {
        let members: Vec<usize> = clique(j).collect();
        for (a, &u) in members.iter().enumerate() {
            for &v in &members[a + 1..] {
                edges.push((u, v));
            }
        }
        // D_0 hangs off x_1; D_i off x_i; D_{k+2} off x_{k+1}.
        let hub = j.saturating_sub(1).min(k);
        edges.extend(members.iter().map(|&v| (hub, v)));
    }
    Ok(Graph::from_edges(n, edges).expect("family edges are distinct"))
}

/// Rejection-samples `G(n, edge_prob)` until the sample is connected and
/// `K_{1,4}`-free. Returns the graph and the number of tries used.
/// Deterministic in `seed`.
pub fn random_connected_k14_free(
    n: usize,
    edge_prob: f64,
    seed: u64,
    max_tries: usize,
) -> Result<(Graph, usize), GeneratorError> {
    if n == 0 {
        return Err(GeneratorError::EmptyOrder);
    }
    if !(edge_prob > 0.0 && edge_prob < 1.0) {
        return Err(GeneratorError::EdgeProbability(edge_prob));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for attempt in 1..=max_tries {
        let g = random_graph(&mut rng, n, edge_prob);
        if is_connected(&g) && is_k1r_free(&g, 4).expect("r = 4") {
            return Ok((g, attempt));
        }
    }
    Err(GeneratorError::TriesExhausted { n, tries: max_tries })
}

/// Erdős–Rényi sample drawn from the given generator.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, edge_prob: f64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(edge_prob))
        .collect();
    Graph::from_edges(n, edges).expect("sampled edges are distinct")
}
