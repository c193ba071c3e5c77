//! Exact, exponential-time graph invariants for small graphs.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::Serialize;

use super::{Graph, GraphError, EXACT_INVARIANT_SOFT_LIMIT};

/// `σ_p(G)`: finite minimum degree sum, or `+∞` when `α(G) < p`.
///
/// `Finite(_) < Infinite` under the derived order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaValue {
    Finite(usize),
    Infinite,
}

impl SigmaValue {
    pub fn at_least(self, bound: usize) -> bool {
        match self {
            SigmaValue::Finite(v) => v >= bound,
            SigmaValue::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            SigmaValue::Finite(v) => Some(v),
            SigmaValue::Infinite => None,
        }
    }
}

impl fmt::Display for SigmaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaValue::Finite(v) => write!(f, "{v}"),
            SigmaValue::Infinite => f.write_str("inf"),
        }
    }
}

/// An induced `K_{1,r}`: `center` is adjacent to every leaf, and the leaves
/// are pairwise nonadjacent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarWitness {
    pub center: usize,
    pub leaves: Vec<usize>,
}

impl StarWitness {
    pub fn verify(&self, g: &Graph) -> bool {
        self.leaves.iter().all(|&l| g.has_edge(self.center, l)) && is_independent(g, &self.leaves)
    }
}

/// Every vertex reachable from 0. Graphs with `n <= 1` are connected.
pub fn is_connected(g: &Graph) -> bool {
    let n = g.order();
    if n <= 1 {
        return true;
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        for v in g.neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                count += 1;
                queue.push_back(v);
            }
        }
    }
    count == n
}

pub fn is_independent(g: &Graph, set: &[usize]) -> bool {
    set.iter()
        .enumerate()
        .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !g.has_edge(u, v)))
}

/// Lexicographically smallest induced `K_{1,r}` (by center, then leaf tuple),
/// or `None` if the graph is `K_{1,r}`-free.
pub fn k1r_witness(g: &Graph, r: usize) -> Result<Option<StarWitness>, GraphError> {
    if r == 0 {
        return Err(GraphError::ZeroStarOrder);
    }
    for center in g.vertices() {
        let nbrs: Vec<usize> = g.neighbors(center).collect();
        if nbrs.len() < r {
            continue;
        }
        let mut chosen = Vec::with_capacity(r);
        if first_independent_subset(g, &nbrs, 0, r, &mut chosen) {
            return Ok(Some(StarWitness { center, leaves: chosen }));
        }
    }
    Ok(None)
}

pub fn is_k1r_free(g: &Graph, r: usize) -> Result<bool, GraphError> {
    Ok(k1r_witness(g, r)?.is_none())
}

fn first_independent_subset(g: &Graph, pool: &[usize], from: usize, r: usize, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == r {
        return true;
    }
    for i in from..pool.len() {
        if pool.len() - i < r - chosen.len() {
            return false;
        }
        let v = pool[i];
        if chosen.iter().all(|&c| !g.has_edge(c, v)) {
            chosen.push(v);
            if first_independent_subset(g, pool, i + 1, r, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

fn warn_if_large(g: &Graph, what: &str) {
    if g.order() > EXACT_INVARIANT_SOFT_LIMIT {
        log::warn!(
            "{what} on a graph with {} vertices: exact search is exponential (practical limit {EXACT_INVARIANT_SOFT_LIMIT})",
            g.order()
        );
    }
}

/// `α(G)` by branch and bound.
pub fn independence_number(g: &Graph) -> usize {
    warn_if_large(g, "independence_number");
    let candidates: Vec<usize> = g.vertices().collect();
    let mut best = 0;
    mis_branch(g, candidates, 0, &mut best);
    best
}

fn mis_branch(g: &Graph, candidates: Vec<usize>, size: usize, best: &mut usize) {
    if size + candidates.len() <= *best {
        return;
    }
    // Vertex of maximum degree inside the candidate set.
    let pick = candidates
        .iter()
        .map(|&v| (candidates.iter().filter(|&&w| g.has_edge(v, w)).count(), v))
        .max();
    match pick {
        None => *best = (*best).max(size),
        Some((0, _)) => *best = (*best).max(size + candidates.len()),
        Some((_, v)) => {
            let with_v: Vec<usize> = candidates.iter().copied().filter(|&w| w != v && !g.has_edge(v, w)).collect();
            mis_branch(g, with_v, size + 1, best);
            let without_v: Vec<usize> = candidates.into_iter().filter(|&w| w != v).collect();
            mis_branch(g, without_v, size, best);
        }
    }
}

/// `σ_p(G)` by enumerating independent `p`-sets in ascending-degree order,
/// pruned by the sum of the smallest remaining degrees.
pub fn sigma_p(g: &Graph, p: usize) -> Result<SigmaValue, GraphError> {
    if p == 0 {
        return Err(GraphError::ZeroSigmaOrder);
    }
    warn_if_large(g, "sigma_p");
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    let degrees: Vec<usize> = order.iter().map(|&v| g.degree(v)).collect();
    let mut best: Option<usize> = None;
    let mut chosen = Vec::with_capacity(p);
    sigma_branch(g, &order, &degrees, 0, p, 0, &mut chosen, &mut best);
    Ok(best.map_or(SigmaValue::Infinite, SigmaValue::Finite))
}

#[allow(clippy::too_many_arguments)]
fn sigma_branch(
    g: &Graph,
    order: &[usize],
    degrees: &[usize],
    from: usize,
    p: usize,
    sum: usize,
    chosen: &mut Vec<usize>,
    best: &mut Option<usize>,
) {
    let need = p - chosen.len();
    if need == 0 {
        *best = Some(best.map_or(sum, |b| b.min(sum)));
        return;
    }
    for i in from..order.len() {
        if order.len() - i < need {
            return;
        }
        // Degrees are sorted, so this is a lower bound for any completion.
        let bound: usize = sum + degrees[i..i + need].iter().sum::<usize>();
        if best.is_some_and(|b| bound >= b) {
            return;
        }
        let v = order[i];
        if chosen.iter().all(|&c| !g.has_edge(c, v)) {
            chosen.push(v);
            sigma_branch(g, order, degrees, i + 1, p, sum + degrees[i], chosen, best);
            chosen.pop();
        }
    }
}

/// `G[X]`, relabelled to `0..|X|` in ascending order of `X`. Also returns the
/// map from new ids to original vertices.
pub fn induced(g: &Graph, set: &[usize]) -> Result<(Graph, Vec<usize>), GraphError> {
    let mut map: Vec<usize> = set.to_vec();
    map.sort_unstable();
    map.dedup();
    for &v in &map {
        g.check_vertex(v)?;
    }
    let index: BTreeMap<usize, usize> = map.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut h = Graph::empty(map.len());
    for (i, &u) in map.iter().enumerate() {
        for w in g.neighbors(u) {
            if let Some(&j) = index.get(&w) {
                if i < j {
                    h.insert_edge(i, j)?;
                }
            }
        }
    }
    Ok((h, map))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: every subset as a bitmask.
    fn sigma_by_subsets(g: &Graph, p: usize) -> SigmaValue {
        let n = g.order();
        let mut best = None;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != p {
                continue;
            }
            let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            if is_independent(g, &set) {
                let s = g.degree_sum(&set);
                best = Some(best.map_or(s, |b: usize| b.min(s)));
            }
        }
        best.map_or(SigmaValue::Infinite, SigmaValue::Finite)
    }

    fn alpha_by_subsets(g: &Graph) -> usize {
        let n = g.order();
        (0u32..(1 << n))
            .filter(|&mask| {
                let set: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                is_independent(g, &set)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    #[test]
    fn connectivity_examples() {
        assert!(is_connected(&Graph::path(3)));
        assert!(!is_connected(&Graph::empty(2)));
        assert!(is_connected(&Graph::empty(1)));
        assert!(is_connected(&Graph::empty(0)));
    }

    #[test]
    fn star_witness() {
        let w = k1r_witness(&Graph::star(4), 4).unwrap().unwrap();
        assert_eq!(w, StarWitness { center: 0, leaves: vec![1, 2, 3, 4] });
        assert!(w.verify(&Graph::star(4)));
        assert!(is_k1r_free(&Graph::cycle(5), 3).unwrap());
        assert_eq!(k1r_witness(&Graph::cycle(5), 0), Err(GraphError::ZeroStarOrder));
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(independence_number(&Graph::cycle(5)), 2);
        assert_eq!(independence_number(&Graph::complete(4)), 1);
        assert_eq!(independence_number(&Graph::empty(0)), 0);
        assert_eq!(independence_number(&Graph::empty(3)), 3);
    }

    #[test]
    fn sigma_examples() {
        let c5 = Graph::cycle(5);
        assert_eq!(sigma_p(&c5, 2), Ok(SigmaValue::Finite(4)));
        assert_eq!(sigma_p(&c5, 3), Ok(SigmaValue::Infinite));
        assert_eq!(sigma_p(&c5, 0), Err(GraphError::ZeroSigmaOrder));
        assert!(SigmaValue::Finite(1_000) < SigmaValue::Infinite);
    }

    #[test]
    fn induced_examples() {
        let (h, map) = induced(&Graph::complete(4), &[1, 3]).unwrap();
        assert_eq!((h.order(), h.size(), map), (2, 1, vec![1, 3]));
        let (h, _) = induced(&Graph::cycle(5), &[]).unwrap();
        assert_eq!(h.order(), 0);
        let (h, _) = induced(&Graph::cycle(5), &[2, 3, 4]).unwrap();
        assert_eq!(h, Graph::path(3));
        assert!(induced(&Graph::cycle(5), &[7]).is_err());
    }

    fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        (0u32..(1 << pairs.len())).map(move |mask| {
            Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e))
                .unwrap()
        })
    }

    #[test]
    fn sigma_and_alpha_agree_with_subset_enumeration() {
        for n in 0..=5 {
            for g in all_graphs(n) {
                let alpha = independence_number(&g);
                assert_eq!(alpha, alpha_by_subsets(&g));
                for p in 1..=n + 1 {
                    let s = sigma_p(&g, p).unwrap();
                    assert_eq!(s, sigma_by_subsets(&g, p));
                    assert_eq!(s == SigmaValue::Infinite, p > alpha);
                }
            }
        }
    }

    #[test]
    fn star_freeness_is_monotone_and_witnesses_verify() {
        for g in all_graphs(5) {
            for r in 1..=4 {
                match k1r_witness(&g, r).unwrap() {
                    Some(w) => {
                        assert!(w.verify(&g));
                        assert_eq!(w.leaves.len(), r);
                    }
                    None => assert!(is_k1r_free(&g, r + 1).unwrap()),
                }
            }
        }
    }
}
