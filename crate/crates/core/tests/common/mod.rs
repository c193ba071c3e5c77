#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use stemforge_core::generators::random_graph;
use stemforge_core::graph::{is_connected, Graph};
use stemforge_core::tree::SpanningTree;

/// Uniform random spanning tree by the Aldous-Broder walk.
pub fn random_spanning_tree<R: Rng>(g: &Graph, rng: &mut R) -> SpanningTree {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut v = rng.gen_range(0..n);
    seen[v] = true;
    let mut left = n - 1;
    let mut edges = Vec::with_capacity(n - 1);
    while left > 0 {
        let nbrs: Vec<usize> = g.neighbors(v).collect();
        let w = *nbrs.choose(rng).expect("connected graph");
        if !seen[w] {
            seen[w] = true;
            left -= 1;
            edges.push((v, w));
        }
        v = w;
    }
    SpanningTree::new(g, edges).expect("walk edges form a spanning tree")
}

/// Connected Erdős–Rényi graph, resampled until connected.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    loop {
        let g = random_graph(rng, n, p);
        if is_connected(&g) {
            return g;
        }
    }
}
