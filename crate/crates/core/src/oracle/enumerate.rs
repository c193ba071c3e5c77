use std::ops::ControlFlow;

use crate::graph::{is_connected, Graph};
use crate::tree::{Dsu, Edge, SpanningTree};

use super::OracleError;

/// Visits every spanning tree exactly once as a sorted edge slice.
///
/// Edges are decided in lexicographic order: an edge is included when it
/// joins two components and excluded only when the remaining edges can still
/// connect the graph, so every leaf of the recursion is a spanning tree.
pub fn for_each_spanning_tree<F>(g: &Graph, mut visit: F) -> Result<(), OracleError>
where
    F: FnMut(&[Edge]) -> ControlFlow<()>,
{
    if !is_connected(g) {
        return Err(OracleError::Disconnected);
    }
    let n = g.order();
    let edges: Vec<Edge> = g.edges().collect();
    let mut chosen = Vec::with_capacity(n.saturating_sub(1));
    let comp: Vec<usize> = (0..n).collect();
    let _ = recurse(n, &edges, 0, &comp, &mut chosen, &mut visit);
    Ok(())
}

/// `comp[v]` is the representative vertex of `v`'s component among the
/// chosen edges.
fn recurse<F>(
    n: usize,
    edges: &[Edge],
    idx: usize,
    comp: &[usize],
    chosen: &mut Vec<Edge>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[Edge]) -> ControlFlow<()>,
{
    if chosen.len() + 1 >= n {
        return visit(chosen);
    }
    let Some(&(u, v)) = edges.get(idx) else { return ControlFlow::Continue(()) };
    let (cu, cv) = (comp[u], comp[v]);
    if cu != cv {
        let merged: Vec<usize> = comp.iter().map(|&c| if c == cv { cu } else { c }).collect();
        chosen.push((u, v));
        let flow = recurse(n, edges, idx + 1, &merged, chosen, visit);
        chosen.pop();
        flow?;
    }
    if still_connectable(n, comp, &edges[idx + 1..]) {
        recurse(n, edges, idx + 1, comp, chosen, visit)?;
    }
    ControlFlow::Continue(())
}

fn still_connectable(n: usize, comp: &[usize], rest: &[Edge]) -> bool {
    let mut dsu = Dsu::new(n);
    let mut parts = {
        let mut labels: Vec<usize> = comp.to_vec();
        labels.sort_unstable();
        labels.dedup();
        labels.len()
    };
    for (v, &c) in comp.iter().enumerate() {
        dsu.union(v, c);
    }
    for &(a, b) in rest {
        if dsu.union(a, b) {
            parts -= 1;
            if parts == 1 {
                return true;
            }
        }
    }
    parts == 1
}

/// All spanning trees, materialised. Meant for small graphs.
pub fn enumerate_spanning_trees(g: &Graph) -> Result<Vec<SpanningTree>, OracleError> {
    let mut out = Vec::new();
    for_each_spanning_tree(g, |edges| {
        out.push(SpanningTree::new(g, edges.iter().copied()).expect("enumerated edge set is a spanning tree"));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

pub fn count_spanning_trees(g: &Graph) -> Result<u64, OracleError> {
    let mut count = 0u64;
    for_each_spanning_tree(g, |_| {
        count += 1;
        ControlFlow::Continue(())
    })?;
    Ok(count)
}
