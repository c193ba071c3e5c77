use crate::graph::Graph;

/// Largest order accepted by the subset DP.
pub const HAMILTON_DP_LIMIT: usize = 24;

/// A Hamiltonian path as a vertex sequence, found by the Held–Karp style
/// subset DP. `None` if there is none or `n` exceeds [`HAMILTON_DP_LIMIT`].
pub fn hamiltonian_path(g: &Graph) -> Option<Vec<usize>> {
    let n = g.order();
    if n == 0 || n > HAMILTON_DP_LIMIT {
        return None;
    }
    let full = (1usize << n) - 1;
    // reach[mask] bit v: some path covers exactly `mask` and ends at v.
    let mut reach = vec![0u32; 1 << n];
    for v in 0..n {
        reach[1 << v] |= 1 << v;
    }
    let nbr: Vec<u32> = g.vertices().map(|v| g.neighbors(v).fold(0u32, |m, w| m | 1 << w)).collect();
    for mask in 1..=full {
        let ends = reach[mask];
        if ends == 0 {
            continue;
        }
        for (v, &nv) in nbr.iter().enumerate() {
            if ends >> v & 1 == 1 {
                let mut ext = nv & !(mask as u32);
                while ext != 0 {
                    let w = ext.trailing_zeros() as usize;
                    ext &= ext - 1;
                    reach[mask | 1 << w] |= 1 << w;
                }
            }
        }
    }
    if reach[full] == 0 {
        return None;
    }
    let mut end = reach[full].trailing_zeros() as usize;
    let mut mask = full;
    let mut path = vec![end];
    while mask.count_ones() > 1 {
        let prev_mask = mask & !(1 << end);
        let prev = (0..n)
            .find(|&u| reach[prev_mask] >> u & 1 == 1 && nbr[u] >> end & 1 == 1)
            .expect("DP table is consistent");
        path.push(prev);
        mask = prev_mask;
        end = prev;
    }
    path.reverse();
    Some(path)
}
