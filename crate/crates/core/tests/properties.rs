mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stemforge_core::engine::{check_claims, improve, improve_from, Outcome};
use stemforge_core::graph::{
    independence_number, induced, is_connected, is_k1r_free, parse_auto, parse_edge_list, parse_graph6, sigma_p,
    write_edge_list, write_graph6, Graph, SigmaValue,
};
use stemforge_core::oracle::{
    count_spanning_trees, extremes_by_enumeration, hamiltonian_path, kirchhoff, min_leaf_branch,
};
use stemforge_core::tree::{ParentArray, SpanningTree};

use common::random_spanning_tree;

/// Connected graph on `n` vertices: a random recursive tree (each vertex
/// `i > 0` joined to some earlier vertex) plus arbitrary extra edges.
fn connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let parents: Vec<BoxedStrategy<usize>> = (1..n).map(|i| (0..i).boxed()).collect();
        (Just(n), parents, proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)).prop_map(|(n, parents, extra)| {
            let mut edges = BTreeSet::new();
            for (i, p) in parents.into_iter().enumerate() {
                edges.insert((p, i + 1));
            }
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            for (pair, keep) in pairs.zip(extra) {
                if keep {
                    edges.insert(pair);
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn any_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

fn graph_and_tree(max_n: usize) -> impl Strategy<Value = (Graph, SpanningTree)> {
    (connected_graph(max_n), any::<u64>()).prop_map(|(g, seed)| {
        let t = random_spanning_tree(&g, &mut ChaCha8Rng::seed_from_u64(seed));
        (g, t)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn oblique_degree_identity((g, t) in graph_and_tree(12)) {
        for v in g.vertices() {
            let count = t.edges().filter(|&e| t.is_oblique_neighbor(&g, v, e).unwrap()).count();
            prop_assert_eq!(count, g.degree(v));
        }
    }

    #[test]
    fn leaf_identity((g, t) in graph_and_tree(14)) {
        prop_assert!(t.leaf_identity_holds());
        prop_assert_eq!(t.edges().count(), g.order() - 1);
    }

    #[test]
    fn far_endpoint_is_one_end((g, t) in graph_and_tree(10)) {
        for e in t.edges() {
            prop_assert_eq!(t.far_endpoint(e, e.0).unwrap(), e.1);
            prop_assert_eq!(t.far_endpoint(e, e.1).unwrap(), e.0);
            for v in g.vertices() {
                let far = t.far_endpoint(e, v).unwrap();
                let near = if far == e.0 { e.1 } else { e.0 };
                let d = t.distances_from(v);
                prop_assert_eq!(d[far], d[near] + 1);
            }
        }
    }

    #[test]
    fn tree_paths_reverse((g, t) in graph_and_tree(10), a in any::<prop::sample::Index>(), b in any::<prop::sample::Index>()) {
        let (u, v) = (a.index(g.order()), b.index(g.order()));
        let forward = t.tree_path(u, v).unwrap();
        let mut backward = t.tree_path(v, u).unwrap();
        backward.reverse();
        prop_assert_eq!(&forward, &backward);
        prop_assert_eq!((forward[0], *forward.last().unwrap()), (u, v));
        prop_assert!(forward.windows(2).all(|w| t.contains_edge(w[0], w[1])));
        if u != v {
            prop_assert_eq!(t.step_toward(u, v).unwrap(), forward[1]);
        }
    }

    #[test]
    fn stem_contains_branches_and_is_connected((g, t) in graph_and_tree(14)) {
        let branches = t.branch_vertices();
        if branches.is_empty() {
            prop_assert!(t.reducible_stem().is_err());
        } else {
            let stem = t.reducible_stem().unwrap();
            prop_assert!(branches.iter().all(|b| stem.contains(b)));
            prop_assert!(t.leaves().iter().all(|l| !stem.contains(l)));
            let verts: Vec<usize> = stem.iter().copied().collect();
            let tree_graph = Graph::from_edges(g.order(), t.edges()).unwrap();
            let (sub, _) = induced(&tree_graph, &verts).unwrap();
            prop_assert!(is_connected(&sub));
            // Removing the legs removes exactly the non-stem vertices.
            let legs: usize = t.leaves().iter().map(|&l| t.leg(l).unwrap().len()).sum();
            prop_assert_eq!(legs + stem.len(), g.order());
        }
    }

    #[test]
    fn parent_array_round_trip((g, t) in graph_and_tree(12)) {
        let text = ParentArray::from(&t).to_string();
        let back: ParentArray = text.parse().unwrap();
        prop_assert_eq!(SpanningTree::from_parents(&g, &back.0).unwrap(), t);
    }

    #[test]
    fn formats_round_trip(g in any_graph(70)) {
        prop_assert_eq!(&parse_edge_list(&write_edge_list(&g)).unwrap(), &g);
        prop_assert_eq!(&parse_graph6(&write_graph6(&g)).unwrap(), &g);
        prop_assert_eq!(&parse_auto(&write_graph6(&g)).unwrap(), &g);
        prop_assert_eq!(&parse_auto(&write_edge_list(&g)).unwrap(), &g);
    }

    #[test]
    fn sigma_is_monotone_and_bounded(g in any_graph(9)) {
        let alpha = independence_number(&g);
        let mut prev = SigmaValue::Finite(0);
        for p in 1..=alpha + 1 {
            let s = sigma_p(&g, p).unwrap();
            prop_assert!(s >= prev);
            prop_assert_eq!(s == SigmaValue::Infinite, p > alpha);
            prev = s;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn kirchhoff_matches_enumeration(g in connected_graph(7)) {
        let count = count_spanning_trees(&g).unwrap();
        prop_assert_eq!(kirchhoff::spanning_tree_count::<i128>(&g), count as i128);
        prop_assert_eq!(stemforge_core::tree_count_big(&g), count.into());
    }

    #[test]
    fn min_two_iff_hamiltonian_path(g in connected_graph(7)) {
        prop_assume!(g.order() >= 2);
        let exact = extremes_by_enumeration(&g).unwrap();
        prop_assert_eq!(exact.min_leaf_branch == 2, hamiltonian_path(&g).is_some());
        prop_assert_eq!(min_leaf_branch(&g).unwrap().0, exact.min_leaf_branch);
        prop_assert!(exact.min_leaves <= exact.min_leaf_branch);
    }

    #[test]
    fn improve_is_sound((g, start) in graph_and_tree(11), k in 0usize..3, dm in 0usize..4) {
        prop_assume!(is_k1r_free(&g, 4).unwrap());
        let m = dm.min(k + 1);
        let n = g.order();
        let hypothesis = sigma_p(&g, m + 2).unwrap().at_least(n.saturating_sub(k));
        for out in [improve(&g, k, m).unwrap(), improve_from(&g, start, k, m).unwrap()] {
            prop_assert!(out.trace().len() <= n * n);
            prop_assert!(out.trace().iter().all(|r| r.after < r.before));
            match out {
                Outcome::GoodTree { tree, .. } => prop_assert!(tree.leaf_branch_count() <= m + k + 2),
                Outcome::HypothesisViolation { certificate, tree, .. } => {
                    prop_assert!(!hypothesis);
                    prop_assert!(certificate.verify(&g));
                    prop_assert!(check_claims(&g, &tree).is_none());
                    prop_assert!(sigma_p(&g, m + 2).unwrap() <= SigmaValue::Finite(n - 1 - k));
                }
            }
        }
    }

    #[test]
    fn violations_verify((g, t) in graph_and_tree(11)) {
        if let Some(v) = check_claims(&g, &t) {
            prop_assert!(v.verify(&g, &t));
        }
    }
}
