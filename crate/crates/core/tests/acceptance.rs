//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Set `STEMFORGE_ACCEPTANCE_N7=1` to extend the
//! exhaustive sweep to seven vertices (minutes).

mod common;

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stemforge_core::engine::{improve, improve_from, Outcome};
use stemforge_core::generators::{random_connected_k14_free, sharpness_graph, SharpnessParams};
use stemforge_core::graph::{is_connected, is_independent, is_k1r_free, sigma_p, Graph, SigmaValue};
use stemforge_core::oracle::{
    audit_trace, audit_trace_from, count_spanning_trees, enumerate_spanning_trees, kirchhoff, min_leaf_branch, sweep_exhaustive,
    sweep_random, SweepConfig, SweepReport,
};
use stemforge_core::tree::SpanningTree;

use common::{random_connected, random_spanning_tree};

// Every comparison below is exact integer arithmetic; nothing is
// approximated, so the pinned tolerance is zero everywhere.
const EXACT_TOLERANCE: u64 = 0;
const EXHAUSTIVE_N: usize = 6;
const EXHAUSTIVE_K_MAX: usize = 3;
const RANDOM_SWEEP: (usize, usize, u64) = (9, 500, 1);
const HAMILTON_SAMPLES: usize = 200;
const OBLIQUE_PAIRS: usize = 1000;
const KIRCHHOFF_SAMPLES: usize = 100;
const RANDOM_START_GRAPHS: usize = 1500;
/// Moves per run may not exceed `n^2`.
const MOVE_BUDGET_FACTOR: u64 = 1;

struct Gate {
    failed: usize,
}

impl Gate {
    fn report(&mut self, id: u8, name: &str, ok: bool, detail: String) {
        println!("criterion {id} [{name}]: {} - {detail}", if ok { "PASS" } else { "FAIL" });
        self.failed += usize::from(!ok);
    }
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn exhaustive_reports() -> Vec<(String, SweepReport)> {
    let cfg = SweepConfig { k_max: EXHAUSTIVE_K_MAX, jobs: jobs() };
    let mut out = Vec::new();
    let start = Instant::now();
    let rep = sweep_exhaustive(EXHAUSTIVE_N, cfg).expect("n within limit");
    out.push((format!("exhaustive n<={EXHAUSTIVE_N} ({:.1?})", start.elapsed()), rep));
    if std::env::var_os("STEMFORGE_ACCEPTANCE_N7").is_some() {
        let start = Instant::now();
        let rep = sweep_exhaustive(7, cfg).expect("n within limit");
        out.push((format!("exhaustive n<=7 ({:.1?})", start.elapsed()), rep));
    }
    let (n, samples, seed) = RANDOM_SWEEP;
    let rep = sweep_random(n, samples, seed, cfg);
    out.push((format!("random n={n} samples={samples} seed={seed}"), rep));
    out
}

/// Runs from uniformly random start trees, which need far more moves than
/// the DFS start.
#[derive(Default)]
struct RandomStarts {
    runs: u64,
    moves: u64,
    max_moves: u64,
    worst: (u64, u64),
    descent_failures: Vec<String>,
    certificates: u64,
    certificate_failures: Vec<String>,
}

fn random_starts() -> RandomStarts {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut st = RandomStarts::default();
    let mut built = 0;
    while built < RANDOM_START_GRAPHS {
        let n = rng.gen_range(5..=12);
        let prob = rng.gen_range(0.5..0.9);
        let Ok((g, _)) = random_connected_k14_free(n, prob, rng.gen(), 1000) else { continue };
        built += 1;
        let n = n as u64;
        for k in 0..=2 {
            for m in 0..=k + 1 {
                let start = random_spanning_tree(&g, &mut rng);
                let id = format!("{} k={k} m={m}", stemforge_core::graph::write_graph6(&g));
                st.runs += 1;
                let out = match improve_from(&g, start.clone(), k, m) {
                    Ok(out) => out,
                    Err(e) => {
                        st.descent_failures.push(format!("{id}: {e}"));
                        continue;
                    }
                };
                let moves = out.trace().len() as u64;
                st.moves += moves;
                st.max_moves = st.max_moves.max(moves);
                if moves * st.worst.1 * st.worst.1 >= st.worst.0 * n * n {
                    st.worst = (moves, n);
                }
                let (descent, identity) = audit_trace_from(&g, start, &out);
                if !descent || !identity || moves > MOVE_BUDGET_FACTOR * n * n {
                    st.descent_failures.push(id.clone());
                }
                match &out {
                    Outcome::GoodTree { tree, .. } => {
                        if tree.leaf_branch_count() > m + k + 2 {
                            st.descent_failures.push(format!("{id}: bound missed"));
                        }
                    }
                    Outcome::HypothesisViolation { certificate: c, .. } => {
                        st.certificates += 1;
                        let sigma = sigma_p(&g, m + 2).unwrap();
                        let n = g.order();
                        if !(c.verify(&g) && c.degree_sum <= n - 1 - k && sigma.finite().is_some_and(|s| s <= n - 1 - k)) {
                            st.certificate_failures.push(id);
                        }
                    }
                }
            }
        }
    }
    st
}

fn criterion_1(gate: &mut Gate, reports: &[(String, SweepReport)]) {
    let (label, rep) = &reports[0];
    let ok = rep.counterexample_count() == 0 && rep.checks_run > 0 && rep.graphs_scanned == 1 + 2 + 8 + 64 + 1024 + 32768;
    let mut detail = format!(
        "{label}: scanned={} k14free={} checks={} hypothesis_holds={} good_trees={} counterexamples={}",
        rep.graphs_scanned,
        rep.k14free_count,
        rep.checks_run,
        rep.hypothesis_holds,
        rep.good_trees,
        rep.counterexample_count()
    );
    for (label, rep) in &reports[1..] {
        detail.push_str(&format!("; {label}: checks={} counterexamples={}", rep.checks_run, rep.counterexample_count()));
    }
    let extra_ok = reports[1..].iter().all(|(_, r)| r.counterexample_count() == 0 && r.generation_failures == 0);
    gate.report(1, "theorem reproduction", ok && extra_ok, detail);
}

fn criterion_2(gate: &mut Gate) {
    let mut lines = Vec::new();
    let mut ok = true;
    for (k, p) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let params = SharpnessParams::new(k, p);
        let g = sharpness_graph(params).unwrap();
        let n = g.order();
        let sigma = sigma_p(&g, k + 3).unwrap();
        let (min, witness) = min_leaf_branch(&g).unwrap();
        let this = n == params.order()
            && is_connected(&g)
            && is_k1r_free(&g, 4).unwrap()
            && sigma == SigmaValue::Finite(n - k - 1)
            && min >= 2 * k + 4
            && witness.leaf_branch_count() == min;
        ok &= this;
        lines.push(format!("(k={k},p={p}) n={n} sigma_{}={sigma} (n-k-1={}) min|L|+|B|={min}", k + 3, n - k - 1));
    }
    gate.report(2, "sharpness", ok, lines.join("; "));
}

fn criterion_3(gate: &mut Gate) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut tested, mut finite_sigma, mut attempts, mut bad) = (0, 0, 0, Vec::new());
    while tested < HAMILTON_SAMPLES && attempts < 100 * HAMILTON_SAMPLES {
        attempts += 1;
        let n = rng.gen_range(6..=9);
        let prob = rng.gen_range(0.45..0.95);
        let Ok((g, _)) = random_connected_k14_free(n, prob, rng.gen(), 1000) else { continue };
        let sigma = sigma_p(&g, 3).unwrap();
        if !sigma.at_least(n) {
            continue;
        }
        tested += 1;
        finite_sigma += usize::from(sigma.finite().is_some());
        match improve(&g, 0, 1) {
            Ok(out) => {
                let t = out.tree();
                if !(out.is_good() && t.leaf_branch_count() <= 3 && t.is_hamiltonian_path() && visits_all_as_path(&g, t)) {
                    bad.push(stemforge_core::graph::write_graph6(&g));
                }
            }
            Err(e) => bad.push(e.to_string()),
        }
    }
    let ok = tested == HAMILTON_SAMPLES && bad.is_empty();
    gate.report(
        3,
        "hamiltonian path corollary",
        ok,
        format!("{tested} graphs with sigma_3 >= n ({finite_sigma} with finite sigma_3), failures={bad:?}"),
    );
}

/// Walks the tree from one leaf and checks it is a path through every vertex
/// along graph edges.
fn visits_all_as_path(g: &Graph, t: &SpanningTree) -> bool {
    let leaves = t.leaves();
    if g.order() == 1 {
        return true;
    }
    let Ok(path) = t.tree_path(leaves[0], leaves[leaves.len() - 1]) else { return false };
    path.len() == g.order() && path.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

fn criterion_4(gate: &mut Gate) {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut mismatches = 0u64;
    let mut vertices = 0;
    for i in 0..OBLIQUE_PAIRS {
        let n = 2 + i % 11;
        let prob = rng.gen_range(0.2..0.9);
        let g = random_connected(&mut rng, n, prob);
        let t = random_spanning_tree(&g, &mut rng);
        for v in g.vertices() {
            let count = t.edges().filter(|&e| t.is_oblique_neighbor(&g, v, e).unwrap()).count();
            mismatches += u64::from(count.abs_diff(g.degree(v)) as u64 > EXACT_TOLERANCE);
            vertices += 1;
        }
    }
    gate.report(
        4,
        "oblique-degree identity",
        mismatches == 0,
        format!("{OBLIQUE_PAIRS} random (G,T) pairs, {vertices} vertices, mismatches={mismatches}"),
    );
}

fn criterion_5(gate: &mut Gate, reports: &[(String, SweepReport)]) {
    // Trees visited by every sweep run are audited inside the sweep
    // (leaf_identity_ok is one of the counterexample flags).
    let sweep_ok = reports.iter().all(|(_, r)| r.counterexample_count() == 0);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut trees = 0u64;
    let mut bad = 0u64;
    for i in 0..200 {
        let n = 1 + i % 8;
        let prob = rng.gen_range(0.3..0.9);
        let g = random_connected(&mut rng, n, prob);
        for t in enumerate_spanning_trees(&g).unwrap().iter().take(500) {
            trees += 1;
            bad += u64::from(!t.leaf_identity_holds());
        }
        for _ in 0..5 {
            trees += 1;
            bad += u64::from(!random_spanning_tree(&g, &mut rng).leaf_identity_holds());
        }
    }
    for (k, p) in [(1, 1), (1, 2), (2, 1), (3, 1)] {
        let g = sharpness_graph(SharpnessParams::new(k, p)).unwrap();
        for m in 0..=k + 1 {
            let out = improve(&g, k, m).unwrap();
            let (_, identity) = audit_trace(&g, &out);
            trees += 1 + out.trace().len() as u64;
            bad += u64::from(!identity);
        }
    }
    gate.report(
        5,
        "leaf identity",
        bad == 0 && sweep_ok,
        format!("{trees} enumerated, random and search trees outside sweeps, violations={bad}; sweep audits clean={sweep_ok}"),
    );
}

fn criterion_6(gate: &mut Gate, reports: &[(String, SweepReport)], starts: &RandomStarts) {
    let mut ok = starts.descent_failures.is_empty();
    let mut parts = vec![format!(
        "{} random-start runs: moves_total={} max_moves={} worst moves/n^2={}/{} failures={:?}",
        starts.runs,
        starts.moves,
        starts.max_moves,
        starts.worst.0,
        starts.worst.1 * starts.worst.1,
        starts.descent_failures
    )];
    for (label, r) in reports {
        // descent_ok is a counterexample flag: any non-decreasing move or a
        // run over budget shows up as a counterexample.
        let (moves, n) = r.worst_move_ratio;
        let within = moves <= MOVE_BUDGET_FACTOR * n * n;
        ok &= r.counterexample_count() == 0 && within;
        parts.push(format!(
            "{label}: moves_total={} max_moves={} worst moves/n^2={moves}/{}",
            r.moves_total,
            r.max_moves,
            n * n
        ));
    }
    gate.report(6, "descent and termination", ok, parts.join("; "));
}

fn criterion_7(gate: &mut Gate, reports: &[(String, SweepReport)], starts: &RandomStarts) {
    let certificates: u64 = reports.iter().map(|(_, r)| r.certificates).sum::<u64>() + starts.certificates;
    let sweep_ok =
        reports.iter().all(|(_, r)| r.counterexample_count() == 0) && starts.certificate_failures.is_empty();
    let mut sharp_ok = true;
    let mut sharp = Vec::new();
    for (k, p) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1), (3, 2)] {
        let g = sharpness_graph(SharpnessParams::new(k, p)).unwrap();
        let n = g.order();
        let m = k + 1;
        let this = match improve(&g, k, m) {
            Ok(Outcome::HypothesisViolation { certificate: c, .. }) => {
                let sigma = sigma_p(&g, m + 2).unwrap();
                c.verify(&g)
                    && is_independent(&g, &c.independent_set)
                    && c.independent_set.len() == m + 2
                    && c.degree_sum <= n - 1 - k
                    && sigma.finite().is_some_and(|s| s <= n - 1 - k)
            }
            _ => false,
        };
        sharp_ok &= this;
        sharp.push(format!("(k={k},p={p},m={m}){}", if this { "" } else { " invalid" }));
    }
    gate.report(
        7,
        "certificate soundness",
        sweep_ok && sharp_ok,
        format!("{certificates} sweep and random-start certificates all sound={sweep_ok}; sharpness certificates {}", sharp.join(" ")),
    );
}

fn criterion_8(gate: &mut Gate) {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bad = Vec::new();
    let mut total = 0u64;
    for i in 0..KIRCHHOFF_SAMPLES {
        let n = 1 + i % 8;
        let prob = rng.gen_range(0.25..0.95);
        let g = random_connected(&mut rng, n, prob);
        let enumerated = count_spanning_trees(&g).unwrap();
        let det = kirchhoff::spanning_tree_count::<i128>(&g);
        let big = stemforge_core::tree_count_big(&g);
        total += enumerated;
        if enumerated as i128 != det || big != det.into() {
            bad.push(format!("{}: {enumerated} vs {det}", stemforge_core::graph::write_graph6(&g)));
        }
    }
    for n in 3..=10 {
        let c = Graph::cycle(n);
        if count_spanning_trees(&c).unwrap() != n as u64 || kirchhoff::spanning_tree_count::<i128>(&c) != n as i128 {
            bad.push(format!("C_{n}"));
        }
    }
    let k4 = Graph::complete(4);
    if count_spanning_trees(&k4).unwrap() != 16 || kirchhoff::spanning_tree_count::<i64>(&k4) != 16 {
        bad.push("K_4".into());
    }
    // Disconnected graphs have a zero cofactor.
    let split = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
    if kirchhoff::spanning_tree_count::<i64>(&split) != 0 {
        bad.push("disconnected".into());
    }
    gate.report(
        8,
        "oracle self-check",
        bad.is_empty(),
        format!("{KIRCHHOFF_SAMPLES} random graphs ({total} trees enumerated), C_3..C_10, K_4=16; mismatches={bad:?}"),
    );
}

fn main() -> ExitCode {
    let mut gate = Gate { failed: 0 };
    let reports = exhaustive_reports();
    let starts = random_starts();
    criterion_1(&mut gate, &reports);
    criterion_2(&mut gate);
    criterion_3(&mut gate);
    criterion_4(&mut gate);
    criterion_5(&mut gate, &reports);
    criterion_6(&mut gate, &reports, &starts);
    criterion_7(&mut gate, &reports, &starts);
    criterion_8(&mut gate);
    for (label, r) in &reports {
        for cx in r.counterexamples.iter().take(5) {
            println!("counterexample in {label}: {} {:?} {:?}", cx.graph6, cx.error, cx.record);
        }
    }
    if gate.failed == 0 {
        println!("acceptance: all 8 criteria PASS");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} criteria FAIL", gate.failed);
        ExitCode::FAILURE
    }
}
