//! Exhaustive and random sweeps over connected `K_{1,4}`-free graphs.

use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{theorem_check_with, GraphFacts, ImproveStatus, OracleError, TheoremRecord};
use crate::generators::random_connected_k14_free;
use crate::graph::{is_connected, is_k1r_free, write_edge_list, write_graph6, Graph};

/// Largest order the exhaustive sweep accepts (`2^{28}` labelled graphs).
pub const EXHAUSTIVE_ORDER_LIMIT: usize = 8;

const RANDOM_PROB_RANGE: (f64, f64) = (0.5, 0.9);
const RANDOM_MAX_TRIES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SweepConfig {
    pub k_max: usize,
    /// Worker threads; results do not depend on it.
    pub jobs: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { k_max: 3, jobs: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub graph6: String,
    pub edge_list: String,
    /// Record with a failed flag, or the error that prevented the check.
    pub record: Option<TheoremRecord>,
    pub error: Option<String>,
}

/// Aggregate sweep statistics. Field names are part of the output format.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub graphs_scanned: u64,
    pub connected_count: u64,
    pub k14free_count: u64,
    pub generation_failures: u64,
    pub checks_run: u64,
    pub hypothesis_holds: u64,
    pub good_trees: u64,
    pub certificates: u64,
    pub moves_total: u64,
    pub max_moves: u64,
    /// Largest `moves / n^2` numerator seen, as `(moves, n)`.
    pub worst_move_ratio: (u64, u64),
    pub counterexamples: Vec<Counterexample>,
}

impl SweepReport {
    fn merge(mut self, other: SweepReport) -> SweepReport {
        self.graphs_scanned += other.graphs_scanned;
        self.connected_count += other.connected_count;
        self.k14free_count += other.k14free_count;
        self.generation_failures += other.generation_failures;
        self.checks_run += other.checks_run;
        self.hypothesis_holds += other.hypothesis_holds;
        self.good_trees += other.good_trees;
        self.certificates += other.certificates;
        self.moves_total += other.moves_total;
        self.max_moves = self.max_moves.max(other.max_moves);
        let (a, b) = (self.worst_move_ratio, other.worst_move_ratio);
        if b.0 * a.1.max(1) * a.1.max(1) > a.0 * b.1.max(1) * b.1.max(1) {
            self.worst_move_ratio = b;
        }
        self.counterexamples.extend(other.counterexamples);
        self
    }

    pub fn counterexample_count(&self) -> usize {
        self.counterexamples.len()
    }

    /// Fixed-field text rendering.
    pub fn render(&self) -> String {
        format!(
            "graphs_scanned: {}\nconnected_count: {}\nk14free_count: {}\ngeneration_failures: {}\nchecks_run: {}\n\
             hypothesis_holds: {}\ngood_trees: {}\ncertificates: {}\nmoves_total: {}\nmax_moves: {}\ncounterexamples: {}\n",
            self.graphs_scanned,
            self.connected_count,
            self.k14free_count,
            self.generation_failures,
            self.checks_run,
            self.hypothesis_holds,
            self.good_trees,
            self.certificates,
            self.moves_total,
            self.max_moves,
            self.counterexamples.len(),
        )
    }
}

fn counterexample(g: &Graph, record: Option<TheoremRecord>, error: Option<String>) -> Counterexample {
    Counterexample { graph6: write_graph6(g), edge_list: write_edge_list(g), record, error }
}

/// All theorem checks on one graph (already scanned, connected or not).
fn check_graph(g: &Graph, k_max: usize) -> SweepReport {
    let mut rep = SweepReport { graphs_scanned: 1, ..Default::default() };
    if !is_connected(g) {
        return rep;
    }
    rep.connected_count = 1;
    if !is_k1r_free(g, 4).expect("r = 4") {
        return rep;
    }
    rep.k14free_count = 1;
    let facts = match GraphFacts::compute(g, k_max + 3) {
        Ok(f) => f,
        Err(e) => {
            rep.counterexamples.push(counterexample(g, None, Some(e.to_string())));
            return rep;
        }
    };
    let n = g.order() as u64;
    for k in 0..=k_max {
        for m in 0..=k + 1 {
            let rec = theorem_check_with(g, k, m, &facts);
            rep.checks_run += 1;
            rep.hypothesis_holds += u64::from(rec.hypothesis);
            match rec.improve.status {
                ImproveStatus::GoodTree => rep.good_trees += 1,
                ImproveStatus::HypothesisViolation => rep.certificates += 1,
                ImproveStatus::Error => {}
            }
            let moves = rec.improve.moves as u64;
            rep.moves_total += moves;
            rep.max_moves = rep.max_moves.max(moves);
            let (wm, wn) = rep.worst_move_ratio;
            if moves * wn.max(1) * wn.max(1) > wm * n * n {
                rep.worst_move_ratio = (moves, n);
            }
            if !rec.all_ok() {
                rep.counterexamples.push(counterexample(g, Some(rec), None));
            }
        }
    }
    rep
}

fn graph_from_mask(n: usize, pairs: &[(usize, usize)], mask: u64) -> Graph {
    let edges = pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e);
    Graph::from_edges(n, edges).expect("mask edges are distinct")
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool")
}

/// Every labelled graph on `1..=n_max` vertices.
pub fn sweep_exhaustive(n_max: usize, config: SweepConfig) -> Result<SweepReport, OracleError> {
    if n_max > EXHAUSTIVE_ORDER_LIMIT {
        return Err(OracleError::TooLarge { requested: n_max, limit: EXHAUSTIVE_ORDER_LIMIT });
    }
    let pool = pool(config.jobs);
    let mut total = SweepReport::default();
    for n in 1..=n_max {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let count = 1u64 << pairs.len();
        let part = pool.install(|| {
            (0..count)
                .into_par_iter()
                .map(|mask| check_graph(&graph_from_mask(n, &pairs, mask), config.k_max))
                .reduce(SweepReport::default, SweepReport::merge)
        });
        total = total.merge(part);
    }
    Ok(total)
}

/// `samples` random connected `K_{1,4}`-free graphs on `n` vertices. Sample
/// `i` uses an edge probability and generator seed drawn in sequence from
/// `seed`, so the report depends only on the arguments.
pub fn sweep_random(n: usize, samples: usize, seed: u64, config: SweepConfig) -> SweepReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let plan: Vec<(f64, u64)> = (0..samples)
        .map(|_| (rng.gen_range(RANDOM_PROB_RANGE.0..RANDOM_PROB_RANGE.1), rng.gen()))
        .collect();
    let pool = pool(config.jobs);
    pool.install(|| {
        plan.par_iter()
            .map(|&(prob, s)| match random_connected_k14_free(n, prob, s, RANDOM_MAX_TRIES) {
                Ok((g, _)) => check_graph(&g, config.k_max),
                Err(_) => SweepReport { generation_failures: 1, ..Default::default() },
            })
            .reduce(SweepReport::default, SweepReport::merge)
    })
}

/// Writes each counterexample as `NNNN.edges` (edge list) and `NNNN.json`
/// (full record). Returns the written paths.
pub fn persist_counterexamples(dir: &Path, report: &SweepReport) -> Result<Vec<PathBuf>, OracleError> {
    let io = |e: std::io::Error| OracleError::Io(e.to_string());
    if report.counterexamples.is_empty() {
        return Ok(Vec::new());
    }
    fs::create_dir_all(dir).map_err(io)?;
    let mut written = Vec::new();
    for (i, cx) in report.counterexamples.iter().enumerate() {
        let edges = dir.join(format!("{i:04}.edges"));
        fs::write(&edges, &cx.edge_list).map_err(io)?;
        let json = dir.join(format!("{i:04}.json"));
        fs::write(&json, render_counterexample(cx)).map_err(io)?;
        written.push(edges);
        written.push(json);
    }
    Ok(written)
}

fn render_counterexample(cx: &Counterexample) -> String {
    let mut out = format!("graph6: {}\n", cx.graph6);
    if let Some(e) = &cx.error {
        out.push_str(&format!("error: {e}\n"));
    }
    if let Some(r) = &cx.record {
        out.push_str(&format!("{r:#?}\n"));
    }
    out
}
