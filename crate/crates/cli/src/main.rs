use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;

use stemforge_core::engine::{improve, Certificate, Outcome};
use stemforge_core::generators::{random_connected_k14_free, sharpness_graph, SharpnessParams};
use stemforge_core::graph::{
    independence_number, is_connected, is_k1r_free, parse_auto, sigma_p, write_edge_list, write_graph6, Graph,
    SigmaValue,
};
use stemforge_core::oracle::{
    min_leaf_branch, oracle_report, persist_counterexamples, sweep_exhaustive, sweep_random, OracleReport,
    SweepConfig, SweepReport,
};
use stemforge_core::tree::ParentArray;

const COUNTEREXAMPLE_ENV: &str = "STEMFORGE_COUNTEREXAMPLE_DIR";
const DEFAULT_COUNTEREXAMPLE_DIR: &str = "counterexamples";
/// Exit status when a sweep finds counterexamples.
const EXIT_COUNTEREXAMPLES: u8 = 3;
/// `sharpness --check` runs the exact oracle only up to this order.
const CHECK_ORACLE_LIMIT: usize = 16;

#[derive(Parser)]
#[command(name = "stemforge", version, about = "Spanning trees with few leaves and branch vertices in K_{1,4}-free graphs")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    /// Report wall-clock time on stderr.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Basic invariants: order, size, connectivity, star freeness, α, σ_p.
    Analyze {
        /// Edge-list or graph6 file, or "-" for stdin.
        input: String,
    },
    /// Run the local search for a tree with at most m+k+2 leaves and branch vertices.
    Tree {
        input: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        /// Print every applied exchange.
        #[arg(long)]
        trace: bool,
    },
    /// Exact minima and the hypothesis/conclusion table for every k <= k-max, m <= k+1.
    Oracle {
        input: String,
        #[arg(long, default_value_t = 2)]
        k_max: usize,
    },
    /// Print a member of the extremal family (path plus complete blobs).
    Sharpness {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
        /// Verify σ_{k+3} = n-k-1 and, if small enough, that no tree reaches 2k+3.
        #[arg(long)]
        check: bool,
        /// Accept k = 0 (the claw); no sharpness is asserted for it.
        #[arg(long)]
        allow_degenerate: bool,
        #[arg(long)]
        graph6: bool,
    },
    /// Print a seeded random connected K_{1,4}-free graph.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        prob: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        max_tries: usize,
        #[arg(long)]
        graph6: bool,
    },
    /// Sweep graphs and compare the local search against exact minima.
    Verify(VerifyArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["exhaustive", "random"])))]
struct VerifyArgs {
    /// Every labelled graph on up to N vertices.
    #[arg(long, value_name = "N_MAX")]
    exhaustive: Option<usize>,
    /// SAMPLES random graphs on N vertices from SEED.
    #[arg(long, num_args = 3, value_names = ["N", "SAMPLES", "SEED"])]
    random: Option<Vec<u64>>,
    #[arg(long, default_value_t = 3)]
    k_max: usize,
    /// Worker threads; the report does not depend on it.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Where to write counterexamples (default: $STEMFORGE_COUNTEREXAMPLE_DIR, then ./counterexamples).
    #[arg(long)]
    counterexample_dir: Option<PathBuf>,
}

fn read_graph(input: &str) -> Result<Graph> {
    let text = if input == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        s
    } else {
        std::fs::read_to_string(input).with_context(|| format!("reading {input}"))?
    };
    parse_auto(&text).with_context(|| format!("parsing {input}"))
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

#[derive(Serialize)]
struct SigmaRow {
    p: usize,
    sigma: SigmaValue,
}

#[derive(Serialize)]
struct AnalyzeReport {
    n: usize,
    edges: usize,
    connected: bool,
    k13_free: bool,
    k14_free: bool,
    k15_free: bool,
    alpha: usize,
    sigma: Vec<SigmaRow>,
}

fn cmd_analyze(cli: &Cli, input: &str) -> Result<ExitCode> {
    let g = read_graph(input)?;
    let alpha = independence_number(&g);
    let sigma = (1..=alpha + 1).map(|p| Ok(SigmaRow { p, sigma: sigma_p(&g, p)? })).collect::<Result<Vec<_>>>()?;
    let rep = AnalyzeReport {
        n: g.order(),
        edges: g.size(),
        connected: is_connected(&g),
        k13_free: is_k1r_free(&g, 3)?,
        k14_free: is_k1r_free(&g, 4)?,
        k15_free: is_k1r_free(&g, 5)?,
        alpha,
        sigma,
    };
    if cli.json {
        print_json(&rep)?;
    } else {
        println!("n: {}", rep.n);
        println!("edges: {}", rep.edges);
        println!("connected: {}", rep.connected);
        println!("K_1,3-free: {}", rep.k13_free);
        println!("K_1,4-free: {}", rep.k14_free);
        println!("K_1,5-free: {}", rep.k15_free);
        println!("alpha: {}", rep.alpha);
        println!("p  sigma_p");
        for row in &rep.sigma {
            println!("{:<2} {}", row.p, row.sigma);
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct TreeReport {
    status: &'static str,
    n: usize,
    k: usize,
    m: usize,
    bound: usize,
    tree: String,
    leaves: Vec<usize>,
    branch_vertices: Vec<usize>,
    moves: usize,
    trace: Vec<String>,
    certificate: Option<Certificate>,
}

fn cmd_tree(cli: &Cli, input: &str, k: usize, m: usize, trace: bool) -> Result<ExitCode> {
    let g = read_graph(input)?;
    let outcome = improve(&g, k, m)?;
    let t = outcome.tree();
    let rep = TreeReport {
        status: if outcome.is_good() { "good_tree" } else { "hypothesis_violation" },
        n: g.order(),
        k,
        m,
        bound: m + k + 2,
        tree: ParentArray::from(t).to_string(),
        leaves: t.leaves(),
        branch_vertices: t.branch_vertices(),
        moves: outcome.trace().len(),
        trace: outcome.trace().iter().map(|r| r.to_string()).collect(),
        certificate: outcome.certificate().cloned(),
    };
    if cli.json {
        print_json(&rep)?;
        return Ok(ExitCode::SUCCESS);
    }
    if trace {
        for line in &rep.trace {
            println!("{line}");
        }
    }
    println!("status: {}", rep.status);
    println!("tree: {}", rep.tree);
    println!("L={} B={} bound={}", rep.leaves.len(), rep.branch_vertices.len(), rep.bound);
    println!("moves: {}", rep.moves);
    if let Outcome::HypothesisViolation { certificate: c, .. } = &outcome {
        println!("S: {:?}", c.independent_set);
        println!("h: {}", c.uncovered_edges);
        println!("degree_sum: {}", c.degree_sum);
        println!("implied: sigma_{}(G) <= {} = n-1-k", m + 2, c.sigma_bound());
    }
    Ok(ExitCode::SUCCESS)
}

fn render_oracle(rep: &OracleReport) {
    println!("graph6: {}", rep.graph6);
    println!("n: {} edges: {}", rep.n, rep.edges);
    println!("tree_count: {}", rep.tree_count);
    println!("min_leaf_branch: {} witness {}", rep.min_leaf_branch, rep.min_leaf_branch_witness);
    println!("min_leaves: {} witness {}", rep.min_leaves, rep.min_leaves_witness);
    println!("k  m  bound  sigma_m+2  hypothesis  conclusion  improve               ok");
    for r in &rep.rows {
        let improve = match (&r.improve.leaf_branch, &r.improve.status) {
            (Some(v), s) => format!("{s:?}({v})"),
            (None, s) => format!("{s:?}"),
        };
        println!(
            "{:<2} {:<2} {:<6} {:<10} {:<11} {:<11} {:<21} {}",
            r.k,
            r.m,
            r.bound,
            r.sigma.to_string(),
            r.hypothesis,
            r.conclusion,
            improve,
            r.all_ok()
        );
    }
}

fn cmd_oracle(cli: &Cli, input: &str, k_max: usize) -> Result<ExitCode> {
    let g = read_graph(input)?;
    let rep = oracle_report(&g, k_max)?;
    if cli.json {
        print_json(&rep)?;
    } else {
        render_oracle(&rep);
    }
    let bad = rep.rows.iter().filter(|r| !r.all_ok()).count();
    Ok(if bad == 0 { ExitCode::SUCCESS } else { ExitCode::from(EXIT_COUNTEREXAMPLES) })
}

fn print_graph(g: &Graph, graph6: bool) {
    if graph6 {
        println!("{}", write_graph6(g));
    } else {
        print!("{}", write_edge_list(g));
    }
}

#[derive(Serialize)]
struct SharpnessCheck {
    k: usize,
    p: usize,
    n: usize,
    short_count_order: usize,
    graph6: String,
    connected: bool,
    k14_free: bool,
    sigma_k3: SigmaValue,
    expected_sigma: usize,
    min_leaf_branch: Option<usize>,
    passed: bool,
}

fn cmd_sharpness(cli: &Cli, k: usize, p: usize, check: bool, allow_degenerate: bool, graph6: bool) -> Result<ExitCode> {
    let params = if allow_degenerate { SharpnessParams::degenerate(k, p) } else { SharpnessParams::new(k, p) };
    let g = sharpness_graph(params)?;
    let n = g.order();
    if n != params.short_count_order() {
        eprintln!("note: order n={n} from k+3 blobs; k+1+(k+2)p would give {}", params.short_count_order());
    }
    if k == 0 {
        eprintln!("note: k=0 member; no sharpness is claimed");
    }
    if !check {
        print_graph(&g, graph6);
        return Ok(ExitCode::SUCCESS);
    }
    let sigma_k3 = sigma_p(&g, k + 3)?;
    let min = if n <= CHECK_ORACLE_LIMIT { Some(min_leaf_branch(&g)?.0) } else { None };
    let connected = is_connected(&g);
    let k14_free = is_k1r_free(&g, 4)?;
    let expected_sigma = n - k - 1;
    let passed = k == 0
        || (connected
            && k14_free
            && sigma_k3 == SigmaValue::Finite(expected_sigma)
            && min.is_none_or(|v| v >= 2 * k + 4));
    let rep = SharpnessCheck {
        k,
        p,
        n,
        short_count_order: params.short_count_order(),
        graph6: write_graph6(&g),
        connected,
        k14_free,
        sigma_k3,
        expected_sigma,
        min_leaf_branch: min,
        passed,
    };
    if cli.json {
        print_json(&rep)?;
    } else {
        println!("graph6: {}", rep.graph6);
        println!("n: {}", n);
        println!("connected: {connected}");
        println!("K_1,4-free: {k14_free}");
        println!("sigma_{}: {} (n-k-1 = {expected_sigma})", k + 3, sigma_k3);
        match min {
            Some(v) => println!("min_leaf_branch: {v} (2k+4 = {})", 2 * k + 4),
            None => println!("min_leaf_branch: skipped (n > {CHECK_ORACLE_LIMIT})"),
        }
        println!("check: {}", if passed { "pass" } else { "fail" });
    }
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_random(n: usize, prob: f64, seed: u64, max_tries: usize, graph6: bool) -> Result<ExitCode> {
    let (g, tries) = random_connected_k14_free(n, prob, seed, max_tries)?;
    log::info!("accepted after {tries} tries");
    print_graph(&g, graph6);
    Ok(ExitCode::SUCCESS)
}

fn counterexample_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os(COUNTEREXAMPLE_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_COUNTEREXAMPLE_DIR))
}

fn cmd_verify(cli: &Cli, args: &VerifyArgs) -> Result<ExitCode> {
    let cfg = SweepConfig { k_max: args.k_max, jobs: args.jobs };
    let report: SweepReport = match (&args.exhaustive, &args.random) {
        (Some(n_max), None) => sweep_exhaustive(*n_max, cfg)?,
        (None, Some(r)) => {
            let (n, samples, seed) = (r[0] as usize, r[1] as usize, r[2]);
            if n == 0 {
                bail!("--random needs N >= 1");
            }
            sweep_random(n, samples, seed, cfg)
        }
        _ => unreachable!("clap enforces exactly one mode"),
    };
    if cli.json {
        print_json(&report)?;
    } else {
        print!("{}", report.render());
    }
    if report.counterexample_count() == 0 {
        return Ok(ExitCode::SUCCESS);
    }
    let dir = counterexample_dir(args.counterexample_dir.clone());
    let written = persist_counterexamples(&dir, &report)?;
    eprintln!("wrote {} files to {}", written.len(), dir.display());
    Ok(ExitCode::from(EXIT_COUNTEREXAMPLES))
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::Analyze { input } => cmd_analyze(cli, input),
        Command::Tree { input, k, m, trace } => cmd_tree(cli, input, *k, *m, *trace),
        Command::Oracle { input, k_max } => cmd_oracle(cli, input, *k_max),
        Command::Sharpness { k, p, check, allow_degenerate, graph6 } => {
            cmd_sharpness(cli, *k, *p, *check, *allow_degenerate, *graph6)
        }
        Command::Random { n, prob, seed, max_tries, graph6 } => cmd_random(*n, *prob, *seed, *max_tries, *graph6),
        Command::Verify(args) => cmd_verify(cli, args),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let start = Instant::now();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    };
    if cli.timing {
        eprintln!("elapsed: {:.3?}", start.elapsed());
    }
    code
}
