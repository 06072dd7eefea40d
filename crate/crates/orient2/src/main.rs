use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use orient2::exact::{exists_diam2_orientation, SearchStatus, DEFAULT_EDGE_BUDGET};
use orient2::extremal::{asymptotics_table, build_gk_with_cap, find_witness};
use orient2::graph::{parse_graph, random_graph_with_min_degree, serialize_graph, Graph};
use orient2::orientation::{parse_orientation, serialize_orientation, DEFAULT_REPORT_LIMIT};
use orient2::random::{
    derive_seed, expected_violations, las_vegas_orient, random_orientation, threshold_for_graph,
    LasVegasResult, DEFAULT_MAX_ATTEMPTS,
};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1; // proven impossible / none exists / diameter > 2
const EXIT_INCONCLUSIVE: u8 = 2; // exhausted / limit reached
const EXIT_USAGE: u8 = 3; // bad parameters, I/O, parse failures

#[derive(Parser)]
#[command(name = "orient2", version, about = "Diameter-two orientation toolkit")]
struct Cli {
    /// Worker threads (default: available cores; env ORIENT2_WORKERS)
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Output format for reports
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph instance
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Print order, size, min degree, diameter, and threshold data
    Stats { graph: PathBuf },
    /// Search for a diameter-two orientation
    Orient(OrientArgs),
    /// Check an orientation file against its graph
    Check { graph: PathBuf, orientation: PathBuf },
    /// Verify the extremal family G_k
    VerifyGk(VerifyGkArgs),
    /// Scan the large-k inequality chain, emitting CSV
    Asymptotics {
        #[arg(long, default_value_t = 1)]
        k_min: u64,
        #[arg(long)]
        k_max: u64,
        #[arg(long, default_value_t = 1)]
        stride: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// The extremal construction G_k
    Gk {
        #[arg(long)]
        k: usize,
        /// Instance cap on k
        #[arg(long, default_value_t = orient2::extremal::DEFAULT_MAX_K)]
        max_k: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Independent-edge random graph, resampled to a min-degree target
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        min_degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        max_tries: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Args)]
struct OrientArgs {
    graph: PathBuf,
    #[arg(long, value_enum)]
    method: Method,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_MAX_ATTEMPTS)]
    max_attempts: usize,
    #[arg(long, default_value_t = DEFAULT_EDGE_BUDGET)]
    edge_budget: usize,
    /// Where to write the found orientation
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    LasVegas,
    Exact,
}

#[derive(Args)]
struct VerifyGkArgs {
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum)]
    mode: GkMode,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_EDGE_BUDGET)]
    edge_budget: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum GkMode {
    Brute,
    Witness,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap handles --help/--version with success
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(EXIT_USAGE);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let workers = cli.workers.or_else(|| {
        std::env::var("ORIENT2_WORKERS")
            .ok()
            .and_then(|v| v.parse().ok())
    });
    if let Some(w) = workers {
        if rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .is_err()
        {
            eprintln!("warning: thread pool already initialized");
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn load_graph(path: &PathBuf) -> Result<Graph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_graph(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn emit<T: Serialize>(format: Format, json_value: &T, text: String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string(json_value).unwrap()),
        Format::Text => print!("{text}"),
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    let format = cli.format;
    match cli.command {
        Command::Gen { kind } => cmd_gen(kind, format),
        Command::Stats { graph } => cmd_stats(&graph, format),
        Command::Orient(args) => cmd_orient(args, format),
        Command::Check { graph, orientation } => cmd_check(&graph, &orientation, format),
        Command::VerifyGk(args) => cmd_verify_gk(args, format),
        Command::Asymptotics {
            k_min,
            k_max,
            stride,
            output,
        } => cmd_asymptotics(k_min, k_max, stride, output),
    }
}

fn cmd_gen(kind: GenKind, format: Format) -> Result<u8, String> {
    let (graph, path, header) = match kind {
        GenKind::Gk { k, max_k, output } => {
            let (g, desc) = build_gk_with_cap(k, max_k).map_err(|e| e.to_string())?;
            let header = format!(
                "# G_k extremal construction: k={} N={} n={}\n\
                 # H1=[{}..{}) H2=[{}..{}) H3=[{}..{})\n\
                 # v_S = rank(S), w_S = {} + rank(S); 2k-subsets of H2 ranked lexicographically\n",
                k,
                desc.n_subsets,
                desc.vertex_count,
                desc.h1_range.start,
                desc.h1_range.end,
                desc.h2_range.start,
                desc.h2_range.end,
                desc.h3_range.start,
                desc.h3_range.end,
                desc.h3_range.start,
            );
            (g, output, header)
        }
        GenKind::Random {
            n,
            p,
            min_degree,
            seed,
            max_tries,
            output,
        } => {
            if !(p > 0.0 && p <= 1.0) || min_degree >= n {
                return Err("need 0 < p <= 1 and min_degree < n".to_string());
            }
            let g = match random_graph_with_min_degree(n, p, min_degree, seed, max_tries) {
                Ok(g) => g,
                Err(e) => {
                    eprintln!("{e}");
                    return Ok(EXIT_INCONCLUSIVE);
                }
            };
            let header = format!("# random graph: n={n} p={p} min_degree>={min_degree} seed={seed}\n");
            (g, output, header)
        }
    };
    let text = format!("{header}{}", serialize_graph(&graph));
    fs::write(&path, text).map_err(|e| format!("{}: {e}", path.display()))?;
    let (n, m, delta) = (graph.vertex_count(), graph.edge_count(), graph.min_degree());
    emit(
        format,
        &json!({
            "tool": "orient2", "version": env!("CARGO_PKG_VERSION"),
            "n": n, "m": m, "min_degree": delta, "path": path.display().to_string(),
        }),
        format!("n = {n}\nm = {m}\nmin_degree = {delta}\nwritten to {}\n", path.display()),
    );
    Ok(EXIT_OK)
}

fn cmd_stats(path: &PathBuf, format: Format) -> Result<u8, String> {
    let g = load_graph(path)?;
    let threshold = threshold_for_graph(&g);
    let mu = expected_violations(&g);
    let diam = g.underlying_diameter();
    emit(
        format,
        &json!({
            "tool": "orient2", "version": env!("CARGO_PKG_VERSION"),
            "n": g.vertex_count(), "m": g.edge_count(),
            "min_degree": g.min_degree(),
            "underlying_diameter": diam,
            "mu": mu,
            "f_n": threshold.f_n,
            "threshold": threshold.sufficient_threshold,
            "mu_bound": threshold.mu_bound,
            "hypothesis_met": threshold.hypothesis_met,
        }),
        format!(
            "n = {}\nm = {}\nmin_degree = {}\nunderlying_diameter = {}\n\
             mu = {}\nthreshold = {}\nhypothesis_met = {}\n",
            g.vertex_count(),
            g.edge_count(),
            g.min_degree(),
            diam.map_or("infinite".to_string(), |d| d.to_string()),
            mu,
            threshold.sufficient_threshold,
            threshold.hypothesis_met.unwrap(),
        ),
    );
    Ok(EXIT_OK)
}

fn write_orientation(path: &Option<PathBuf>, d: &orient2::Orientation) -> Result<(), String> {
    if let Some(p) = path {
        fs::write(p, serialize_orientation(d)).map_err(|e| format!("{}: {e}", p.display()))?;
    }
    Ok(())
}

fn cmd_orient(args: OrientArgs, format: Format) -> Result<u8, String> {
    let g = load_graph(&args.graph)?;
    let start = Instant::now();
    match args.method {
        Method::LasVegas => {
            let out = las_vegas_orient(&g, args.max_attempts, args.seed);
            let (status, reason, code) = match &out.result {
                LasVegasResult::Found => ("found", None, EXIT_OK),
                LasVegasResult::Impossible { reason } => {
                    ("impossible", Some(reason.clone()), EXIT_NEGATIVE)
                }
                LasVegasResult::Exhausted => ("exhausted", None, EXIT_INCONCLUSIVE),
            };
            if let Some(d) = &out.orientation {
                write_orientation(&args.output, d)?;
            }
            emit(
                format,
                &json!({
                    "tool": "orient2", "version": env!("CARGO_PKG_VERSION"),
                    "method": "las_vegas",
                    "n": g.vertex_count(), "m": g.edge_count(),
                    "min_degree": g.min_degree(),
                    "mu": expected_violations(&g),
                    "result": status, "reason": reason,
                    "attempts": out.attempts_used, "seed": out.seed,
                    "wall_time_ms": start.elapsed().as_millis() as u64,
                }),
                format!(
                    "result = {status}{}\nattempts = {}\nseed = {}\n",
                    reason.as_deref().map_or(String::new(), |r| format!(" ({r})")),
                    out.attempts_used,
                    out.seed
                ),
            );
            Ok(code)
        }
        Method::Exact => {
            let out = exists_diam2_orientation(&g, args.edge_budget);
            let (status, code) = match out.status {
                SearchStatus::Found => ("found", EXIT_OK),
                SearchStatus::NoneExists => ("none_exists", EXIT_NEGATIVE),
                SearchStatus::LimitReached => ("limit_reached", EXIT_INCONCLUSIVE),
            };
            if let Some(d) = &out.orientation {
                write_orientation(&args.output, d)?;
            }
            emit(
                format,
                &json!({
                    "tool": "orient2", "version": env!("CARGO_PKG_VERSION"),
                    "method": "exact",
                    "n": g.vertex_count(), "m": g.edge_count(),
                    "status": status,
                    "nodes_explored": out.nodes_explored,
                    "edge_budget": out.edge_budget,
                    "wall_time_ms": start.elapsed().as_millis() as u64,
                }),
                format!(
                    "status = {status}\nnodes_explored = {}\nedge_budget = {}\n",
                    out.nodes_explored, out.edge_budget
                ),
            );
            Ok(code)
        }
    }
}

fn cmd_check(graph: &PathBuf, orientation: &PathBuf, format: Format) -> Result<u8, String> {
    let g = load_graph(graph)?;
    let text =
        fs::read_to_string(orientation).map_err(|e| format!("{}: {e}", orientation.display()))?;
    let d = parse_orientation(&g, &text).map_err(|e| format!("{}: {e}", orientation.display()))?;
    let report = d.violation_report(DEFAULT_REPORT_LIMIT);
    let diam = d.diameter();
    let ok = matches!(diam, Some(x) if x <= 2);
    emit(
        format,
        &json!({
            "tool": "orient2", "version": env!("CARGO_PKG_VERSION"),
            "diameter": diam,
            "strong": d.is_strong(),
            "x_count": report.x_count,
            "far_count": report.far_count,
            "diameter_two": ok,
        }),
        format!(
            "diameter = {}\nstrong = {}\nX = {}\nfar_pairs = {}\n",
            diam.map_or("infinite".to_string(), |x| x.to_string()),
            d.is_strong(),
            report.x_count,
            report.far_count
        ),
    );
    Ok(if ok { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_verify_gk(args: VerifyGkArgs, format: Format) -> Result<u8, String> {
    let (g, desc) = build_gk_with_cap(args.k, orient2::extremal::DEFAULT_MAX_K)
        .map_err(|e| e.to_string())?;
    let start = Instant::now();
    match args.mode {
        GkMode::Brute => {
            if g.edge_count() > args.edge_budget {
                return Err(format!(
                    "G_{} has {} edges, over the budget of {}",
                    args.k,
                    g.edge_count(),
                    args.edge_budget
                ));
            }
            let out = exists_diam2_orientation(&g, args.edge_budget);
            let (status, code) = match out.status {
                SearchStatus::NoneExists => ("none_exists", EXIT_OK),
                SearchStatus::Found => ("found", EXIT_NEGATIVE),
                SearchStatus::LimitReached => ("limit_reached", EXIT_INCONCLUSIVE),
            };
            emit(
                format,
                &json!({
                    "tool": "orient2", "version": env!("CARGO_PKG_VERSION"),
                    "mode": "brute", "k": args.k,
                    "status": status,
                    "nodes_explored": out.nodes_explored,
                    "wall_time_ms": start.elapsed().as_millis() as u64,
                }),
                format!("status = {status}\nnodes_explored = {}\n", out.nodes_explored),
            );
            Ok(code)
        }
        GkMode::Witness => {
            if args.trials == 0 {
                return Err("trials must be at least 1".to_string());
            }
            let mut verified = 0usize;
            for i in 0..args.trials {
                let d = random_orientation(&g, derive_seed(args.seed, i as u64));
                let w = find_witness(&d, &desc, None);
                let far = w.verified_distance.is_none_or(|dist| dist >= 3);
                if far {
                    verified += 1;
                }
            }
            let all = verified == args.trials;
            emit(
                format,
                &json!({
                    "tool": "orient2", "version": env!("CARGO_PKG_VERSION"),
                    "mode": "witness", "k": args.k,
                    "trials": args.trials, "verified": verified,
                    "seed": args.seed,
                    "wall_time_ms": start.elapsed().as_millis() as u64,
                }),
                format!("verified = {verified}/{}\n", args.trials),
            );
            Ok(if all { EXIT_OK } else { EXIT_NEGATIVE })
        }
    }
}

fn cmd_asymptotics(
    k_min: u64,
    k_max: u64,
    stride: u64,
    output: Option<PathBuf>,
) -> Result<u8, String> {
    if k_min < 1 || stride < 1 || k_min > k_max {
        return Err("need 1 <= k_min <= k_max and stride >= 1".to_string());
    }
    let rows = asymptotics_table(k_min, k_max, stride);
    let mut csv = String::from(
        "k,ln_nk,delta_minus_half_n,rhs_thm2,stirling_ok,intermediate_ok,gap_ok,log_inequality_ok,too_close,gap_margin\n",
    );
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            r.k,
            r.ln_nk,
            r.delta_minus_half_n,
            r.rhs_thm2,
            r.stirling_ok,
            r.intermediate_ok,
            r.gap_ok,
            r.log_inequality_ok,
            r.too_close,
            r.gap_margin
        ));
    }
    match output {
        Some(p) => fs::write(&p, csv).map_err(|e| format!("{}: {e}", p.display()))?,
        None => print!("{csv}"),
    }
    Ok(EXIT_OK)
}
