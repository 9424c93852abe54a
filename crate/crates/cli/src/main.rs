use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bkmatch::cells::{decompose_pair, distinct_cells};
use bkmatch::distribution::{condition, max_matching_distribution, scaled_distribution, weighted_boundary_distribution};
use bkmatch::events::{Event, GroundSet, IncreasingEvent};
use bkmatch::graph::{enumerate_graphs_up_to, random_graph, vertex_cap};
use bkmatch::matching::enumerate_all_matchings;
use bkmatch::par::{mix_seed, ExecMode};
use bkmatch::rational::{format_rational, parse_positive};
use bkmatch::suite::{run_sweep, run_verify, SuiteConfig};
use bkmatch::verify::{sensitivity_probe_variants, verify_reimer, CheckReport, GraphVerifier, ReimerMode};
use bkmatch::{parse_graph, BipartiteGraph, Error, VertexSet};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;

#[derive(Parser)]
#[command(name = "bkmatch", version, about = "Exact BK-inequality verification for random matchings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checker suite on one graph.
    Verify(VerifyArgs),
    /// Run the checker suite over enumerated or random graphs.
    Sweep(SweepArgs),
    /// Print a boundary-set distribution.
    Dist(DistArgs),
    /// Print the switching cells of a graph.
    Cells(CellsArgs),
    /// Check Reimer's inequality on a small universe.
    Reimer(ReimerArgs),
}

#[derive(Args, Clone)]
struct SuiteArgs {
    /// Random increasing-event pairs per graph.
    #[arg(long, default_value_t = 200)]
    num_events: usize,
    /// Instances per weighted, maximum, conditioned, NA and submodularity check.
    #[arg(long, default_value_t = 100)]
    instances: usize,
    /// Graphs with at most this many vertices also get every event pair.
    #[arg(long, default_value_t = 4)]
    exhaustive_max: usize,
    /// Also verify the partition of every conditioned index.
    #[arg(long)]
    conditioned_partition: bool,
    /// Process graphs one at a time.
    #[arg(long)]
    sequential: bool,
}

impl SuiteArgs {
    fn config(&self, seed: u64) -> SuiteConfig {
        SuiteConfig {
            seed,
            event_pairs: self.num_events,
            exhaustive_max_vertices: self.exhaustive_max,
            weighted_instances: self.instances,
            maximum_instances: self.instances,
            conditioned_instances: self.instances,
            na_instances: self.instances,
            submodularity_instances: self.instances,
            conditioned_partition: self.conditioned_partition,
            exec: if self.sequential { ExecMode::Sequential } else { ExecMode::default() },
            ..SuiteConfig::default()
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EventKind {
    /// Each listed subset is a member.
    Explicit,
    /// Listed subsets generate an increasing event.
    Generators,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also run the designed-to-fail checker probe (not counted).
    #[arg(long)]
    probe_sensitivity: bool,
    /// Extra event A as a JSON list of name lists, e.g. '[["s1"],["t1","t2"]]'.
    #[arg(long, requires = "event_b")]
    event_a: Option<String>,
    #[arg(long, requires = "event_a")]
    event_b: Option<String>,
    #[arg(long, value_enum, default_value_t = EventKind::Generators)]
    event_kind: EventKind,
    /// Write the full JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    suite: SuiteArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Enumerate every labeled graph with at most this many vertices.
    #[arg(long, conflicts_with = "random")]
    max_vertices: Option<usize>,
    /// Number of seeded random graphs instead of enumeration.
    #[arg(long, requires_all = ["s", "t"])]
    random: Option<usize>,
    #[arg(long)]
    s: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long, default_value = "1/2")]
    edge_prob: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    suite: SuiteArgs,
}

#[derive(Args)]
struct DistArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Set every edge weight to this value.
    #[arg(long, conflicts_with = "max")]
    t: Option<String>,
    /// Uniform over maximum matchings.
    #[arg(long)]
    max: bool,
    /// Vertices required in B(M).
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    plus: Vec<String>,
    /// Vertices required outside B(M).
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    minus: Vec<String>,
}

#[derive(Args)]
struct CellsArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Indices of two matchings in enumeration order, e.g. 0,1.
    #[arg(long)]
    pair: Option<String>,
}

#[derive(Args)]
struct ReimerArgs {
    #[arg(long)]
    universe: usize,
    #[arg(long, conflicts_with = "samples", required_unless_present = "samples")]
    exhaustive: bool,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Failure of a command, mapped onto the exit-code contract.
enum Failure {
    /// Configuration or input problem: exit 2.
    Usage(String),
    /// A check failed: exit 1.
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::EmptyConditionedSpace | Error::Invariant(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CmdResult = Result<bool, Failure>;

fn load_graph(path: &Path) -> Result<BipartiteGraph, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(parse_graph(&text)?)
}

fn write_report(path: &Option<PathBuf>, json: &str) -> Result<(), Failure> {
    if let Some(path) = path {
        std::fs::write(path, format!("{json}\n")).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn print_tallies<'a>(tallies: impl Iterator<Item = &'a bkmatch::suite::CheckTally>) {
    for t in tallies.filter(|t| t.instances > 0) {
        let status = match (t.failures, t.empirical) {
            (0, _) => "ok",
            (_, true) => "finding",
            _ => "FAILED",
        };
        println!("  {:<24} {:>10} instances  {:>6} failures  {status}", t.check, t.instances, t.failures);
    }
}

fn parse_event(json: &str, kind: EventKind, ground: &GroundSet) -> Result<IncreasingEvent, Failure> {
    let lists: Vec<Vec<String>> =
        serde_json::from_str(json).map_err(|e| Failure::Usage(format!("event literal: {e}")))?;
    let sets = lists.iter().map(|names| ground.set_of(names)).collect::<Result<Vec<VertexSet>, _>>()?;
    Ok(match kind {
        EventKind::Generators => IncreasingEvent::upward_closure(ground.clone(), sets),
        EventKind::Explicit => IncreasingEvent::from_event(&Event::from_members(ground.clone(), sets)?)?,
    })
}

fn cmd_verify(args: VerifyArgs) -> CmdResult {
    let g = load_graph(&args.graph)?;
    let cfg = args.suite.config(args.seed);
    let mut extra: Vec<CheckReport> = Vec::new();
    if let (Some(a), Some(b)) = (&args.event_a, &args.event_b) {
        let ground = GroundSet::from_graph(&g)?;
        let (a, b) = (parse_event(a, args.event_kind, &ground)?, parse_event(b, args.event_kind, &ground)?);
        let v = GraphVerifier::new(&g)?;
        extra.push(v.check_bk(&a, &b)?);
        extra.push(v.verify_cell_chain(&a, &b)?);
        extra.push(v.check_bk_weighted(&a, &b)?);
        extra.push(v.check_bk_maximum(&a, &b)?);
    }
    let mut report = run_verify(&g, &cfg, &extra)?;
    if args.probe_sensitivity {
        report.sensitivity_probe = sensitivity_probe_variants();
    }
    println!("graph {}", g.describe());
    print_tallies(report.summary.iter());
    if args.probe_sensitivity {
        for p in &report.sensitivity_probe {
            let (lhs, rhs) = (format_rational(&p.lhs), format_rational(&p.rhs));
            println!("  probe {:<18} {lhs} {} {rhs}  holds={}", p.check, p.relation.symbol(), p.holds);
        }
    }
    write_report(&args.out, &report.to_json())?;
    if let Some(r) = report.summary.first_violation() {
        println!("first violation: {}", serde_json::to_string(r).expect("serializes"));
    }
    println!("{}", if report.passed { "PASS" } else { "FAIL" });
    Ok(report.passed)
}

fn cmd_sweep(args: SweepArgs) -> CmdResult {
    let cfg = args.suite.config(args.seed);
    let graphs = if let Some(count) = args.random {
        let (s, t) = (args.s.unwrap_or(0), args.t.unwrap_or(0));
        if s + t > vertex_cap() {
            return Err(Error::GraphTooLarge(format!("{} vertices (cap {})", s + t, vertex_cap())).into());
        }
        let p: Ratio<u64> =
            args.edge_prob.parse().map_err(|_| Failure::Usage(format!("invalid edge probability {:?}", args.edge_prob)))?;
        (0..count)
            .map(|i| random_graph(s, t, p, mix_seed(args.seed, i as u64)))
            .collect::<Result<Vec<_>, _>>()?
    } else {
        enumerate_graphs_up_to(args.max_vertices.unwrap_or(7))?
    };
    let report = run_sweep(&graphs, &cfg);
    println!("sweep over {} graphs, seed {}", report.graphs, report.seed);
    print_tallies(report.checks.iter());
    write_report(&args.out, &report.to_json())?;
    if let Some(r) = &report.first_witness {
        println!("first violation: {}", serde_json::to_string(r).expect("serializes"));
    }
    println!("{}", if report.passed { "PASS" } else { "FAIL" });
    Ok(report.passed)
}

fn cmd_dist(args: DistArgs) -> CmdResult {
    let g = load_graph(&args.graph)?;
    let d = if args.max {
        max_matching_distribution(&g)?
    } else if let Some(t) = &args.t {
        let t = parse_positive(t).ok_or_else(|| Failure::Usage(format!("invalid scale {t:?}")))?;
        scaled_distribution(&g, &t)?
    } else {
        weighted_boundary_distribution(&g)?
    };
    let d = if args.plus.is_empty() && args.minus.is_empty() {
        d
    } else {
        let plus = g.vertex_set_of(&args.plus)?;
        let minus = g.vertex_set_of(&args.minus)?;
        condition(&d, plus, minus)?
    };
    for entry in d.dump() {
        println!("{}", serde_json::to_string(&entry).expect("serializes"));
    }
    Ok(true)
}

fn cmd_cells(args: CellsArgs) -> CmdResult {
    let g = load_graph(&args.graph)?;
    let matchings = enumerate_all_matchings(&g);
    let cells = match &args.pair {
        Some(pair) => {
            let bad = || Failure::Usage(format!("invalid pair {pair:?}: expected I,J below {}", matchings.len()));
            let (i, j) = pair.split_once(',').ok_or_else(bad)?;
            let i: usize = i.trim().parse().map_err(|_| bad())?;
            let j: usize = j.trim().parse().map_err(|_| bad())?;
            let (c, d) = (matchings.get(i).ok_or_else(bad)?, matchings.get(j).ok_or_else(bad)?);
            vec![decompose_pair(c, d, &g)?.0]
        }
        None => distinct_cells(&g, &matchings)?,
    };
    for cell in &cells {
        println!("{}", serde_json::to_string(&cell.to_json(&g)).expect("serializes"));
    }
    Ok(true)
}

fn cmd_reimer(args: ReimerArgs) -> CmdResult {
    let mode = match args.samples {
        Some(samples) => ReimerMode::Sampled { samples },
        None => ReimerMode::Exhaustive,
    };
    let report = verify_reimer(args.universe, mode, args.seed)?;
    println!("{}", serde_json::to_string(&report).expect("serializes"));
    Ok(report.holds)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Dist(a) => cmd_dist(a),
        Command::Cells(a) => cmd_cells(a),
        Command::Reimer(a) => cmd_reimer(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
