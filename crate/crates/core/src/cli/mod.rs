//! The `lqflab` command line.
//!
//! Every command prints one canonical JSON document on stdout. Failures print
//! `{"error": {"kind", "message"}}` on stderr and exit with 2 (usage), 3 (bad
//! input), 4 (resource limit) or 1 (internal error). `verify-witness` exits
//! with 1 when a witness does not check.

mod json;

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::Error;
use crate::exactla::rational::parse_list;
use crate::graph::{InterferenceGraph, NodeSet};
use crate::limits::{Limits, DEFAULT_MAX_NODES, DEFAULT_MAX_SUBSET_NODES};
use crate::oracles::{chi_f_on, phi_f_on, tau_f_on, OracleValue};
use crate::pooling::{sigma_link, sigma_profile, sigma_set, PoolingFactor, SetFactor};
use crate::rates::RateVector;
use crate::regions::{decide, rank_report, region_report, Region, RegionVerdict};
use crate::sim::{self, ArrivalKind, SimConfig, SimSummary, TieBreaker};

pub use json::canonical;

pub const DEFAULT_HORIZON: u64 = 100_000;
pub const DEFAULT_MAX_HORIZON: u64 = 10_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "lqflab",
    version,
    about = "Exact LQF stability-region analysis on interference graphs"
)]
pub struct Cli {
    /// Add decimal approximations next to exact rationals.
    #[arg(long, global = true)]
    approx: bool,

    /// Worker threads for subset sweeps (default: available cores).
    #[arg(long, global = true, env = "LQFLAB_JOBS")]
    jobs: Option<usize>,

    /// Largest graph for schedule enumeration.
    #[arg(long, global = true, env = "LQFLAB_MAX_NODES", default_value_t = DEFAULT_MAX_NODES)]
    max_nodes: usize,

    /// Largest graph for sweeps over all subsets.
    #[arg(long, global = true, env = "LQFLAB_MAX_SUBSET_NODES", default_value_t = DEFAULT_MAX_SUBSET_NODES)]
    max_subset_nodes: usize,

    /// Longest simulation accepted.
    #[arg(long, global = true, env = "LQFLAB_MAX_HORIZON", default_value_t = DEFAULT_MAX_HORIZON)]
    max_horizon: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct RateArgs {
    /// Comma-separated rates in node order, e.g. `1/2,1/3,0`.
    #[arg(long, conflicts_with = "rates_file")]
    rates: Option<String>,

    /// File of `<node> <rate>` lines; unlisted nodes get rate 0.
    #[arg(long)]
    rates_file: Option<PathBuf>,

    /// Accept decimal rates such as `0.35` (converted exactly).
    #[arg(long)]
    decimal: bool,
}

#[derive(Debug, Args)]
struct SimArgs {
    #[arg(long, env = "LQFLAB_HORIZON", default_value_t = DEFAULT_HORIZON)]
    horizon: u64,

    #[arg(long, value_enum, default_value_t = Arrivals::Constant)]
    arrivals: Arrivals,

    #[arg(long, value_enum, default_value_t = Ties::Lex)]
    ties: Ties,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Arrivals {
    Constant,
    Bernoulli,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Ties {
    Lex,
    Random,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the maximal schedules in canonical order.
    Mis {
        graph: PathBuf,
        /// Print one 0/1 indicator row per schedule instead of JSON.
        #[arg(long)]
        rows: bool,
    },
    /// List the maximal cliques.
    Cliques { graph: PathBuf },
    /// Weighted fractional coloring number.
    Chi {
        graph: PathBuf,
        #[command(flatten)]
        rates: RateArgs,
        /// Restrict to the induced subgraph on these nodes.
        #[arg(long)]
        set: Option<String>,
    },
    /// Weighted fractional matching number.
    Phi {
        graph: PathBuf,
        #[command(flatten)]
        rates: RateArgs,
        #[arg(long)]
        set: Option<String>,
    },
    /// Weighted fractional domination number.
    Tau {
        graph: PathBuf,
        #[command(flatten)]
        rates: RateArgs,
        #[arg(long)]
        set: Option<String>,
    },
    /// Pooling factors: of one set, one link, or the whole profile.
    Sigma {
        graph: PathBuf,
        #[arg(long, conflicts_with = "link")]
        set: Option<String>,
        #[arg(long)]
        link: Option<usize>,
    },
    /// Rank of the extended schedule matrix of a set (default: all nodes).
    Rank {
        graph: PathBuf,
        #[arg(long)]
        set: Option<String>,
    },
    /// Membership of a rate vector in one region.
    Member {
        graph: PathBuf,
        #[arg(long, value_parser = parse_region)]
        region: Region,
        #[command(flatten)]
        rates: RateArgs,
    },
    /// Every region verdict, pooling factors and optional simulations.
    Report {
        graph: PathBuf,
        #[command(flatten)]
        rates: RateArgs,
        /// Also simulate LQF once per seed.
        #[arg(long = "sim-seed", value_delimiter = ',')]
        sim_seeds: Vec<u64>,
        #[command(flatten)]
        sim: SimArgs,
    },
    /// Run the LQF simulator.
    Simulate {
        graph: PathBuf,
        #[command(flatten)]
        rates: RateArgs,
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Backlog at slot 0, comma-separated.
        #[arg(long)]
        initial: Option<String>,
        /// Write the per-slot trace here.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write the schedule catalog here.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Re-check the witnesses in a JSON document printed by this tool.
    #[command(hide = true)]
    VerifyWitness {
        graph: PathBuf,
        /// JSON document, or `-` for stdin.
        witness: PathBuf,
        #[command(flatten)]
        rates: RateArgs,
        /// Subject set of an oracle witness (default: all nodes).
        #[arg(long)]
        set: Option<String>,
    },
}

fn parse_region(s: &str) -> Result<Region, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let (code, kind) = match &e {
            Error::InvalidArgument(_) => (3, "invalid_argument"),
            Error::Parse { .. } => (3, "parse"),
            Error::ResourceLimit { .. } => (4, "resource_limit"),
            Error::Internal(_) => (1, "internal"),
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure {
        code: 3,
        kind: "io",
        message: format!("{}: {e}", path.display()),
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read_text(path: &Path) -> CliResult<String> {
    if path == Path::new("-") {
        return io::read_to_string(io::stdin()).map_err(|e| io_failure(path, e));
    }
    fs::read_to_string(path).map_err(|e| io_failure(path, e))
}

fn load_graph(path: &Path) -> CliResult<InterferenceGraph> {
    Ok(InterferenceGraph::parse(&read_text(path)?)?)
}

fn load_rates(g: &InterferenceGraph, args: &RateArgs) -> CliResult<Option<RateVector>> {
    let l = match (&args.rates, &args.rates_file) {
        (Some(s), _) => RateVector::parse_inline(s, args.decimal)?,
        (None, Some(p)) => RateVector::parse_file(&read_text(p)?, g.node_count(), args.decimal)?,
        (None, None) => return Ok(None),
    };
    l.check_graph(g)?;
    Ok(Some(l))
}

fn require_rates(g: &InterferenceGraph, args: &RateArgs) -> CliResult<RateVector> {
    load_rates(g, args)?
        .ok_or_else(|| Error::invalid("a rate vector is required (--rates or --rates-file)").into())
}

fn parse_set(g: &InterferenceGraph, s: Option<&str>) -> CliResult<NodeSet> {
    let Some(s) = s else {
        return Ok(g.nodes());
    };
    let nodes = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::invalid(format!("bad node {t:?} in set")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let set = NodeSet::from_nodes(&nodes)?;
    g.check_set(set)?;
    if set.is_empty() {
        return Err(Error::invalid("empty set").into());
    }
    Ok(set)
}

#[derive(Serialize, Deserialize)]
struct OracleOutput {
    graph_digest: String,
    subject: NodeSet,
    #[serde(flatten)]
    oracle: OracleValue,
}

#[derive(Serialize)]
struct ConfigEcho {
    max_nodes: usize,
    max_subset_nodes: usize,
}

/// Full analysis of one rate vector on one graph.
#[derive(Serialize)]
pub struct AnalysisReport {
    tool_version: &'static str,
    graph_digest: String,
    nodes: usize,
    schedule_count: usize,
    #[serde(with = "crate::exactla::rational::serde_rational_vec")]
    rates: Vec<crate::Rational>,
    sigma: Value,
    regions: Vec<RegionVerdict>,
    inconsistencies: Vec<String>,
    simulations: Vec<SimSummary>,
    config: ConfigEcho,
}

fn sim_config(args: &SimArgs, seed: u64, max_horizon: u64) -> CliResult<SimConfig> {
    if args.horizon > max_horizon {
        return Err(Error::ResourceLimit {
            what: "simulation horizon",
            actual: usize::try_from(args.horizon).unwrap_or(usize::MAX),
            limit: usize::try_from(max_horizon).unwrap_or(usize::MAX),
        }
        .into());
    }
    let kind = match args.arrivals {
        Arrivals::Constant => ArrivalKind::Constant,
        Arrivals::Bernoulli => ArrivalKind::Bernoulli,
    };
    let tb = match args.ties {
        Ties::Lex => TieBreaker::Lexicographic,
        Ties::Random => TieBreaker::UniformRandom { seed },
    };
    Ok(SimConfig::new(kind, tb, args.horizon, seed))
}

fn create(path: &Path) -> CliResult<BufWriter<fs::File>> {
    fs::File::create(path)
        .map(BufWriter::new)
        .map_err(|e| io_failure(path, e))
}

fn verify_document(
    g: &InterferenceGraph,
    doc: &Value,
    rates: Option<&RateVector>,
    set: NodeSet,
) -> CliResult<Vec<(String, bool)>> {
    let need_rates = || -> CliResult<&RateVector> {
        rates.ok_or_else(|| Error::invalid("this witness needs the rate vector").into())
    };
    let bad =
        |e: serde_json::Error| Failure::from(Error::invalid(format!("malformed witness: {e}")));
    if let Some(regions) = doc.get("regions").or_else(|| doc.get("verdicts")) {
        let verdicts: Vec<RegionVerdict> = serde_json::from_value(regions.clone()).map_err(bad)?;
        let l = need_rates()?;
        return verdicts
            .iter()
            .map(|v| Ok((v.region.to_string(), v.verify(g, l)?)))
            .collect();
    }
    if doc.get("region").is_some() {
        let v: RegionVerdict = serde_json::from_value(doc.clone()).map_err(bad)?;
        return Ok(vec![(v.region.to_string(), v.verify(g, need_rates()?)?)]);
    }
    if doc.get("alpha").is_some() || doc.get("minimizer").is_some() {
        let factor: SetFactor = match doc.get("minimizer") {
            Some(m) => serde_json::from_value(m.clone()).map_err(bad)?,
            None => serde_json::from_value(doc.clone()).map_err(bad)?,
        };
        g.check_set(factor.set)?;
        let m = g.schedules(factor.set)?;
        return Ok(vec![(format!("sigma {}", factor.set), factor.verify(&m))]);
    }
    if doc.get("kind").is_some() {
        let oracle: OracleValue = serde_json::from_value(doc.clone()).map_err(bad)?;
        let subject = match doc.get("subject") {
            Some(s) => serde_json::from_value(s.clone()).map_err(bad)?,
            None => set,
        };
        g.check_set(subject)?;
        let l = need_rates()?.restrict(subject)?;
        let m = g.schedules(subject)?;
        let name = serde_json::to_value(oracle.kind).map_err(bad)?;
        return Ok(vec![(
            name.as_str().unwrap_or("oracle").to_string(),
            oracle.verify(&m, l.values()),
        )]);
    }
    Err(Error::invalid("document carries no recognisable witness").into())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> CliResult<i32> {
    Limits {
        max_nodes: cli.max_nodes,
        max_subset_nodes: cli.max_subset_nodes,
    }
    .install()?;
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(Error::invalid("--jobs must be at least 1").into());
        }
        // Fails harmlessly if a pool already exists in this process.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global();
    }
    let emit = |out: &mut dyn Write, v: &dyn render::Render| v.emit(out, cli.approx);

    match &cli.command {
        Command::Mis { graph, rows } => {
            let g = load_graph(graph)?;
            let m = g.maximal_schedules()?;
            if *rows {
                for s in m.columns() {
                    let row: Vec<String> =
                        s.indicator(g.nodes()).iter().map(u8::to_string).collect();
                    writeln!(out, "{}", row.join(" "))
                        .map_err(|e| io_failure(Path::new("<stdout>"), e))?;
                }
                return Ok(0);
            }
            emit(
                out,
                &json!({
                    "graph_digest": g.digest(),
                    "count": m.num_schedules(),
                    "schedules": m.columns(),
                }),
            )?;
        }
        Command::Cliques { graph } => {
            let g = load_graph(graph)?;
            let c = g.maximal_cliques()?;
            emit(
                out,
                &json!({"graph_digest": g.digest(), "count": c.len(), "cliques": c}),
            )?;
        }
        Command::Chi { graph, rates, set }
        | Command::Phi { graph, rates, set }
        | Command::Tau { graph, rates, set } => {
            let g = load_graph(graph)?;
            let l = require_rates(&g, rates)?;
            let subject = parse_set(&g, set.as_deref())?;
            let m = g.schedules(subject)?;
            let ls = l.restrict(subject)?;
            let oracle = match &cli.command {
                Command::Chi { .. } => chi_f_on(&m, ls.values())?,
                Command::Phi { .. } => phi_f_on(&m, ls.values())?,
                _ => tau_f_on(&m, ls.values())?,
            };
            emit(
                out,
                &OracleOutput {
                    graph_digest: g.digest(),
                    subject,
                    oracle,
                },
            )?;
        }
        Command::Sigma { graph, set, link } => {
            let g = load_graph(graph)?;
            let digest = json!({"graph_digest": g.digest()});
            let body = match (set, link) {
                (Some(s), _) => to_value(&sigma_set(&g, parse_set(&g, Some(s))?)?)?,
                (None, Some(l)) => to_value::<PoolingFactor>(&sigma_link(&g, *l)?)?,
                (None, None) => to_value(&*sigma_profile(&g)?)?,
            };
            emit(out, &merge(digest, body))?;
        }
        Command::Rank { graph, set } => {
            let g = load_graph(graph)?;
            let r = rank_report(&g, parse_set(&g, set.as_deref())?)?;
            emit(
                out,
                &merge(json!({"graph_digest": g.digest()}), to_value(&r)?),
            )?;
        }
        Command::Member {
            graph,
            region,
            rates,
        } => {
            let g = load_graph(graph)?;
            let l = require_rates(&g, rates)?;
            let v = decide(&g, &l, *region)?;
            emit(
                out,
                &merge(json!({"graph_digest": g.digest()}), to_value(&v)?),
            )?;
        }
        Command::Report {
            graph,
            rates,
            sim_seeds,
            sim,
        } => {
            let g = load_graph(graph)?;
            let l = require_rates(&g, rates)?;
            let report = region_report(&g, &l)?;
            let simulations = sim_seeds
                .iter()
                .map(|&seed| {
                    let cfg = sim_config(sim, seed, cli.max_horizon)?;
                    Ok(SimSummary::new(&g, &sim::run(&g, &l, &cfg)?))
                })
                .collect::<CliResult<Vec<_>>>()?;
            let limits = Limits::current();
            let analysis = AnalysisReport {
                tool_version: env!("CARGO_PKG_VERSION"),
                graph_digest: g.digest(),
                nodes: g.node_count(),
                schedule_count: g.maximal_schedules()?.num_schedules(),
                rates: l.values().to_vec(),
                sigma: to_value(&*sigma_profile(&g)?)?,
                regions: report.verdicts,
                inconsistencies: report.inconsistencies,
                simulations,
                config: ConfigEcho {
                    max_nodes: limits.max_nodes,
                    max_subset_nodes: limits.max_subset_nodes,
                },
            };
            emit(out, &analysis)?;
        }
        Command::Simulate {
            graph,
            rates,
            sim,
            seed,
            initial,
            csv,
            catalog,
        } => {
            let g = load_graph(graph)?;
            let l = require_rates(&g, rates)?;
            let mut cfg = sim_config(sim, *seed, cli.max_horizon)?;
            if let Some(init) = initial {
                cfg.initial = Some(parse_list(init, rates.decimal)?);
            }
            let trace = sim::run(&g, &l, &cfg)?;
            if let Some(p) = csv {
                sim::write_csv(&trace, create(p)?).map_err(|e| io_failure(p, e))?;
            }
            if let Some(p) = catalog {
                sim::write_catalog(&trace, create(p)?).map_err(|e| io_failure(p, e))?;
            }
            emit(out, &SimSummary::new(&g, &trace))?;
        }
        Command::VerifyWitness {
            graph,
            witness,
            rates,
            set,
        } => {
            let g = load_graph(graph)?;
            let l = load_rates(&g, rates)?;
            let doc: Value = serde_json::from_str(&read_text(witness)?)
                .map_err(|e| Failure::from(Error::invalid(format!("witness is not JSON: {e}"))))?;
            let subject = parse_set(&g, set.as_deref())?;
            let checks = verify_document(&g, &doc, l.as_ref(), subject)?;
            let ok = checks.iter().all(|(_, b)| *b);
            let detail: Vec<Value> = checks
                .into_iter()
                .map(|(name, verified)| json!({"name": name, "verified": verified}))
                .collect();
            emit(out, &json!({"verified": ok, "checks": detail}))?;
            return Ok(if ok { 0 } else { 1 });
        }
    }
    Ok(0)
}

fn to_value<T: Serialize>(v: &T) -> CliResult<Value> {
    serde_json::to_value(v).map_err(|e| Error::internal(e.to_string()).into())
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

mod render {
    use super::*;

    /// Object-safe wrapper so one closure can print any serializable value.
    pub trait Render {
        fn emit(&self, out: &mut dyn Write, approx: bool) -> CliResult<()>;
    }

    impl<T: Serialize> Render for T {
        fn emit(&self, out: &mut dyn Write, approx: bool) -> CliResult<()> {
            let text = canonical(self, approx)
                .map_err(|e| Failure::from(Error::internal(e.to_string())))?;
            writeln!(out, "{text}").map_err(|e| io_failure(Path::new("<stdout>"), e))
        }
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// results to `out` and errors to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    return 0;
                }
                _ => 2,
            };
            let body = json!({"error": {"kind": "usage", "message": e.render().to_string()}});
            let _ = writeln!(err, "{body}");
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let body = json!({"error": {"kind": f.kind, "message": f.message}});
            let _ = writeln!(err, "{body}");
            f.code
        }
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let code = run(std::env::args_os(), &mut out, &mut io::stderr());
    let _ = out.flush();
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("lqflab").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn usage_errors_exit_2() {
        let (code, _, err) = call(&["mis"]);
        assert_eq!(code, 2);
        assert!(err.contains("\"usage\""));
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn missing_file_is_input_error() {
        let (code, _, err) = call(&["mis", "/nonexistent/graph.txt"]);
        assert_eq!(code, 3);
        let v: Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"]["kind"], "io");
    }
}
