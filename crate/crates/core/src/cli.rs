//! Command-line front end.
//!
//! Every command prints one JSON document on stdout. Exit codes: 0 on
//! success, 2 for invalid input, 3 when a size limit is exceeded.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::coloring::{
    exact_density_coloring, extreme_tight_coloring, k_alternating_coloring, p_random_coloring, Coloring,
};
use crate::cycle_theory::rmm_quadratic_witness;
use crate::dynamics::{run_observed, run_with, Model, RunOptions, RunResult, TieRng};
use crate::error::{invalid_param, Error, Result};
use crate::exact::{
    enumerate_stable_colorings, is_resilient, is_winning_set_exhaustive, largest_resilient_subset,
    list_stable_colorings, min_winning_set, rmm_markov_with_cap, winning_report, DEFAULT_MARKOV_CAP,
};
use crate::experiments::{run_experiment, write_outputs, ExperimentConfig};
use crate::graph::{
    double_graph, make_cycle, make_cycle_plus_random, make_exp_periodicity_graph, make_exp_stabilization_graph,
    make_two_cycle, Graph, NodeSet,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_SIZE_CAP: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "majdyn", version, about = "Majority dynamics on graphs: simulation and exact analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run one simulation and print its result.
    Simulate(SimulateArgs),
    /// Exhaustive analysis of a small graph.
    Analyze(AnalyzeArgs),
    /// Run an experiment described by a JSON config file.
    Experiment(ExperimentArgs),
    /// Print (or write) a generated graph and optionally a coloring.
    Generate(GenerateArgs),
}

#[derive(clap::Args, Debug)]
pub struct SimulateArgs {
    #[arg(long, value_parser = parse_model)]
    pub model: Model,
    /// Graph file or generator, e.g. `cycle:11`, `cyclerand:100:7`, `double:cycle:6`.
    #[arg(long)]
    pub graph: String,
    /// Coloring file or spec, e.g. `extreme`, `bw:bbwwbw`, `random:0.3`.
    #[arg(long)]
    pub coloring: String,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Probability that a tie resolves blue.
    #[arg(long)]
    pub bias: Option<f64>,
    #[arg(long)]
    pub max_rounds: Option<u64>,
    /// Write one JSON line per round to this file.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Include the full coloring in trace lines.
    #[arg(long)]
    pub trace_colorings: bool,
    /// Simulate every round of the random model on cycles.
    #[arg(long)]
    pub no_jumps: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Analysis {
    Markov,
    Stable,
    Winning,
    MinWinning,
    Hitting,
    Resilient,
}

#[derive(clap::Args, Debug)]
pub struct AnalyzeArgs {
    #[arg(long, value_enum)]
    pub what: Analysis,
    #[arg(long)]
    pub graph: String,
    #[arg(long, value_parser = parse_model, default_value = "rmm")]
    pub model: Model,
    /// Node set as comma-separated indices.
    #[arg(long)]
    pub set: Option<String>,
    /// Starting coloring (for `hitting`).
    #[arg(long)]
    pub coloring: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Node limit of the Markov chain.
    #[arg(long, default_value_t = DEFAULT_MARKOV_CAP)]
    pub cap: usize,
    /// List the stable colorings as well as counting them.
    #[arg(long)]
    pub list: bool,
    /// Check a winning set exhaustively instead of by the worst-case run.
    #[arg(long)]
    pub exhaustive: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
pub struct ExperimentArgs {
    pub config: PathBuf,
    /// Number of worker threads.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Override the output path of the config.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Json,
    Edges,
}

#[derive(clap::Args, Debug)]
pub struct GenerateArgs {
    #[arg(long)]
    pub graph: String,
    #[arg(long)]
    pub coloring: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: GraphFormat,
    /// Write the graph to this file.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_model(s: &str) -> std::result::Result<Model, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SizeCap { .. } => EXIT_SIZE_CAP,
        _ => EXIT_INVALID,
    }
}

fn number<T: std::str::FromStr>(text: &str, what: &str) -> Result<T> {
    text.trim().parse().map_err(|_| Error::Parse(format!("bad {what} {text:?}")))
}

/// Builds a graph from a generator spec or a file path.
pub fn parse_graph_spec(spec: &str) -> Result<Graph> {
    let (head, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let args: Vec<&str> = if rest.is_empty() { Vec::new() } else { rest.split(':').collect() };
    let one = |what: &str| -> Result<usize> {
        match args.as_slice() {
            [n] => number(n, what),
            _ => Err(Error::Parse(format!("{head} takes one argument, e.g. {head}:10"))),
        }
    };
    match head {
        "cycle" => make_cycle(one("size")?),
        "twocycle" => make_two_cycle(one("size")?),
        "cyclerand" => match args.as_slice() {
            [n, seed] => make_cycle_plus_random(number(n, "size")?, number(seed, "seed")?),
            _ => Err(Error::Parse("cyclerand takes size and seed, e.g. cyclerand:100:7".into())),
        },
        "expstab" => Ok(make_exp_stabilization_graph(one("size")?)?.0),
        "expperiod" => Ok(make_exp_periodicity_graph(one("size")?)?.0),
        "double" if !rest.is_empty() => Ok(double_graph(&parse_graph_spec(rest)?)),
        _ => {
            let path = Path::new(spec);
            if path.is_file() {
                Graph::parse(&fs::read_to_string(path)?)
            } else {
                Err(Error::Parse(format!("unknown graph {spec:?}")))
            }
        }
    }
}

fn need_seed(seed: Option<u64>, what: &str) -> Result<u64> {
    seed.ok_or_else(|| invalid_param(format!("{what} needs an explicit --seed")))
}

/// Builds a coloring of `n` nodes from a spec or a file path.
pub fn parse_coloring_spec(spec: &str, n: usize, seed: Option<u64>) -> Result<Coloring> {
    let (head, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let c = match head {
        "extreme" => extreme_tight_coloring(n)?,
        "blue" => Coloring::all_blue(n),
        "white" => Coloring::all_white(n),
        "alternating" => {
            let phase: usize = if rest.is_empty() { 0 } else { number(rest, "phase")? };
            Coloring::from_fn(n, |v| (v + phase) % 2 == 0)
        }
        "bw" => Coloring::parse_bw(rest)?,
        "random" => p_random_coloring(n, number(rest, "probability")?, need_seed(seed, "a random coloring")?)?,
        "density" => exact_density_coloring(n, number(rest, "blue count")?, need_seed(seed, "a random coloring")?)?,
        "kalt" => k_alternating_coloring(n, number(rest, "k")?)?,
        "quadratic" => rmm_quadratic_witness(n)?,
        "set" => Coloring::from_blue_set(&parse_node_set(rest, n)?),
        _ => {
            let path = Path::new(spec);
            if path.is_file() {
                Coloring::parse(&fs::read_to_string(path)?)?
            } else {
                return Err(Error::Parse(format!("unknown coloring {spec:?}")));
            }
        }
    };
    if c.len() != n {
        return Err(invalid_param(format!("coloring has {} nodes but the graph has {n}", c.len())));
    }
    Ok(c)
}

/// Parses `"0,2,5"` into a node set over `n` nodes.
pub fn parse_node_set(text: &str, n: usize) -> Result<NodeSet> {
    let nodes = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| number::<usize>(t, "node"))
        .collect::<Result<Vec<_>>>()?;
    NodeSet::from_indices(n, nodes)
}

fn rounds_value(r: &RunResult) -> Value {
    match r.rounds {
        Some(t) => json!(t),
        None => json!("cap-exceeded"),
    }
}

fn simulate(args: &SimulateArgs) -> Result<Value> {
    let g = parse_graph_spec(&args.graph)?;
    let c0 = parse_coloring_spec(&args.coloring, g.n(), args.seed)?;
    let rng = match args.model {
        Model::Mm => None,
        Model::Rmm => {
            let seed = need_seed(args.seed, "the random model")?;
            Some(match args.bias {
                Some(q) => TieRng::with_bias(seed, q)?,
                None => TieRng::new(seed),
            })
        }
    };
    let max_rounds = args.max_rounds.unwrap_or(match args.model {
        Model::Mm => crate::dynamics::default_mm_cap(&g),
        Model::Rmm => 1 << 32,
    });
    let opts = RunOptions { max_rounds, record_blue_counts: false, accelerate: !args.no_jumps };
    let result = match &args.trace {
        Some(path) => {
            let mut out = std::io::BufWriter::new(fs::File::create(path)?);
            let mut err = None;
            let full = args.trace_colorings;
            let mut write_line = |t: u64, c: &Coloring| {
                let line = if full {
                    json!({"t": t, "blue": c.blue_count(), "coloring": c.to_bw()})
                } else {
                    json!({"t": t, "blue": c.blue_count()})
                };
                if err.is_none() {
                    err = writeln!(out, "{line}").err();
                }
            };
            let r = run_observed(args.model, &g, &c0, rng.as_ref(), &opts, &mut write_line)?;
            if let Some(e) = err {
                return Err(e.into());
            }
            out.flush()?;
            r
        }
        None => run_with(args.model, &g, &c0, rng.as_ref(), &opts)?,
    };
    let mut v = json!({
        "rounds": rounds_value(&result),
        "outcome": result.outcome.as_str(),
        "model": args.model.to_string(),
        "n": g.n(),
        "trace_len": result.trace_len,
        "final_blue": result.final_coloring.blue_count(),
        "final": result.final_coloring.to_bw(),
    });
    if let Some(p) = &result.partner {
        v["partner"] = json!(p.to_bw());
    }
    if let Some(seed) = args.seed {
        v["seed"] = json!(seed);
    }
    Ok(v)
}

fn analyze(args: &AnalyzeArgs) -> Result<Value> {
    let g = parse_graph_spec(&args.graph)?;
    let model = args.model;
    let set = || -> Result<NodeSet> {
        parse_node_set(args.set.as_deref().ok_or_else(|| invalid_param("this analysis needs --set"))?, g.n())
    };
    Ok(match args.what {
        Analysis::Markov => {
            let a = rmm_markov_with_cap(&g, args.cap)?;
            let mut v: Value = serde_json::from_str(&a.to_json())?;
            v["sizes"] = json!(a.absorbing_sizes());
            v["residual"] = json!(a.residual());
            v
        }
        Analysis::Stable => {
            let count = enumerate_stable_colorings(&g, model)?;
            let mut v = json!({"count": count, "model": model.to_string(), "n": g.n()});
            if args.list {
                let listed: Vec<String> = list_stable_colorings(&g, model)?
                    .into_iter()
                    .map(|s| Coloring::from_index(g.n(), s as u64).to_bw())
                    .collect();
                v["colorings"] = json!(listed);
            }
            v
        }
        Analysis::Winning => {
            let s = set()?;
            let report = winning_report(&g, &s, model)?;
            let mut v = json!({"blue": report.blue, "white": report.white, "size": s.count(), "model": model.to_string()});
            if args.exhaustive {
                v["blue_exhaustive"] = json!(is_winning_set_exhaustive(&g, &s, model)?);
            }
            v
        }
        Analysis::MinWinning => {
            let m = min_winning_set(&g, model)?;
            json!({"size": m.size, "witness": m.witness.to_vec(), "model": model.to_string()})
        }
        Analysis::Hitting => {
            let spec = args.coloring.as_deref().ok_or_else(|| invalid_param("hitting needs --coloring"))?;
            let c0 = parse_coloring_spec(spec, g.n(), args.seed)?;
            let a = rmm_markov_with_cap(&g, args.cap)?;
            let state = c0.to_index().expect("small graph") as u32;
            json!({
                "state": state,
                "expected_rounds": crate::format::sig(a.hitting_time(state), 12),
                "absorption": a.absorption_distribution(state)?,
                "sizes": a.absorbing_sizes(),
            })
        }
        Analysis::Resilient => {
            let s = set()?;
            json!({
                "resilient": is_resilient(&g, &s, model),
                "largest_resilient_subset": largest_resilient_subset(&g, &s, model).to_vec(),
                "model": model.to_string(),
            })
        }
    })
}

fn experiment(args: &ExperimentArgs) -> Result<Value> {
    let mut cfg = ExperimentConfig::load(&args.config)?;
    if let Some(out) = &args.out {
        cfg.output = out.clone();
    }
    let table = with_jobs(args.jobs, || run_experiment(&cfg))?;
    let written = write_outputs(&cfg, &table)?;
    let stderr = std::io::stderr();
    let mut lock = stderr.lock();
    for line in table.summary_lines() {
        let _ = writeln!(lock, "{line}");
    }
    Ok(serde_json::to_value(written)?)
}

#[cfg(feature = "parallel")]
fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| invalid_param(e.to_string()))?
            .install(f),
        None => f(),
    }
}

#[cfg(not(feature = "parallel"))]
fn with_jobs<T: Send>(_jobs: Option<usize>, f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    f()
}

fn generate(args: &GenerateArgs) -> Result<Value> {
    let g = parse_graph_spec(&args.graph)?;
    let coloring = args.coloring.as_deref().map(|c| parse_coloring_spec(c, g.n(), args.seed)).transpose()?;
    let mut v = match &args.out {
        Some(path) => {
            let text = match args.format {
                GraphFormat::Json => g.to_json() + "\n",
                GraphFormat::Edges => g.to_edge_list(),
            };
            fs::write(path, text)?;
            json!({"written": path, "n": g.n(), "m": g.m()})
        }
        None => json!({"graph": serde_json::to_value(&g)?}),
    };
    if let Some(c) = coloring {
        v["coloring"] = json!(c.to_bw());
    }
    Ok(v)
}

/// Runs a parsed command and returns the JSON payload for stdout.
pub fn execute(cli: &Cli) -> Result<Value> {
    match &cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Analyze(a) => {
            let v = analyze(a)?;
            match &a.out {
                Some(path) => {
                    fs::write(path, serde_json::to_string_pretty(&v)? + "\n")?;
                    Ok(json!({"written": path}))
                }
                None => Ok(v),
            }
        }
        Command::Experiment(a) => experiment(a),
        Command::Generate(a) => generate(a),
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(v) => {
            println!("{v}");
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
