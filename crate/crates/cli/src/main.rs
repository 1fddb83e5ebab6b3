//! `qaoa-locality`: command-line driver for the experiments.
//!
//! Every subcommand is translated into the same task description a `run
//! --config` file uses, then run through the shared report path, so the JSON
//! written to stdout is identical in both cases. Failures print
//! `{"error": {"category", "message"}}` to stderr and exit nonzero.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qaoa_locality::experiments::config::{
    CyclesTask, EndToEndTask, EquivalenceTask, GenerateTask, LocalityTask, OptimizeTask, PruneTask,
    RatioBoundTask, TreeExpectTask, TreeFractionTask,
};
use qaoa_locality::experiments::{run_config, run_task, Config, Report, Task, SCHEMA_VERSION};
use qaoa_locality::optimize::DEFAULT_BUDGET;
use qaoa_locality::sim::InitialState;
use qaoa_locality::Error;
use serde_json::json;

/// Exit code for command-line usage errors.
const USAGE_EXIT: u8 = 64;

#[derive(Debug, Parser)]
#[command(
    name = "qaoa-locality",
    version,
    about = "QAOA on random regular graphs: locality, tree values and ratio ceilings"
)]
struct Cli {
    /// Also write the tabular rows of the result (if any) as CSV to this file.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample a random regular graph.
    Generate(GenerateArgs),
    /// Count short cycles in a graph file, or run a census over an ensemble.
    Cycles(CyclesArgs),
    /// Middle-edge expectation on the canonical tree.
    TreeExpect(TreeExpectArgs),
    /// Maximize the tree expectation over the angles.
    Optimize(OptimizeArgs),
    /// Compare full-graph and neighborhood-only expectations.
    LocalityCheck(LocalityArgs),
    /// Compare general and bipartite ensembles against the tree value.
    Equivalence(EquivalenceArgs),
    /// Approximation-ratio ceiling on bipartite instances.
    RatioBound(RatioBoundArgs),
    /// Greedily repair a bitstring into an independent set.
    Prune(PruneArgs),
    /// Fraction of edges with tree neighborhoods.
    TreeFraction(TreeFractionArgs),
    /// Optimize, predict, simulate, bound and sample in one pass.
    EndToEnd(EndToEndArgs),
    /// Run every task of a JSON configuration file.
    Run(RunArgs),
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long, default_value = "general")]
    kind: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge-list file to write.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CyclesArgs {
    /// Edge-list file; without it a census over `--n`/`--d` graphs is run.
    #[arg(long = "in", conflicts_with_all = ["n", "d", "trials"])]
    input: Option<PathBuf>,
    #[arg(long)]
    kmax: usize,
    #[arg(long, required_unless_present = "input")]
    n: Option<usize>,
    #[arg(long, required_unless_present = "input")]
    d: Option<usize>,
    #[arg(long, default_value = "general")]
    kind: String,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct TreeExpectArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    p: usize,
    #[arg(long, default_value = "maxcut")]
    model: String,
    #[arg(long, default_value = "plus")]
    init: InitialState,
    /// Comma-separated gamma_1..gamma_p.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    gamma: Vec<f64>,
    /// Comma-separated beta_1..beta_p.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    beta: Vec<f64>,
}

#[derive(Debug, Args)]
struct OptimizeArgs {
    #[arg(long)]
    d: usize,
    #[arg(long)]
    p: usize,
    #[arg(long, default_value = "maxcut")]
    model: String,
    #[arg(long, default_value = "plus")]
    init: InitialState,
    /// Grid points per axis (default depends on p).
    #[arg(long)]
    resolution: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Recorded in the report; the optimizer itself is deterministic.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    top_k: Option<usize>,
    #[arg(long)]
    tolerance: Option<f64>,
    /// Local search strategy (nelder-mead or coordinate-golden).
    #[arg(long)]
    local_search: Option<String>,
}

#[derive(Debug, Args)]
struct LocalityArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    p: usize,
    #[arg(long, default_value = "maxcut")]
    model: String,
    #[arg(long, default_value = "general")]
    kind: String,
    #[arg(long, default_value = "plus")]
    init: InitialState,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random angle vectors per graph.
    #[arg(long, default_value_t = 10)]
    params_per_graph: usize,
}

#[derive(Debug, Args)]
struct EquivalenceArgs {
    /// Comma-separated graph sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    n_list: Vec<usize>,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    p: usize,
    #[arg(long, default_value = "maxcut")]
    model: String,
    #[arg(long, default_value = "plus")]
    init: InitialState,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Angles to use instead of the tree optimum (needs `--beta`).
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        requires = "beta"
    )]
    gamma: Option<Vec<f64>>,
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        requires = "gamma"
    )]
    beta: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
struct RatioBoundArgs {
    #[arg(long)]
    model: String,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    p: usize,
    #[arg(
        long,
        conflicts_with = "optimize",
        required_unless_present = "optimize"
    )]
    tree_value: Option<f64>,
    /// Optimize the tree value first.
    #[arg(long)]
    optimize: bool,
    #[arg(long, default_value = "plus")]
    init: InitialState,
    #[arg(long, requires = "optimize")]
    resolution: Option<usize>,
}

#[derive(Debug, Args)]
struct PruneArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    bits: String,
    #[arg(long)]
    d: usize,
}

#[derive(Debug, Args)]
struct TreeFractionArgs {
    #[arg(long = "in", conflicts_with_all = ["n", "d", "trials"])]
    input: Option<PathBuf>,
    /// Comma-separated depths.
    #[arg(long, value_delimiter = ',', required = true)]
    p_list: Vec<usize>,
    #[arg(long, required_unless_present = "input")]
    n: Option<usize>,
    #[arg(long, required_unless_present = "input")]
    d: Option<usize>,
    #[arg(long, default_value = "general")]
    kind: String,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct EndToEndArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    p: usize,
    #[arg(long, default_value = "general")]
    kind: String,
    #[arg(long, default_value = "maxcut")]
    model: String,
    #[arg(long, default_value = "plus")]
    init: InitialState,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long)]
    resolution: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Bitstrings to sample from the final state (0 skips sampling).
    #[arg(long, default_value_t = 0)]
    samples: usize,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Command {
    fn into_task(self) -> Task {
        match self {
            Command::Generate(a) => Task::Generate(GenerateTask {
                n: a.n,
                d: a.d,
                kind: a.kind,
                seed: a.seed,
                out: a.out,
            }),
            Command::Cycles(a) => Task::Cycles(CyclesTask {
                input: a.input,
                kmax: a.kmax,
                n: a.n,
                d: a.d,
                kind: a.kind,
                trials: a.trials,
                seed: a.seed,
            }),
            Command::TreeExpect(a) => Task::TreeExpect(TreeExpectTask {
                d: a.d,
                p: a.p,
                model: a.model,
                init: a.init,
                gamma: a.gamma,
                beta: a.beta,
            }),
            Command::Optimize(a) => Task::Optimize(OptimizeTask {
                d: a.d,
                p: a.p,
                model: a.model,
                init: a.init,
                resolution: a.resolution,
                budget: a.budget,
                seed: a.seed,
                top_k: a.top_k,
                tolerance: a.tolerance,
                local_search: a.local_search,
            }),
            Command::LocalityCheck(a) => Task::LocalityCheck(LocalityTask {
                n: a.n,
                d: a.d,
                p: a.p,
                model: a.model,
                kind: a.kind,
                init: a.init,
                trials: a.trials,
                seed: a.seed,
                params_per_graph: a.params_per_graph,
            }),
            Command::Equivalence(a) => Task::Equivalence(EquivalenceTask {
                n_list: a.n_list,
                d: a.d,
                p: a.p,
                model: a.model,
                init: a.init,
                trials: a.trials,
                seed: a.seed,
                gamma: a.gamma,
                beta: a.beta,
            }),
            Command::RatioBound(a) => Task::RatioBound(RatioBoundTask {
                model: a.model,
                d: a.d,
                p: a.p,
                tree_value: a.tree_value,
                optimize: a.optimize,
                init: a.init,
                resolution: a.resolution,
            }),
            Command::Prune(a) => Task::Prune(PruneTask {
                input: a.input,
                bits: a.bits,
                d: a.d,
            }),
            Command::TreeFraction(a) => Task::TreeFraction(TreeFractionTask {
                input: a.input,
                p_list: a.p_list,
                n: a.n,
                d: a.d,
                kind: a.kind,
                trials: a.trials,
                seed: a.seed,
            }),
            Command::EndToEnd(a) => Task::EndToEnd(EndToEndTask {
                n: a.n,
                d: a.d,
                p: a.p,
                kind: a.kind,
                model: a.model,
                init: a.init,
                budget: a.budget,
                resolution: a.resolution,
                seed: a.seed,
                samples: a.samples,
            }),
            Command::Run(_) => unreachable!("run is handled before task conversion"),
        }
    }
}

fn fail(category: &str, message: &str, code: u8) -> ExitCode {
    let body = json!({ "error": { "category": category, "message": message } });
    eprintln!("{body}");
    ExitCode::from(code)
}

fn execute(cli: Cli) -> Result<(), Error> {
    let report = match cli.command {
        Command::Run(args) => {
            if cli.csv.is_some() {
                return Err(Error::InvalidInput(
                    "--csv applies to single subcommands, not run".into(),
                ));
            }
            let report = run_config(&Config::load(&args.config)?)?;
            match args.out {
                Some(path) => std::fs::write(path, report.to_json())?,
                None => print!("{}", report.to_json()),
            }
            return Ok(());
        }
        command => {
            let task = command.into_task();
            let output = run_task(&task)?;
            if let Some(path) = &cli.csv {
                let csv = output.csv.ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "{} has no tabular output for --csv",
                        task.command()
                    ))
                })?;
                std::fs::write(path, csv)?;
            }
            // Same shape as a one-task configuration run.
            Report {
                schema_version: SCHEMA_VERSION,
                results: vec![qaoa_locality::experiments::config::TaskRecord {
                    command: task.command(),
                    task,
                    result: output.json,
                }],
            }
        }
    };
    print!("{}", report.to_json());
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => return fail("usage", &e.to_string(), USAGE_EXIT),
        Err(e) => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e.category(), &e.to_string(), e.exit_code() as u8),
    }
}
