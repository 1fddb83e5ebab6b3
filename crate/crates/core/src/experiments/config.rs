//! Batch configuration: a JSON list of tasks, one per CLI subcommand, run in
//! order into a single versioned report.
//!
//! ```json
//! { "tasks": [
//!     { "command": "generate", "n": 10, "d": 3, "seed": 7 },
//!     { "command": "tree-expect", "d": 3, "p": 1, "gamma": [0.6], "beta": [0.4] }
//! ] }
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::census::{cycle_census_experiment, CensusReport};
use super::end_to_end::end_to_end;
use super::equivalence::{ensemble_equivalence, EquivalenceReport};
use super::locality::{locality_check, LocalityReport, ParamSource};
use super::prune::prune;
use super::ratio::ratio_ceiling;
use super::tree_fraction::{tree_fraction_experiment, tree_fraction_of_graph, TreeFractionReport};
use crate::error::{Error, Result};
use crate::graph::{count_cycles, generate, EnsembleSpec, GeneralRegular, Graph};
use crate::optimize::{optimize, OptimizeOptions, DEFAULT_BUDGET};
use crate::sim::{Bitstring, CostModel, InitialState, MaxCut, QaoaParams};
use crate::tree::tree_expectation;

pub const SCHEMA_VERSION: u32 = 1;

fn default_kind() -> String {
    GeneralRegular::NAME.to_string()
}

fn default_model() -> String {
    MaxCut::NAME.to_string()
}

fn default_trials() -> usize {
    1
}

fn default_params_per_graph() -> usize {
    10
}

fn default_budget() -> u64 {
    DEFAULT_BUDGET
}

/// Cost model by name; the independent-set model takes its degree from `d`.
pub fn model_for(name: &str, d: usize) -> Result<CostModel> {
    CostModel::from_name(name, Some(d))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenerateTask {
    pub n: usize,
    pub d: usize,
    #[serde(default = "default_kind")]
    pub kind: String,
    #[serde(default)]
    pub seed: u64,
    /// Also write the graph as an edge list to this path.
    #[serde(default)]
    pub out: Option<PathBuf>,
}

/// Either a single graph file (`in`) or a census over an ensemble.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CyclesTask {
    #[serde(default, rename = "in")]
    pub input: Option<PathBuf>,
    pub kmax: usize,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub d: Option<usize>,
    #[serde(default = "default_kind")]
    pub kind: String,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeExpectTask {
    pub d: usize,
    pub p: usize,
    #[serde(default = "default_model")]
    pub model: String,
    #[serde(default)]
    pub init: InitialState,
    pub gamma: Vec<f64>,
    pub beta: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimizeTask {
    pub d: usize,
    pub p: usize,
    #[serde(default = "default_model")]
    pub model: String,
    #[serde(default)]
    pub init: InitialState,
    #[serde(default)]
    pub resolution: Option<usize>,
    #[serde(default = "default_budget")]
    pub budget: u64,
    /// Recorded only: the optimizer is deterministic.
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub top_k: Option<usize>,
    #[serde(default)]
    pub tolerance: Option<f64>,
    #[serde(default)]
    pub local_search: Option<String>,
}

impl OptimizeTask {
    pub fn options(&self) -> OptimizeOptions {
        let mut o = OptimizeOptions {
            resolution: self.resolution,
            budget: self.budget,
            ..OptimizeOptions::default()
        };
        if let Some(k) = self.top_k {
            o.top_k = k;
        }
        if let Some(t) = self.tolerance {
            o.tolerance = t;
        }
        if let Some(s) = &self.local_search {
            o.local_search = s.clone();
        }
        o
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalityTask {
    pub n: usize,
    pub d: usize,
    pub p: usize,
    #[serde(default = "default_model")]
    pub model: String,
    #[serde(default = "default_kind")]
    pub kind: String,
    #[serde(default)]
    pub init: InitialState,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_params_per_graph")]
    pub params_per_graph: usize,
}

/// Without explicit angles, the tree-optimal angles (default optimizer
/// settings) are used.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivalenceTask {
    pub n_list: Vec<usize>,
    pub d: usize,
    pub p: usize,
    #[serde(default = "default_model")]
    pub model: String,
    #[serde(default)]
    pub init: InitialState,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub gamma: Option<Vec<f64>>,
    #[serde(default)]
    pub beta: Option<Vec<f64>>,
}

/// Exactly one of `tree_value` and `optimize` must be given.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatioBoundTask {
    pub model: String,
    pub d: usize,
    pub p: usize,
    #[serde(default)]
    pub tree_value: Option<f64>,
    #[serde(default)]
    pub optimize: bool,
    #[serde(default)]
    pub init: InitialState,
    #[serde(default)]
    pub resolution: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PruneTask {
    #[serde(rename = "in")]
    pub input: PathBuf,
    pub bits: String,
    pub d: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeFractionTask {
    #[serde(default, rename = "in")]
    pub input: Option<PathBuf>,
    pub p_list: Vec<usize>,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub d: Option<usize>,
    #[serde(default = "default_kind")]
    pub kind: String,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndToEndTask {
    pub n: usize,
    pub d: usize,
    pub p: usize,
    #[serde(default = "default_kind")]
    pub kind: String,
    #[serde(default = "default_model")]
    pub model: String,
    #[serde(default)]
    pub init: InitialState,
    #[serde(default = "default_budget")]
    pub budget: u64,
    #[serde(default)]
    pub resolution: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Task {
    Generate(GenerateTask),
    Cycles(CyclesTask),
    TreeExpect(TreeExpectTask),
    Optimize(OptimizeTask),
    LocalityCheck(LocalityTask),
    Equivalence(EquivalenceTask),
    RatioBound(RatioBoundTask),
    Prune(PruneTask),
    TreeFraction(TreeFractionTask),
    EndToEnd(EndToEndTask),
}

impl Task {
    pub fn command(&self) -> &'static str {
        match self {
            Task::Generate(_) => "generate",
            Task::Cycles(_) => "cycles",
            Task::TreeExpect(_) => "tree-expect",
            Task::Optimize(_) => "optimize",
            Task::LocalityCheck(_) => "locality-check",
            Task::Equivalence(_) => "equivalence",
            Task::RatioBound(_) => "ratio-bound",
            Task::Prune(_) => "prune",
            Task::TreeFraction(_) => "tree-fraction",
            Task::EndToEnd(_) => "end-to-end",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub tasks: Vec<Task>,
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

/// Result of one task: the JSON value and, for tabular experiments, a CSV
/// rendering of its rows.
#[derive(Debug, Clone)]
pub struct TaskOutput {
    pub json: Value,
    pub csv: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TaskRecord {
    pub command: &'static str,
    pub task: Task,
    pub result: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub results: Vec<TaskRecord>,
}

impl Report {
    /// Pretty JSON with a trailing newline; stable for identical inputs.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report values serialize");
        s.push('\n');
        s
    }
}

/// Rows of an experiment as CSV with a header line.
pub trait Tabular {
    fn header(&self) -> Vec<&'static str>;
    fn rows(&self) -> Vec<Vec<String>>;

    fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(self.header()).expect("in-memory write");
        for row in self.rows() {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii fields")
    }
}

fn cell<T: ToString>(v: T) -> String {
    v.to_string()
}

fn opt_cell(v: Option<f64>) -> String {
    v.map(cell).unwrap_or_default()
}

impl Tabular for CensusReport {
    fn header(&self) -> Vec<&'static str> {
        vec![
            "length",
            "mean",
            "variance",
            "std_error",
            "oracle",
            "finite_n_multigraph_mean",
            "z_score",
            "within_band",
        ]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    cell(r.length),
                    cell(r.counts.mean),
                    cell(r.counts.variance),
                    cell(r.counts.std_error),
                    cell(r.oracle),
                    cell(r.finite_n_multigraph_mean),
                    opt_cell(r.z_score),
                    cell(r.within_band),
                ]
            })
            .collect()
    }
}

impl Tabular for TreeFractionReport {
    fn header(&self) -> Vec<&'static str> {
        vec![
            "p",
            "mean_fraction",
            "std_error",
            "ball_product",
            "n",
            "below_n",
            "exponent",
        ]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                vec![
                    cell(r.p),
                    cell(r.fraction.mean),
                    cell(r.fraction.std_error),
                    cell(r.threshold.ball_product),
                    cell(r.threshold.n),
                    cell(r.threshold.below_n),
                    opt_cell(r.threshold.exponent),
                ]
            })
            .collect()
    }
}

impl Tabular for EquivalenceReport {
    fn header(&self) -> Vec<&'static str> {
        vec![
            "n",
            "general_mean",
            "general_se",
            "general_non_tree",
            "bipartite_mean",
            "bipartite_se",
            "bipartite_non_tree",
            "gap",
            "gap_tolerance",
            "within",
        ]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                let within = r.general_vs_bipartite.within
                    && r.general_vs_tree.within
                    && r.bipartite_vs_tree.within;
                vec![
                    cell(r.n),
                    cell(r.general.per_edge.mean),
                    cell(r.general.per_edge.std_error),
                    cell(r.general.non_tree_fraction.mean),
                    cell(r.bipartite.per_edge.mean),
                    cell(r.bipartite.per_edge.std_error),
                    cell(r.bipartite.non_tree_fraction.mean),
                    cell(r.general_vs_bipartite.difference),
                    cell(r.general_vs_bipartite.tolerance),
                    cell(within),
                ]
            })
            .collect()
    }
}

impl Tabular for LocalityReport {
    fn header(&self) -> Vec<&'static str> {
        vec![
            "seed",
            "edges",
            "tree_edges",
            "params_checked",
            "max_discrepancy",
            "max_discrepancy_canonical",
        ]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.trials
            .iter()
            .map(|t| {
                vec![
                    cell(t.seed),
                    cell(t.edges),
                    cell(t.tree_edges),
                    cell(t.params_checked),
                    opt_cell(t.max_discrepancy),
                    opt_cell(t.max_discrepancy_canonical),
                ]
            })
            .collect()
    }
}

fn json<T: Serialize>(value: &T) -> Result<Value> {
    Ok(serde_json::to_value(value)?)
}

fn tabular<T: Serialize + Tabular>(value: &T) -> Result<TaskOutput> {
    Ok(TaskOutput {
        json: json(value)?,
        csv: Some(value.to_csv()),
    })
}

fn plain<T: Serialize>(value: &T) -> Result<TaskOutput> {
    Ok(TaskOutput {
        json: json(value)?,
        csv: None,
    })
}

fn ensemble_args(n: Option<usize>, d: Option<usize>, what: &str) -> Result<(usize, usize)> {
    match (n, d) {
        (Some(n), Some(d)) => Ok((n, d)),
        _ => Err(Error::invalid(format!(
            "{what} needs either an input graph or both n and d"
        ))),
    }
}

pub fn run_task(task: &Task) -> Result<TaskOutput> {
    match task {
        Task::Generate(t) => {
            let g = generate(&EnsembleSpec::new(t.n, t.d, t.kind.clone(), t.seed))?;
            if let Some(path) = &t.out {
                g.write_edgelist(path)?;
            }
            plain(&g)
        }
        Task::Cycles(t) => match &t.input {
            Some(path) => plain(&count_cycles(&Graph::read_edgelist(path)?, t.kmax)),
            None => {
                let (n, d) = ensemble_args(t.n, t.d, "cycles")?;
                let spec = EnsembleSpec::new(n, d, t.kind.clone(), t.seed);
                tabular(&cycle_census_experiment(&spec, t.kmax, t.trials)?)
            }
        },
        Task::TreeExpect(t) => {
            let model = model_for(&t.model, t.d)?;
            let params = QaoaParams::new(t.gamma.clone(), t.beta.clone())?;
            plain(&tree_expectation(t.d, t.p, &model, &params, t.init)?)
        }
        Task::Optimize(t) => {
            let model = model_for(&t.model, t.d)?;
            plain(&optimize(t.d, t.p, &model, t.init, &t.options())?)
        }
        Task::LocalityCheck(t) => {
            let model = model_for(&t.model, t.d)?;
            let spec = EnsembleSpec::new(t.n, t.d, t.kind.clone(), t.seed);
            let source = ParamSource::Random {
                count: t.params_per_graph,
            };
            tabular(&locality_check(
                &spec, t.p, &model, source, t.init, t.trials,
            )?)
        }
        Task::Equivalence(t) => {
            let model = model_for(&t.model, t.d)?;
            let params = match (&t.gamma, &t.beta) {
                (Some(g), Some(b)) => QaoaParams::new(g.clone(), b.clone())?,
                (None, None) => {
                    optimize(t.d, t.p, &model, t.init, &OptimizeOptions::default())?.best_params
                }
                _ => return Err(Error::invalid("give both gamma and beta, or neither")),
            };
            tabular(&ensemble_equivalence(
                &t.n_list, t.d, t.p, &model, &params, t.init, t.trials, t.seed,
            )?)
        }
        Task::RatioBound(t) => {
            let model = model_for(&t.model, t.d)?;
            let value = match (t.tree_value, t.optimize) {
                (Some(v), false) => v,
                (None, true) => {
                    let options = OptimizeOptions {
                        resolution: t.resolution,
                        ..OptimizeOptions::default()
                    };
                    optimize(t.d, t.p, &model, t.init, &options)?.best_value
                }
                _ => {
                    return Err(Error::invalid(
                        "give exactly one of tree_value and optimize",
                    ))
                }
            };
            plain(&ratio_ceiling(&model, t.d, t.p, value)?)
        }
        Task::Prune(t) => {
            let g = Graph::read_edgelist(&t.input)?;
            let bits: Bitstring = t.bits.parse()?;
            plain(&prune(&g, &bits, t.d)?)
        }
        Task::TreeFraction(t) => match &t.input {
            Some(path) => plain(&tree_fraction_of_graph(
                &Graph::read_edgelist(path)?,
                &t.p_list,
            )),
            None => {
                let (n, d) = ensemble_args(t.n, t.d, "tree-fraction")?;
                let spec = EnsembleSpec::new(n, d, t.kind.clone(), t.seed);
                tabular(&tree_fraction_experiment(&spec, &t.p_list, t.trials)?)
            }
        },
        Task::EndToEnd(t) => {
            let model = model_for(&t.model, t.d)?;
            let spec = EnsembleSpec::new(t.n, t.d, t.kind.clone(), t.seed);
            let options = OptimizeOptions {
                resolution: t.resolution,
                budget: t.budget,
                ..OptimizeOptions::default()
            };
            plain(&end_to_end(
                &spec, t.p, &model, t.init, &options, t.samples,
            )?)
        }
    }
}

/// Runs every task in order. The first failing task aborts the run.
pub fn run_config(config: &Config) -> Result<Report> {
    let results = config
        .tasks
        .iter()
        .map(|task| {
            Ok(TaskRecord {
                command: task.command(),
                task: task.clone(),
                result: run_task(task)?.json,
            })
        })
        .collect::<Result<_>>()?;
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        results,
    })
}
