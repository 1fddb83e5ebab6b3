//! Per-edge QAOA performance on general versus bipartite random regular graphs.
//!
//! Both ensembles are locally tree-like, so their per-edge means should agree
//! with each other and with the tree value, up to Monte Carlo error and the
//! contribution of edges whose neighborhood is not a tree. A non-tree edge can
//! move the per-edge mean by at most (edge value range) times the non-tree
//! fraction, which is the systematic part of the tolerance.

use rayon::prelude::*;
use serde::Serialize;

use super::stats::{trial_seed, Summary};
use super::SIGMA_BAND;
use crate::error::Result;
use crate::graph::{generate, tree_edge_fraction, BipartiteRegular, EnsembleSpec, GeneralRegular};
use crate::sim::{CostModel, InitialState, QaoaCircuit, QaoaParams, DEFAULT_QUBIT_CAP};
use crate::tree::tree_expectation;

/// Floating-point slack added to every tolerance. When every edge is a tree
/// edge the per-edge values equal the tree value exactly, the standard error
/// is zero, and only rounding separates the two.
pub const NUMERIC_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct EnsembleStats {
    pub kind: String,
    pub per_edge: Summary,
    pub non_tree_fraction: Summary,
}

#[derive(Debug, Clone, Serialize)]
pub struct ToleranceCheck {
    pub difference: f64,
    pub tolerance: f64,
    pub within: bool,
}

impl ToleranceCheck {
    fn new(difference: f64, tolerance: f64) -> Self {
        Self {
            difference,
            tolerance,
            within: difference <= tolerance,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceRow {
    pub n: usize,
    pub general: EnsembleStats,
    pub bipartite: EnsembleStats,
    pub general_vs_bipartite: ToleranceCheck,
    pub general_vs_tree: ToleranceCheck,
    pub bipartite_vs_tree: ToleranceCheck,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub d: usize,
    pub p: usize,
    pub model: CostModel,
    pub initial: InitialState,
    pub params: QaoaParams,
    pub trials: usize,
    pub seed: u64,
    pub tree_value: f64,
    pub rows: Vec<EquivalenceRow>,
    pub all_within: bool,
}

#[allow(clippy::too_many_arguments)]
fn ensemble_stats(
    kind: &str,
    n: usize,
    d: usize,
    p: usize,
    model: &CostModel,
    params: &QaoaParams,
    initial: InitialState,
    trials: usize,
    seed: u64,
) -> Result<EnsembleStats> {
    let samples: Vec<(f64, f64)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let g = generate(&EnsembleSpec::new(n, d, kind, trial_seed(seed, t)))?;
            let state = QaoaCircuit::new(&g, model, initial, DEFAULT_QUBIT_CAP)?.run(params);
            let per_edge = state.expect_total(&g, model)? / g.num_edges() as f64;
            Ok((per_edge, 1.0 - tree_edge_fraction(&g, p)))
        })
        .collect::<Result<_>>()?;
    let (per_edge, non_tree): (Vec<f64>, Vec<f64>) = samples.into_iter().unzip();
    Ok(EnsembleStats {
        kind: kind.to_string(),
        per_edge: Summary::of(&per_edge),
        non_tree_fraction: Summary::of(&non_tree),
    })
}

/// Trial `t` of each ensemble at each size uses seed `seed + t`.
#[allow(clippy::too_many_arguments)]
pub fn ensemble_equivalence(
    n_list: &[usize],
    d: usize,
    p: usize,
    model: &CostModel,
    params: &QaoaParams,
    initial: InitialState,
    trials: usize,
    seed: u64,
) -> Result<EquivalenceReport> {
    let tree_value = tree_expectation(d, p, model, params, initial)?.value;
    let (lo, hi) = model.edge_value_range();
    let width = hi - lo;

    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let general = ensemble_stats(
            GeneralRegular::NAME,
            n,
            d,
            p,
            model,
            params,
            initial,
            trials,
            seed,
        )?;
        let bipartite = ensemble_stats(
            BipartiteRegular::NAME,
            n,
            d,
            p,
            model,
            params,
            initial,
            trials,
            seed,
        )?;
        let (g, b) = (&general, &bipartite);
        let se_both = g.per_edge.std_error.hypot(b.per_edge.std_error);
        let gap = ToleranceCheck::new(
            (g.per_edge.mean - b.per_edge.mean).abs(),
            SIGMA_BAND * se_both
                + width * (g.non_tree_fraction.mean + b.non_tree_fraction.mean)
                + NUMERIC_SLACK,
        );
        let vs_tree = |s: &EnsembleStats| {
            ToleranceCheck::new(
                (s.per_edge.mean - tree_value).abs(),
                SIGMA_BAND * s.per_edge.std_error
                    + width * s.non_tree_fraction.mean
                    + NUMERIC_SLACK,
            )
        };
        rows.push(EquivalenceRow {
            n,
            general_vs_tree: vs_tree(g),
            bipartite_vs_tree: vs_tree(b),
            general_vs_bipartite: gap,
            general,
            bipartite,
        });
    }
    let all_within = rows.iter().all(|r| {
        r.general_vs_bipartite.within && r.general_vs_tree.within && r.bipartite_vs_tree.within
    });
    Ok(EquivalenceReport {
        d,
        p,
        model: model.clone(),
        initial,
        params: params.clone(),
        trials,
        seed,
        tree_value,
        rows,
        all_within,
    })
}
