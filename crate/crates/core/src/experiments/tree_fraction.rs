//! Fraction of edges whose p-neighborhood is a tree, against the size of the
//! ball the QAOA can see.
//!
//! The neighborhood of an edge has about `(d-1)^p` vertices on each side, so
//! two such balls are likely to collide once `(d-1)^{2p}` is comparable to n.
//! The report carries both that ratio and the exponent `2p ln(d-1) / ln n`;
//! below exponent 1 almost every edge is expected to be a tree edge.

use rayon::prelude::*;
use serde::Serialize;

use super::stats::{trial_seed, Summary};
use crate::error::{Error, Result};
use crate::graph::{generate, tree_edge_fraction, EnsembleSpec, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Threshold {
    /// `(d-1)^{2p}`.
    pub ball_product: f64,
    pub n: usize,
    /// `(d-1)^{2p} < n`.
    pub below_n: bool,
    /// `2p ln(d-1) / ln n`, the exponent A with `(d-1)^{2p} = n^A`.
    pub exponent: Option<f64>,
}

pub fn threshold(n: usize, d: usize, p: usize) -> Threshold {
    let ball_product = (d as f64 - 1.0).powi(2 * p as i32);
    let exponent =
        (n > 1 && d > 1).then(|| 2.0 * p as f64 * (d as f64 - 1.0).ln() / (n as f64).ln());
    Threshold {
        ball_product,
        n,
        below_n: ball_product < n as f64,
        exponent,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TreeFractionRow {
    pub p: usize,
    pub fraction: Summary,
    pub threshold: Threshold,
}

#[derive(Debug, Clone, Serialize)]
pub struct TreeFractionReport {
    pub spec: EnsembleSpec,
    pub trials: usize,
    pub rows: Vec<TreeFractionRow>,
}

/// Tree-edge fraction for each p on `trials` graphs from `spec` (trial `t`
/// uses seed `spec.seed + t`; the same graphs serve every p).
pub fn tree_fraction_experiment(
    spec: &EnsembleSpec,
    p_list: &[usize],
    trials: usize,
) -> Result<TreeFractionReport> {
    if trials == 0 {
        return Err(Error::invalid(
            "tree-fraction experiment needs at least one trial",
        ));
    }
    let per_trial: Vec<Vec<f64>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let g = generate(&spec.with_seed(trial_seed(spec.seed, t)))?;
            Ok(p_list.iter().map(|&p| tree_edge_fraction(&g, p)).collect())
        })
        .collect::<Result<_>>()?;
    let rows = p_list
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let samples: Vec<f64> = per_trial.iter().map(|f| f[i]).collect();
            TreeFractionRow {
                p,
                fraction: Summary::of(&samples),
                threshold: threshold(spec.n, spec.d, p),
            }
        })
        .collect();
    Ok(TreeFractionReport {
        spec: spec.clone(),
        trials,
        rows,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphTreeFraction {
    pub p: usize,
    pub fraction: f64,
    /// Present when the graph is regular.
    pub threshold: Option<Threshold>,
}

/// Tree-edge fractions of a single given graph.
pub fn tree_fraction_of_graph(g: &Graph, p_list: &[usize]) -> Vec<GraphTreeFraction> {
    p_list
        .iter()
        .map(|&p| GraphTreeFraction {
            p,
            fraction: tree_edge_fraction(g, p),
            threshold: g.degree().map(|d| threshold(g.n(), d, p)),
        })
        .collect()
}
