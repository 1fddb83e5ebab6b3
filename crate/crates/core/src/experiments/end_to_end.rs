//! One pass through the whole pipeline for a single instance: optimize angles
//! on the tree, predict the ensemble cost, check it on a sampled graph by full
//! simulation, compute the ratio report, and optionally sample and prune.

use num_rational::Rational64;
use serde::Serialize;

use super::prune::{is_independent_set, prune};
use super::ratio::{ratio_ceiling, RatioReport};
use crate::error::{Error, Result};
use crate::graph::{generate, tree_edge_fraction, EnsembleSpec};
use crate::optimize::{optimize, OptResult, OptimizeOptions};
use crate::sim::{
    cost_value_exact, CostModel, IndependentSet, InitialState, QaoaCircuit, DEFAULT_QUBIT_CAP,
};
use crate::tree::{predicted_ensemble_cost, EnsemblePrediction};

#[derive(Debug, Clone, Serialize)]
pub struct InstanceCheck {
    pub edges: usize,
    pub tree_edge_fraction: f64,
    /// Full-simulation expectation of the total cost.
    pub expected_cost: f64,
    pub per_edge: f64,
    /// |per_edge - tree value|.
    pub deviation_from_tree: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SamplingSummary {
    pub samples: usize,
    /// Best sampled cost (as "p/q").
    pub best_cost: String,
    pub mean_cost: f64,
    /// Independent-set models only: sizes after pruning.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_pruned_set_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pruning_contract_held: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EndToEndReport {
    pub spec: EnsembleSpec,
    pub p: usize,
    pub model: CostModel,
    pub initial: InitialState,
    pub optimization: OptResult,
    pub prediction: EnsemblePrediction,
    pub instance: Option<InstanceCheck>,
    pub ratio: Option<RatioReport>,
    pub sampling: Option<SamplingSummary>,
    pub notes: Vec<String>,
    pub finite_size_flag: bool,
}

fn rational_string(r: Rational64) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn rational_f64(r: Rational64) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `samples = 0` skips sampling. The instance check is skipped (with a note)
/// when `spec.n` exceeds the qubit cap.
pub fn end_to_end(
    spec: &EnsembleSpec,
    p: usize,
    model: &CostModel,
    initial: InitialState,
    options: &OptimizeOptions,
    samples: usize,
) -> Result<EndToEndReport> {
    let mut notes = Vec::new();
    let optimization = optimize(spec.d, p, model, initial, options)?;
    let tree_value = optimization.best_value;
    let prediction = predicted_ensemble_cost(spec.n, spec.d, tree_value);

    let ratio = match ratio_ceiling(model, spec.d, p, tree_value) {
        Ok(r) => Some(r),
        Err(e @ Error::NoConstant(_)) => {
            notes.push(format!("ratio: {e}"));
            None
        }
        Err(e) => return Err(e),
    };

    let g = generate(spec)?;
    let (instance, sampling) = if spec.n > DEFAULT_QUBIT_CAP {
        notes.push(format!(
            "instance check skipped: n = {} exceeds the {DEFAULT_QUBIT_CAP}-qubit cap",
            spec.n
        ));
        (None, None)
    } else {
        let state =
            QaoaCircuit::new(&g, model, initial, DEFAULT_QUBIT_CAP)?.run(&optimization.best_params);
        let expected_cost = state.expect_total(&g, model)?;
        let per_edge = expected_cost / g.num_edges() as f64;
        let instance = InstanceCheck {
            edges: g.num_edges(),
            tree_edge_fraction: tree_edge_fraction(&g, p),
            expected_cost,
            per_edge,
            deviation_from_tree: (per_edge - tree_value).abs(),
        };

        let sampling = (samples > 0)
            .then(|| -> Result<SamplingSummary> {
                let draws = state.sample_bitstrings(samples, spec.seed);
                let costs: Vec<Rational64> = draws
                    .iter()
                    .map(|b| cost_value_exact(model, &g, b))
                    .collect::<Result<_>>()?;
                let best = *costs.iter().max().expect("samples > 0");
                let mean_cost =
                    costs.iter().map(|&c| rational_f64(c)).sum::<f64>() / samples as f64;
                let (best_pruned_set_size, pruning_contract_held) =
                    if model.name() == IndependentSet::NAME {
                        let mut best_size = 0;
                        let mut held = true;
                        for b in &draws {
                            let r = prune(&g, b, spec.d)?;
                            best_size = best_size.max(r.output_set_size);
                            let costs = r.cost_sequence();
                            held &= is_independent_set(&g, &r.output_bitstring)
                                && costs.windows(2).all(|w| w[1] >= w[0])
                                && (r.input_cost <= Rational64::from_integer(0)
                                    || Rational64::from_integer(r.output_set_size as i64)
                                        >= r.input_cost);
                        }
                        (Some(best_size), Some(held))
                    } else {
                        (None, None)
                    };
                Ok(SamplingSummary {
                    samples,
                    best_cost: rational_string(best),
                    mean_cost,
                    best_pruned_set_size,
                    pruning_contract_held,
                })
            })
            .transpose()?;
        (Some(instance), sampling)
    };

    Ok(EndToEndReport {
        spec: spec.clone(),
        p,
        model: model.clone(),
        initial,
        optimization,
        prediction,
        instance,
        ratio,
        sampling,
        notes,
        finite_size_flag: true,
    })
}
