//! Full-graph simulation against neighborhood-only simulation.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::stats::trial_seed;
use crate::error::Result;
use crate::graph::{edge_neighborhood, generate, EnsembleSpec, Graph, Neighborhood};
use crate::optimize::SearchDomain;
use crate::rng_from_seed;
use crate::sim::{CostModel, InitialState, QaoaCircuit, QaoaParams, DEFAULT_QUBIT_CAP};
use crate::tree::TreeObjective;

/// Salt mixed into trial seeds when drawing random angles, so the angles are
/// not correlated with the graph stream.
const PARAM_SALT: u64 = 0x5eed_a11e_5a17_0001;

/// Uniform angles over the period box of `model`.
pub fn random_params(model: &CostModel, p: usize, seed: u64) -> QaoaParams {
    let dom = SearchDomain::for_model(model, p);
    let mut rng = rng_from_seed(seed);
    let flat: Vec<f64> = dom
        .periods()
        .iter()
        .map(|&t| rng.gen::<f64>() * t)
        .collect();
    QaoaParams::from_flat(&flat).expect("even length")
}

#[derive(Debug, Clone, Serialize)]
pub struct LocalityTrial {
    pub seed: u64,
    pub edges: usize,
    pub tree_edges: usize,
    pub params_checked: usize,
    /// Largest |full - neighborhood| over tree edges and parameter vectors.
    pub max_discrepancy: Option<f64>,
    /// Largest |full - canonical tree value|, when the host is regular.
    pub max_discrepancy_canonical: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LocalityReport {
    pub spec: EnsembleSpec,
    pub p: usize,
    pub model: CostModel,
    pub initial: InitialState,
    pub trials: Vec<LocalityTrial>,
    pub tree_edges_total: usize,
    pub max_discrepancy: Option<f64>,
    pub max_discrepancy_canonical: Option<f64>,
    pub note: Option<String>,
}

fn fmax(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// How the angles for each trial are chosen.
#[derive(Debug, Clone)]
pub enum ParamSource<'a> {
    /// The same schedules for every graph.
    Fixed(&'a [QaoaParams]),
    /// `count` fresh uniform schedules per graph.
    Random { count: usize },
}

/// Locality comparison on one given graph. `canonical`, when present, is
/// also compared against on regular hosts of the matching degree.
pub fn locality_on_graph(
    g: &Graph,
    seed: u64,
    p: usize,
    model: &CostModel,
    initial: InitialState,
    params: &[QaoaParams],
    canonical: Option<&TreeObjective>,
) -> Result<LocalityTrial> {
    let circuit = QaoaCircuit::new(g, model, initial, DEFAULT_QUBIT_CAP)?;
    let neighborhoods: Vec<(Neighborhood, QaoaCircuit)> = g
        .edges()
        .iter()
        .map(|&e| edge_neighborhood(g, e, p))
        .filter(|nb| nb.as_ref().map_or(true, |nb| nb.is_tree))
        .map(|nb| {
            let nb = nb?;
            let c = QaoaCircuit::new(&nb.subgraph, model, initial, DEFAULT_QUBIT_CAP)?;
            Ok((nb, c))
        })
        .collect::<Result<_>>()?;
    // The canonical tree only stands in for the neighborhood on regular hosts.
    let canonical = canonical.filter(|t| g.degree() == Some(t.tree().d));

    let mut worst = None;
    let mut worst_canonical = None;
    for q in params {
        let full = circuit.run(q);
        let tree_value = canonical.map(|t| t.evaluate(q)).transpose()?;
        for (nb, c) in &neighborhoods {
            let host_edge = (nb.vertex_map[0], nb.vertex_map[1]);
            let v_full = full.expect_edge(host_edge, model)?;
            let v_local = c.run(q).expect_edge(nb.middle_endpoints(), model)?;
            worst = fmax(worst, Some((v_full - v_local).abs()));
            if let Some(t) = tree_value {
                worst_canonical = fmax(worst_canonical, Some((v_full - t).abs()));
            }
        }
    }
    Ok(LocalityTrial {
        seed,
        edges: g.num_edges(),
        tree_edges: neighborhoods.len(),
        params_checked: params.len(),
        max_discrepancy: worst,
        max_discrepancy_canonical: worst_canonical,
    })
}

/// For `trials` graphs drawn from `spec` (trial `t` uses seed `spec.seed + t`),
/// compares every tree edge's full-graph expectation with the expectation
/// computed on its extracted neighborhood alone.
pub fn locality_check(
    spec: &EnsembleSpec,
    p: usize,
    model: &CostModel,
    params: ParamSource<'_>,
    initial: InitialState,
    trials: usize,
) -> Result<LocalityReport> {
    let canonical = TreeObjective::new(spec.d.max(2), p, model, initial).ok();
    let results: Vec<LocalityTrial> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let trial_spec = spec.with_seed(trial_seed(spec.seed, t));
            let schedules: Vec<QaoaParams> = match &params {
                ParamSource::Fixed(list) => list.to_vec(),
                ParamSource::Random { count } => (0..*count)
                    .map(|k| random_params(model, p, trial_seed(trial_spec.seed ^ PARAM_SALT, k)))
                    .collect(),
            };
            let g = generate(&trial_spec)?;
            locality_on_graph(
                &g,
                trial_spec.seed,
                p,
                model,
                initial,
                &schedules,
                canonical.as_ref(),
            )
        })
        .collect::<Result<_>>()?;

    let tree_edges_total = results.iter().map(|t| t.tree_edges).sum();
    let max_discrepancy = results
        .iter()
        .fold(None, |acc, t| fmax(acc, t.max_discrepancy));
    let max_discrepancy_canonical = results
        .iter()
        .fold(None, |acc, t| fmax(acc, t.max_discrepancy_canonical));
    let note = (tree_edges_total == 0).then(|| "no tree edges".to_string());
    Ok(LocalityReport {
        spec: spec.clone(),
        p,
        model: model.clone(),
        initial,
        trials: results,
        tree_edges_total,
        max_discrepancy,
        max_discrepancy_canonical,
        note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_graphs_agree() {
        let spec = EnsembleSpec::general(14, 3, 100);
        let r = locality_check(
            &spec,
            1,
            &CostModel::max_cut(),
            ParamSource::Random { count: 3 },
            InitialState::PlusProduct,
            4,
        )
        .unwrap();
        assert!(r.tree_edges_total > 0);
        assert!(r.max_discrepancy.unwrap() < 1e-9);
        assert!(r.max_discrepancy_canonical.unwrap() < 1e-9);
    }

    #[test]
    fn k4_has_no_tree_edges() {
        let spec = EnsembleSpec::general(4, 3, 0);
        let r = locality_check(
            &spec,
            1,
            &CostModel::max_cut(),
            ParamSource::Random { count: 2 },
            InitialState::PlusProduct,
            2,
        )
        .unwrap();
        assert_eq!(r.tree_edges_total, 0);
        assert_eq!(r.max_discrepancy, None);
        assert_eq!(r.note.as_deref(), Some("no tree edges"));
    }

    #[test]
    fn six_cycle_is_all_tree_edges() {
        let c6 = Graph::cycle(6);
        let canonical =
            TreeObjective::new(2, 1, &CostModel::max_cut(), InitialState::PlusProduct).unwrap();
        let params: Vec<QaoaParams> = (0..5)
            .map(|k| random_params(&CostModel::max_cut(), 1, k))
            .collect();
        let t = locality_on_graph(
            &c6,
            0,
            1,
            &CostModel::max_cut(),
            InitialState::PlusProduct,
            &params,
            Some(&canonical),
        )
        .unwrap();
        assert_eq!(t.tree_edges, 6);
        assert!(t.max_discrepancy.unwrap() < 1e-12);
        assert!(t.max_discrepancy_canonical.unwrap() < 1e-12);
    }

    #[test]
    fn random_params_in_box() {
        let mis = CostModel::mis(3).unwrap();
        let q = random_params(&mis, 2, 5);
        assert!(q
            .gammas()
            .iter()
            .all(|&g| (0.0..mis.gamma_period()).contains(&g)));
        assert!(q
            .betas()
            .iter()
            .all(|&b| (0.0..std::f64::consts::PI).contains(&b)));
        assert_eq!(q, random_params(&mis, 2, 5));
    }
}
