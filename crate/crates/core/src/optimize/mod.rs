//! Angle search for the tree expectation: exhaustive grid over one period box
//! followed by derivative-free local refinement from the best grid points.
//!
//! Parameter vectors are compared in their flat form
//! `[gamma_1..gamma_p, beta_1..beta_p]`; equal values are broken toward the
//! lexicographically smaller vector so that every result is deterministic.

mod golden;
mod nelder_mead;

pub use golden::CoordinateGolden;
pub use nelder_mead::NelderMead;

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::registry::Registry;
use crate::sim::{CostModel, InitialState, QaoaParams};
use crate::tree::TreeObjective;

pub type Objective<'a> = dyn Fn(&[f64]) -> f64 + Sync + 'a;

/// Result of one local maximization.
#[derive(Debug, Clone)]
pub struct LocalOutcome {
    pub point: Vec<f64>,
    pub value: f64,
    pub trace: Vec<(Vec<f64>, f64)>,
    pub iterations: usize,
    pub converged: bool,
}

impl LocalOutcome {
    fn unmoved(point: Vec<f64>, value: f64, trace: Vec<(Vec<f64>, f64)>) -> Self {
        Self {
            point,
            value,
            trace,
            iterations: 0,
            converged: true,
        }
    }
}

/// A derivative-free local maximizer.
pub trait LocalSearch: Send + Sync {
    fn name(&self) -> &'static str;

    /// Climbs from `start`; the returned value is never below `f(start)`.
    /// `scales` sets the initial step per coordinate.
    fn maximize(
        &self,
        f: &Objective<'_>,
        start: &[f64],
        scales: &[f64],
        tolerance: f64,
        max_iterations: usize,
    ) -> LocalOutcome;
}

pub fn builtin_local_searches() -> Registry<dyn LocalSearch> {
    let mut reg: Registry<dyn LocalSearch> = Registry::new("local search");
    reg.register(NelderMead::NAME, Box::new(NelderMead))
        .expect("fresh registry");
    reg.register(CoordinateGolden::NAME, Box::new(CoordinateGolden))
        .expect("fresh registry");
    reg
}

pub fn local_searches() -> &'static Registry<dyn LocalSearch> {
    static REG: OnceLock<Registry<dyn LocalSearch>> = OnceLock::new();
    REG.get_or_init(builtin_local_searches)
}

pub(crate) fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or_else(|| a.len().cmp(&b.len()))
}

/// `Less` means `a` is the better candidate.
fn better(a: (&[f64], f64), b: (&[f64], f64)) -> Ordering {
    b.1.total_cmp(&a.1).then_with(|| lex_cmp(a.0, b.0))
}

/// Box searched by the grid: one full period per coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchDomain {
    pub gamma_period: f64,
    pub beta_period: f64,
    pub p: usize,
}

impl SearchDomain {
    pub fn for_model(model: &CostModel, p: usize) -> Self {
        Self {
            gamma_period: model.gamma_period(),
            beta_period: PI,
            p,
        }
    }

    /// Period of each flat coordinate.
    pub fn periods(&self) -> Vec<f64> {
        let mut v = vec![self.gamma_period; self.p];
        v.extend(std::iter::repeat_n(self.beta_period, self.p));
        v
    }

    /// Maps every coordinate into `[0, period)`.
    pub fn wrap(&self, params: &QaoaParams) -> QaoaParams {
        let flat: Vec<f64> = params
            .to_flat()
            .iter()
            .zip(self.periods())
            .map(|(x, t)| {
                let r = x.rem_euclid(t);
                if r >= t {
                    0.0
                } else {
                    r
                }
            })
            .collect();
        QaoaParams::from_flat(&flat).expect("even length")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OptResult {
    pub best_params: QaoaParams,
    pub best_value: f64,
    #[serde(skip)]
    pub trace: Vec<(QaoaParams, f64)>,
    pub evaluations: usize,
    pub grid_resolution: usize,
    pub refinement_iterations: usize,
    /// False if some refinement hit its iteration cap.
    pub converged: bool,
}

pub const DEFAULT_BUDGET: u64 = 1_000_000;
pub const DEFAULT_TOP_K: usize = 5;
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
pub const DEFAULT_MAX_ITERATIONS: usize = 5_000;

/// Default grid points per axis: 64 up to depth 1, 16 at depth 2, 8 beyond.
pub fn default_resolution(p: usize) -> usize {
    match p {
        0 | 1 => 64,
        2 => 16,
        _ => 8,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OptimizeOptions {
    /// Grid points per axis; `None` picks [`default_resolution`].
    pub resolution: Option<usize>,
    pub budget: u64,
    pub top_k: usize,
    pub tolerance: f64,
    pub max_iterations: usize,
    pub local_search: String,
    /// Also refine from the depth p-1 optimum padded with a zero layer.
    pub warm_start: bool,
}

impl Default for OptimizeOptions {
    fn default() -> Self {
        Self {
            resolution: None,
            budget: DEFAULT_BUDGET,
            top_k: DEFAULT_TOP_K,
            tolerance: DEFAULT_TOLERANCE,
            max_iterations: DEFAULT_MAX_ITERATIONS,
            local_search: NelderMead::NAME.to_string(),
            warm_start: true,
        }
    }
}

fn objective_fn(obj: &TreeObjective) -> impl Fn(&[f64]) -> f64 + Sync + '_ {
    move |x: &[f64]| {
        let params = QaoaParams::from_flat(x).expect("even length");
        obj.evaluate(&params).expect("depth matches")
    }
}

fn grid_on(obj: &TreeObjective, resolution: usize, budget: u64) -> Result<Vec<(Vec<f64>, f64)>> {
    if resolution < 2 {
        return Err(Error::invalid("grid resolution must be at least 2"));
    }
    let p = obj.depth();
    let domain = SearchDomain::for_model(obj.model(), p);
    let dims = 2 * p;
    let total = (resolution as u128)
        .checked_pow(dims as u32)
        .unwrap_or(u128::MAX);
    if total > u128::from(budget) {
        return Err(Error::Budget {
            required: total,
            budget,
        });
    }
    let periods = domain.periods();
    let f = objective_fn(obj);
    // Index digits are read most-significant first, so index order is
    // lexicographic order of the points.
    let points: Vec<(Vec<f64>, f64)> = (0..total as usize)
        .into_par_iter()
        .map(|mut idx| {
            let mut x = vec![0.0; dims];
            for k in (0..dims).rev() {
                x[k] = (idx % resolution) as f64 * periods[k] / resolution as f64;
                idx /= resolution;
            }
            let v = f(&x);
            (x, v)
        })
        .collect();
    Ok(points)
}

fn to_trace(points: &[(Vec<f64>, f64)]) -> Vec<(QaoaParams, f64)> {
    points
        .iter()
        .map(|(x, v)| (QaoaParams::from_flat(x).expect("even length"), *v))
        .collect()
}

fn best_of(points: &[(Vec<f64>, f64)]) -> &(Vec<f64>, f64) {
    points
        .iter()
        .min_by(|a, b| better((&a.0, a.1), (&b.0, b.1)))
        .expect("grid is never empty")
}

/// Exhaustive search on the uniform grid over the period box.
pub fn grid_search(
    d: usize,
    p: usize,
    model: &CostModel,
    initial: InitialState,
    resolution: usize,
    budget: u64,
) -> Result<OptResult> {
    let obj = TreeObjective::new(d, p, model, initial)?;
    let points = grid_on(&obj, resolution, budget)?;
    let (x, v) = best_of(&points).clone();
    Ok(OptResult {
        best_params: QaoaParams::from_flat(&x)?,
        best_value: v,
        evaluations: points.len(),
        trace: to_trace(&points),
        grid_resolution: resolution,
        refinement_iterations: 0,
        converged: true,
    })
}

fn initial_scales(model: &CostModel, p: usize, resolution: usize) -> Vec<f64> {
    SearchDomain::for_model(model, p)
        .periods()
        .into_iter()
        .map(|t| t / resolution as f64)
        .collect()
}

fn refine_on(
    obj: &TreeObjective,
    search: &dyn LocalSearch,
    start: &[f64],
    scales: &[f64],
    tolerance: f64,
    max_iterations: usize,
) -> LocalOutcome {
    let f = objective_fn(obj);
    search.maximize(&f, start, scales, tolerance, max_iterations)
}

/// Local ascent from `start` with the default local search. The initial step
/// is 1/32 of a period per coordinate.
pub fn refine(
    start: &QaoaParams,
    d: usize,
    p: usize,
    model: &CostModel,
    initial: InitialState,
    tolerance: f64,
) -> Result<OptResult> {
    refine_with(
        start,
        d,
        p,
        model,
        initial,
        tolerance,
        NelderMead::NAME,
        DEFAULT_MAX_ITERATIONS,
    )
}

#[allow(clippy::too_many_arguments)]
pub fn refine_with(
    start: &QaoaParams,
    d: usize,
    p: usize,
    model: &CostModel,
    initial: InitialState,
    tolerance: f64,
    local_search: &str,
    max_iterations: usize,
) -> Result<OptResult> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        return Err(Error::invalid("tolerance must be positive"));
    }
    if start.depth() != p {
        return Err(Error::invalid(format!(
            "start has depth {} but p = {p}",
            start.depth()
        )));
    }
    let search = local_searches().get(local_search)?;
    let obj = TreeObjective::new(d, p, model, initial)?;
    let out = refine_on(
        &obj,
        search,
        &start.to_flat(),
        &initial_scales(model, p, 32),
        tolerance,
        max_iterations,
    );
    Ok(OptResult {
        best_params: QaoaParams::from_flat(&out.point)?,
        best_value: out.value,
        evaluations: out.trace.len(),
        trace: to_trace(&out.trace),
        grid_resolution: 0,
        refinement_iterations: out.iterations,
        converged: out.converged,
    })
}

/// Grid search, then local refinement from the `top_k` best grid points (and
/// from the padded depth p-1 optimum when warm starts are on). The winner is
/// wrapped into the period box and re-evaluated.
pub fn optimize(
    d: usize,
    p: usize,
    model: &CostModel,
    initial: InitialState,
    options: &OptimizeOptions,
) -> Result<OptResult> {
    let search = local_searches().get(&options.local_search)?;
    if options.tolerance.is_nan() || options.tolerance <= 0.0 {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let obj = TreeObjective::new(d, p, model, initial)?;
    let resolution = options.resolution.unwrap_or_else(|| default_resolution(p));
    let grid = grid_on(&obj, resolution, options.budget)?;
    let mut trace = to_trace(&grid);
    let mut evaluations = grid.len();

    let mut ranked: Vec<&(Vec<f64>, f64)> = grid.iter().collect();
    ranked.sort_by(|a, b| better((&a.0, a.1), (&b.0, b.1)));
    let mut starts: Vec<Vec<f64>> = ranked
        .iter()
        .take(options.top_k.max(1))
        .map(|(x, _)| x.clone())
        .collect();

    if options.warm_start && p >= 1 {
        let shallower = OptimizeOptions {
            resolution: None,
            ..options.clone()
        };
        let prev = optimize(d, p - 1, model, initial, &shallower)?;
        evaluations += prev.evaluations;
        starts.push(prev.best_params.padded(p).to_flat());
    }

    let scales = initial_scales(model, p, resolution);
    let outcomes: Vec<LocalOutcome> = starts
        .par_iter()
        .map(|s| {
            refine_on(
                &obj,
                search,
                s,
                &scales,
                options.tolerance,
                options.max_iterations,
            )
        })
        .collect();

    let mut refinement_iterations = 0;
    let mut converged = true;
    for o in &outcomes {
        refinement_iterations += o.iterations;
        converged &= o.converged;
        evaluations += o.trace.len();
        trace.extend(to_trace(&o.trace));
    }
    let grid_best = best_of(&grid);
    let winner = outcomes
        .iter()
        .map(|o| (&o.point[..], o.value))
        .chain(std::iter::once((&grid_best.0[..], grid_best.1)))
        .min_by(|a, b| better(*a, *b))
        .expect("at least the grid point");

    let domain = SearchDomain::for_model(model, p);
    let wrapped = domain.wrap(&QaoaParams::from_flat(winner.0)?);
    let best_value = obj.evaluate(&wrapped)?;
    evaluations += 1;
    Ok(OptResult {
        best_params: wrapped,
        best_value,
        trace,
        evaluations,
        grid_resolution: resolution,
        refinement_iterations,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::tree_expectation;

    fn mc() -> CostModel {
        CostModel::max_cut()
    }

    #[test]
    fn coarse_grid_contains_zero() {
        let r = grid_search(3, 1, &mc(), InitialState::PlusProduct, 2, DEFAULT_BUDGET).unwrap();
        assert!(r.best_value >= 0.5);
        assert_eq!(r.evaluations, 4);
    }

    #[test]
    fn grid_budget_and_resolution_checks() {
        let e = grid_search(3, 2, &mc(), InitialState::PlusProduct, 64, 1000).unwrap_err();
        assert_eq!(e.category(), "resource");
        assert!(grid_search(3, 1, &mc(), InitialState::PlusProduct, 1, 1000).is_err());
    }

    #[test]
    fn grid_ties_break_lexicographically() {
        // At depth 0 every schedule is empty; at depth 1 with an all-zero state
        // and MaxCut the value is identically 0 wherever beta = 0.
        let r = grid_search(2, 1, &mc(), InitialState::AllZero, 4, DEFAULT_BUDGET).unwrap();
        let best = r
            .trace
            .iter()
            .filter(|(_, v)| *v == r.best_value)
            .map(|(q, _)| q.to_flat())
            .min_by(|a, b| lex_cmp(a, b))
            .unwrap();
        assert_eq!(r.best_params.to_flat(), best);
    }

    #[test]
    fn refine_never_decreases() {
        for name in [NelderMead::NAME, CoordinateGolden::NAME] {
            let start = QaoaParams::new(vec![0.5], vec![0.3]).unwrap();
            let v0 = tree_expectation(3, 1, &mc(), &start, InitialState::PlusProduct)
                .unwrap()
                .value;
            let r = refine_with(
                &start,
                3,
                1,
                &mc(),
                InitialState::PlusProduct,
                1e-9,
                name,
                5000,
            )
            .unwrap();
            assert!(r.best_value >= v0, "{name}");
            assert!(
                (r.best_value - 0.6924).abs() < 1e-3,
                "{name}: {}",
                r.best_value
            );
        }
    }

    #[test]
    fn loose_tolerance_returns_start() {
        for name in [NelderMead::NAME, CoordinateGolden::NAME] {
            let start = QaoaParams::new(vec![0.5], vec![0.3]).unwrap();
            let r = refine_with(
                &start,
                3,
                1,
                &mc(),
                InitialState::PlusProduct,
                1.0,
                name,
                100,
            )
            .unwrap();
            assert_eq!(r.best_params, start, "{name}");
            assert_eq!(r.refinement_iterations, 0);
        }
    }

    #[test]
    fn refine_rejects_bad_input() {
        let start = QaoaParams::zeros(1);
        assert!(refine(&start, 3, 1, &mc(), InitialState::PlusProduct, 0.0).is_err());
        assert!(refine(&start, 3, 2, &mc(), InitialState::PlusProduct, 1e-6).is_err());
        assert!(refine_with(
            &start,
            3,
            1,
            &mc(),
            InitialState::PlusProduct,
            1e-6,
            "bfgs",
            10
        )
        .is_err());
    }

    #[test]
    fn depth_zero() {
        let r = optimize(
            3,
            0,
            &mc(),
            InitialState::PlusProduct,
            &OptimizeOptions::default(),
        )
        .unwrap();
        assert_eq!(r.best_value, 0.5);
        assert_eq!(r.best_params.depth(), 0);
    }

    #[test]
    fn wrap_into_box() {
        let dom = SearchDomain::for_model(&mc(), 1);
        let w = dom.wrap(&QaoaParams::new(vec![-0.5], vec![4.0]).unwrap());
        assert!((w.gammas()[0] - (2.0 * PI - 0.5)).abs() < 1e-15);
        assert!((w.betas()[0] - (4.0 - PI)).abs() < 1e-15);
        let mis = SearchDomain::for_model(&CostModel::mis(3).unwrap(), 2);
        assert_eq!(mis.periods(), vec![12.0 * PI, 12.0 * PI, PI, PI]);
    }
}
