//! Structural invariants of the simulator and optimizer over randomized
//! inputs. The proptest RNG is pinned so every run sees the same cases.

use std::f64::consts::PI;

use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use qaoa_locality::optimize::{optimize, OptimizeOptions};
use qaoa_locality::sim::{cost_value, run_qaoa, Bitstring};
use qaoa_locality::{CostModel, Graph, InitialState, QaoaParams};

fn pinned(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        rng_seed: RngSeed::Fixed(0x51ed),
        ..ProptestConfig::default()
    }
}

fn graph() -> impl Strategy<Value = Graph> {
    (1usize..=8).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |mask| {
            let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
            let edges = pairs.zip(mask).filter(|(_, keep)| *keep).map(|(e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn params(max_p: usize) -> impl Strategy<Value = QaoaParams> {
    (0..=max_p).prop_flat_map(|p| {
        (
            proptest::collection::vec(-10.0f64..10.0, p),
            proptest::collection::vec(-10.0f64..10.0, p),
        )
            .prop_map(|(g, b)| QaoaParams::new(g, b).unwrap())
    })
}

fn model() -> impl Strategy<Value = CostModel> {
    prop_oneof![
        Just(CostModel::max_cut()),
        (1usize..=4).prop_map(|d| CostModel::mis(d).unwrap())
    ]
}

fn initial() -> impl Strategy<Value = InitialState> {
    prop_oneof![Just(InitialState::AllZero), Just(InitialState::PlusProduct)]
}

fn total(g: &Graph, m: &CostModel, q: &QaoaParams, init: InitialState) -> f64 {
    run_qaoa(g, m, q, init).unwrap().expect_total(g, m).unwrap()
}

fn shift_layer(q: &QaoaParams, layer: usize, dg: f64, db: f64) -> QaoaParams {
    let mut g = q.gammas().to_vec();
    let mut b = q.betas().to_vec();
    g[layer] += dg;
    b[layer] += db;
    QaoaParams::new(g, b).unwrap()
}

proptest! {
    #![proptest_config(pinned(96))]

    #[test]
    fn norm_is_preserved(g in graph(), m in model(), q in params(3), init in initial()) {
        let state = run_qaoa(&g, &m, &q, init).unwrap();
        prop_assert!((state.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn total_is_sum_of_edges_and_of_the_distribution(
        g in graph(), m in model(), q in params(3), init in initial()
    ) {
        let state = run_qaoa(&g, &m, &q, init).unwrap();
        let t = state.expect_total(&g, &m).unwrap();
        let by_edge: f64 = g.edges().iter().map(|&e| state.expect_edge(e, &m).unwrap()).sum();
        prop_assert!((t - by_edge).abs() < 1e-10);
        let by_basis: f64 = (0..1usize << g.n())
            .map(|z| state.probability(z) * cost_value(&m, &g, &Bitstring::from_index(z, g.n())).unwrap())
            .sum();
        prop_assert!((t - by_basis).abs() < 1e-10);
    }

    #[test]
    fn angles_are_periodic(
        g in graph(), m in model(), q in params(3), init in initial(), layer_pick in 0usize..3
    ) {
        prop_assume!(q.depth() > 0);
        let layer = layer_pick % q.depth();
        let base = total(&g, &m, &q, init);
        let gamma_period = m.gamma_period();
        let expected_period = match m.degree() {
            None => 2.0 * PI,
            Some(d) => 4.0 * PI * d as f64,
        };
        prop_assert!((gamma_period - expected_period).abs() < 1e-12);
        let shifted_gamma = total(&g, &m, &shift_layer(&q, layer, gamma_period, 0.0), init);
        let shifted_beta = total(&g, &m, &shift_layer(&q, layer, 0.0, PI), init);
        prop_assert!((base - shifted_gamma).abs() < 1e-10);
        prop_assert!((base - shifted_beta).abs() < 1e-10);
    }

    #[test]
    fn negating_all_angles_keeps_the_expectation(
        g in graph(), m in model(), q in params(3), init in initial()
    ) {
        let a = total(&g, &m, &q, init);
        let b = total(&g, &m, &q.negated(), init);
        prop_assert!((a - b).abs() < 1e-10);
    }
}

#[test]
fn optimum_does_not_decrease_with_depth() {
    let cases = [
        (2, CostModel::max_cut(), InitialState::PlusProduct),
        (3, CostModel::max_cut(), InitialState::PlusProduct),
        (3, CostModel::mis(3).unwrap(), InitialState::AllZero),
        (3, CostModel::mis(3).unwrap(), InitialState::PlusProduct),
    ];
    for (d, model, init) in cases {
        let mut previous = f64::NEG_INFINITY;
        for p in 0..=2 {
            let options = OptimizeOptions {
                resolution: Some(if p <= 1 { 32 } else { 6 }),
                tolerance: 1e-9,
                ..OptimizeOptions::default()
            };
            let best = optimize(d, p, &model, init, &options).unwrap().best_value;
            assert!(
                best >= previous - 1e-9,
                "d={d} {model} p={p}: {best} < {previous}"
            );
            previous = best;
        }
    }
}
