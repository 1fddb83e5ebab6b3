use serde::{Deserialize, Serialize};

use super::cost::{Bitstring, CostModel, CostTable};
use super::state::{prepare_initial_capped, InitialState, Statevector, DEFAULT_QUBIT_CAP};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

/// Angles of a depth-p schedule. Layer `k` applies the phase with `gammas[k]`
/// and then the mixer with `betas[k]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QaoaParams {
    gammas: Vec<f64>,
    betas: Vec<f64>,
}

impl QaoaParams {
    pub fn new(gammas: Vec<f64>, betas: Vec<f64>) -> Result<Self> {
        if gammas.len() != betas.len() {
            return Err(Error::invalid(format!(
                "got {} gammas and {} betas",
                gammas.len(),
                betas.len()
            )));
        }
        if gammas.iter().chain(&betas).any(|x| !x.is_finite()) {
            return Err(Error::invalid("angles must be finite"));
        }
        Ok(Self { gammas, betas })
    }

    pub fn zeros(p: usize) -> Self {
        Self {
            gammas: vec![0.0; p],
            betas: vec![0.0; p],
        }
    }

    pub fn depth(&self) -> usize {
        self.gammas.len()
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn betas(&self) -> &[f64] {
        &self.betas
    }

    /// Flat view `[gamma_1..gamma_p, beta_1..beta_p]`, the optimizer's
    /// coordinates and the order used for lexicographic tie-breaks.
    pub fn to_flat(&self) -> Vec<f64> {
        self.gammas.iter().chain(&self.betas).copied().collect()
    }

    pub fn from_flat(flat: &[f64]) -> Result<Self> {
        if !flat.len().is_multiple_of(2) {
            return Err(Error::invalid(
                "flat parameter vector must have even length",
            ));
        }
        let (g, b) = flat.split_at(flat.len() / 2);
        Self::new(g.to_vec(), b.to_vec())
    }

    /// Appends zero-angle layers up to depth `p`; the unitary is unchanged.
    pub fn padded(&self, p: usize) -> Self {
        let mut out = self.clone();
        out.gammas.resize(p.max(self.depth()), 0.0);
        out.betas.resize(p.max(self.depth()), 0.0);
        out
    }

    pub fn negated(&self) -> Self {
        Self {
            gammas: self.gammas.iter().map(|x| -x).collect(),
            betas: self.betas.iter().map(|x| -x).collect(),
        }
    }
}

/// Precomputed pieces of a QAOA run on a fixed graph, for repeated
/// evaluation at many parameter points.
#[derive(Debug, Clone)]
pub struct QaoaCircuit {
    n: usize,
    table: CostTable,
    initial: InitialState,
}

impl QaoaCircuit {
    pub fn new(g: &Graph, model: &CostModel, initial: InitialState, cap: usize) -> Result<Self> {
        if g.n() > cap {
            return Err(Error::QubitCap {
                what: "QAOA simulation".into(),
                required: g.n(),
                cap,
            });
        }
        Ok(Self {
            n: g.n(),
            table: CostTable::build(g, model),
            initial,
        })
    }

    pub fn table(&self) -> &CostTable {
        &self.table
    }

    pub fn run(&self, params: &QaoaParams) -> Statevector {
        let mut state = prepare_initial_capped(self.n, self.initial, usize::MAX)
            .expect("cap checked at construction");
        for (&gamma, &beta) in params.gammas().iter().zip(params.betas()) {
            state.apply_phase_table(&self.table, gamma);
            state.apply_mixer(beta);
        }
        state
    }
}

pub fn run_qaoa(
    g: &Graph,
    model: &CostModel,
    params: &QaoaParams,
    initial: InitialState,
) -> Result<Statevector> {
    run_qaoa_capped(g, model, params, initial, DEFAULT_QUBIT_CAP)
}

pub fn run_qaoa_capped(
    g: &Graph,
    model: &CostModel,
    params: &QaoaParams,
    initial: InitialState,
    cap: usize,
) -> Result<Statevector> {
    Ok(QaoaCircuit::new(g, model, initial, cap)?.run(params))
}

pub fn expect_edge(state: &Statevector, e: Edge, model: &CostModel) -> Result<f64> {
    state.expect_edge(e, model)
}

pub fn expect_total(state: &Statevector, g: &Graph, model: &CostModel) -> Result<f64> {
    state.expect_total(g, model)
}

pub fn sample_bitstrings(state: &Statevector, count: usize, seed: u64) -> Vec<Bitstring> {
    state.sample_bitstrings(count, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{cost_value, prepare_initial};
    use approx::assert_abs_diff_eq;

    #[test]
    fn params_validation() {
        assert!(QaoaParams::new(vec![0.1], vec![]).is_err());
        assert!(QaoaParams::new(vec![f64::NAN], vec![0.0]).is_err());
        let p = QaoaParams::new(vec![0.1, 0.2], vec![0.3, 0.4]).unwrap();
        assert_eq!(p.to_flat(), vec![0.1, 0.2, 0.3, 0.4]);
        assert_eq!(QaoaParams::from_flat(&p.to_flat()).unwrap(), p);
        assert_eq!(p.padded(3).gammas(), &[0.1, 0.2, 0.0]);
        assert_eq!(QaoaParams::zeros(0).depth(), 0);
    }

    #[test]
    fn depth_zero_is_the_initial_state() {
        let g = Graph::cycle(5);
        for init in [InitialState::AllZero, InitialState::PlusProduct] {
            let s = run_qaoa(&g, &CostModel::max_cut(), &QaoaParams::zeros(0), init).unwrap();
            assert_eq!(s, prepare_initial(5, init).unwrap());
        }
    }

    #[test]
    fn zero_angles_give_half_the_edges() {
        let g = crate::graph::generate(&crate::graph::EnsembleSpec::general(10, 3, 2)).unwrap();
        let mc = CostModel::max_cut();
        let s = run_qaoa(&g, &mc, &QaoaParams::zeros(2), InitialState::PlusProduct).unwrap();
        assert_abs_diff_eq!(expect_total(&s, &g, &mc).unwrap(), 7.5, epsilon = 1e-12);
    }

    /// Single edge, one layer, from |++>. The phase only touches the cut
    /// states |01>, |10>; the mixer then acts on each qubit. Closed form:
    /// <C> = 1/2 + (1/2) sin(4 beta) sin(gamma).
    #[test]
    fn single_edge_closed_form() {
        let g = Graph::path(2);
        let mc = CostModel::max_cut();
        for &(gamma, beta) in &[(0.3, 0.2), (1.1, -0.7), (2.5, 0.9), (-0.4, 0.35)] {
            let params = QaoaParams::new(vec![gamma], vec![beta]).unwrap();
            let s = run_qaoa(&g, &mc, &params, InitialState::PlusProduct).unwrap();
            let expected = 0.5 + 0.5 * (4.0 * beta).sin() * gamma.sin();
            assert_abs_diff_eq!(
                s.expect_edge((0, 1), &mc).unwrap(),
                expected,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn qubit_cap_is_enforced() {
        let g = Graph::cycle(8);
        let err = run_qaoa_capped(
            &g,
            &CostModel::max_cut(),
            &QaoaParams::zeros(1),
            InitialState::PlusProduct,
            6,
        )
        .unwrap_err();
        assert!(matches!(
            err,
            Error::QubitCap {
                required: 8,
                cap: 6,
                ..
            }
        ));
    }

    #[test]
    fn sampled_cost_tracks_expectation() {
        let g = Graph::cycle(6);
        let mc = CostModel::max_cut();
        let params = QaoaParams::new(vec![0.6], vec![0.4]).unwrap();
        let s = run_qaoa(&g, &mc, &params, InitialState::PlusProduct).unwrap();
        let exact = s.expect_total(&g, &mc).unwrap();
        let n = 20_000;
        let costs: Vec<f64> = sample_bitstrings(&s, n, 17)
            .iter()
            .map(|b| cost_value(&mc, &g, b).unwrap())
            .collect();
        let mean = costs.iter().sum::<f64>() / n as f64;
        let var = costs.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
        let se = (var / n as f64).sqrt();
        assert!(
            (mean - exact).abs() < 5.0 * se,
            "mean {mean} exact {exact} se {se}"
        );
    }
}
