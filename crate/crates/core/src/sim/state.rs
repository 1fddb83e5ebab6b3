use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cost::{Bitstring, CostModel, CostTable};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::rng_from_seed;

/// Default qubit cap: 2^26 amplitudes, 1 GiB of complex doubles.
pub const DEFAULT_QUBIT_CAP: usize = 26;

/// Below this many amplitudes the mixer runs on the calling thread.
const PAR_THRESHOLD: usize = 1 << 16;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InitialState {
    /// |0...0>
    #[serde(rename = "zero")]
    AllZero,
    /// |+...+>
    #[default]
    #[serde(rename = "plus")]
    PlusProduct,
}

impl InitialState {
    pub fn name(self) -> &'static str {
        match self {
            InitialState::AllZero => "zero",
            InitialState::PlusProduct => "plus",
        }
    }
}

impl std::str::FromStr for InitialState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" => Ok(InitialState::AllZero),
            "plus" => Ok(InitialState::PlusProduct),
            _ => Err(Error::invalid(format!(
                "unknown initial state {s:?} (expected zero or plus)"
            ))),
        }
    }
}

/// Amplitudes over the 2^m basis strings; bit `i` of the index is qubit `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    m: usize,
    amps: Vec<Complex64>,
}

fn check_cap(what: &str, m: usize, cap: usize) -> Result<()> {
    if m > cap {
        return Err(Error::QubitCap {
            what: what.to_string(),
            required: m,
            cap,
        });
    }
    Ok(())
}

pub fn prepare_initial(m: usize, s: InitialState) -> Result<Statevector> {
    prepare_initial_capped(m, s, DEFAULT_QUBIT_CAP)
}

pub fn prepare_initial_capped(m: usize, s: InitialState, cap: usize) -> Result<Statevector> {
    check_cap("initial state", m, cap)?;
    let dim = 1usize << m;
    let amps = match s {
        InitialState::AllZero => {
            let mut a = vec![Complex64::new(0.0, 0.0); dim];
            a[0] = Complex64::new(1.0, 0.0);
            a
        }
        InitialState::PlusProduct => {
            vec![Complex64::new((dim as f64).sqrt().recip(), 0.0); dim]
        }
    };
    Ok(Statevector { m, amps })
}

impl Statevector {
    /// Wraps raw amplitudes; the length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        if !amps.len().is_power_of_two() {
            return Err(Error::invalid("amplitude count must be a power of two"));
        }
        let m = amps.len().trailing_zeros() as usize;
        Ok(Self { m, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.m
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn probability(&self, index: usize) -> f64 {
        self.amps[index].norm_sqr()
    }

    fn check_graph(&self, g: &Graph) -> Result<()> {
        if g.n() != self.m {
            return Err(Error::invalid(format!(
                "state has {} qubits but the graph has {} vertices",
                self.m,
                g.n()
            )));
        }
        Ok(())
    }

    /// Multiplies each amplitude by `exp(-i gamma C(b))`.
    pub fn apply_phase(&mut self, g: &Graph, model: &CostModel, gamma: f64) -> Result<()> {
        self.check_graph(g)?;
        self.apply_phase_table(&CostTable::build(g, model), gamma);
        Ok(())
    }

    /// Phase step with a precomputed cost table. Costs take few distinct
    /// values, so the exponentials are tabulated once per call.
    pub fn apply_phase_table(&mut self, table: &CostTable, gamma: f64) {
        assert_eq!(table.numerators.len(), self.amps.len(), "cost table size");
        if gamma == 0.0 {
            return;
        }
        let lo = *table.numerators.iter().min().expect("non-empty");
        let hi = *table.numerators.iter().max().expect("non-empty");
        let den = table.denominator as f64;
        let phases: Vec<Complex64> = (lo..=hi)
            .map(|num| Complex64::from_polar(1.0, -gamma * num as f64 / den))
            .collect();
        let apply = |(a, &num): (&mut Complex64, &i64)| *a *= phases[(num - lo) as usize];
        if self.amps.len() >= PAR_THRESHOLD {
            self.amps
                .par_iter_mut()
                .zip(table.numerators.par_iter())
                .for_each(apply);
        } else {
            self.amps
                .iter_mut()
                .zip(table.numerators.iter())
                .for_each(apply);
        }
    }

    /// Applies `exp(-i beta X)` to every qubit.
    pub fn apply_mixer(&mut self, beta: f64) {
        if beta == 0.0 {
            return;
        }
        let (s, c) = beta.sin_cos();
        for q in 0..self.m {
            let half = 1usize << q;
            let rotate = |block: &mut [Complex64]| {
                let (lo, hi) = block.split_at_mut(half);
                for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                    let (x, y) = (*a, *b);
                    // [[c, -is], [-is, c]]
                    *a = Complex64::new(c * x.re + s * y.im, c * x.im - s * y.re);
                    *b = Complex64::new(c * y.re + s * x.im, c * y.im - s * x.re);
                }
            };
            if self.amps.len() >= PAR_THRESHOLD {
                self.amps.par_chunks_mut(2 * half).for_each(rotate);
            } else {
                self.amps.chunks_mut(2 * half).for_each(rotate);
            }
        }
    }

    /// Probabilities of the four joint values of qubits `i` and `j`, indexed
    /// by `2*b_i + b_j`.
    pub fn pair_marginal(&self, i: usize, j: usize) -> [f64; 4] {
        let mut p = [0.0; 4];
        for (idx, a) in self.amps.iter().enumerate() {
            p[(((idx >> i) & 1) << 1) | ((idx >> j) & 1)] += a.norm_sqr();
        }
        p
    }

    /// Expectation of one edge term.
    pub fn expect_edge(&self, (i, j): Edge, model: &CostModel) -> Result<f64> {
        if i >= self.m || j >= self.m {
            return Err(Error::invalid(format!(
                "edge ({i}, {j}) out of range for {} qubits",
                self.m
            )));
        }
        let p = self.pair_marginal(i, j);
        let num: f64 = [(false, false), (false, true), (true, false), (true, true)]
            .iter()
            .zip(p)
            .map(|(&(a, b), prob)| prob * model.numerator(a, b) as f64)
            .sum();
        Ok(num / model.denominator() as f64)
    }

    /// Expectation of the full cost, summed over basis states.
    pub fn expect_total(&self, g: &Graph, model: &CostModel) -> Result<f64> {
        self.check_graph(g)?;
        Ok(self.expect_table(&CostTable::build(g, model)))
    }

    pub fn expect_table(&self, table: &CostTable) -> f64 {
        let num: f64 = self
            .amps
            .iter()
            .zip(&table.numerators)
            .map(|(a, &n)| a.norm_sqr() * n as f64)
            .sum();
        num / table.denominator as f64
    }

    /// Draws `count` independent measurement outcomes.
    pub fn sample_bitstrings(&self, count: usize, seed: u64) -> Vec<Bitstring> {
        let mut cumulative = Vec::with_capacity(self.amps.len());
        let mut acc = 0.0;
        for a in &self.amps {
            acc += a.norm_sqr();
            cumulative.push(acc);
        }
        let total = acc;
        let mut rng = rng_from_seed(seed);
        (0..count)
            .map(|_| {
                let u: f64 = rng.gen::<f64>() * total;
                let idx = cumulative
                    .partition_point(|&c| c <= u)
                    .min(self.amps.len() - 1);
                Bitstring::from_index(idx, self.m)
            })
            .collect()
    }
}
