//! Test helpers shared by the integration suites: a dense-matrix QAOA built
//! independently of the simulator, and enumeration of small graphs.

#![allow(dead_code)]

use num_complex::Complex64;
use qaoa_locality::{Graph, InitialState, QaoaParams};

pub type Matrix = Vec<Vec<Complex64>>;

/// Edge costs written out by hand, not taken from the crate.
#[derive(Debug, Clone, Copy)]
pub enum HandCost {
    MaxCut,
    /// Independent-set cost with degree normalization d.
    Mis(usize),
}

impl HandCost {
    pub fn value(self, g: &Graph, z: usize) -> f64 {
        let bit = |v: usize| ((z >> v) & 1) as f64;
        g.edges()
            .iter()
            .map(|&(i, j)| match self {
                HandCost::MaxCut => (bit(i) - bit(j)).abs(),
                HandCost::Mis(d) => (bit(i) + bit(j)) / (2 * d) as f64 - bit(i) * bit(j),
            })
            .sum()
    }
}

fn zeros(n: usize) -> Matrix {
    vec![vec![Complex64::new(0.0, 0.0); n]; n]
}

fn identity(n: usize) -> Matrix {
    let mut m = zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Complex64::new(1.0, 0.0);
    }
    m
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut c = zeros(n);
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                c[i][j] += aik * b[k][j];
            }
        }
    }
    c
}

fn scale(a: &Matrix, s: Complex64) -> Matrix {
    a.iter()
        .map(|row| row.iter().map(|&x| x * s).collect())
        .collect()
}

fn add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(&x, &y)| x + y).collect())
        .collect()
}

fn one_norm(a: &Matrix) -> f64 {
    (0..a.len())
        .map(|j| a.iter().map(|row| row[j].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
pub fn expm(a: &Matrix) -> Matrix {
    let n = a.len();
    let mut squarings = 0;
    let mut norm = one_norm(a);
    while norm > 0.25 {
        norm /= 2.0;
        squarings += 1;
    }
    let scaled = scale(a, Complex64::new(0.5f64.powi(squarings), 0.0));
    let mut result = identity(n);
    let mut term = identity(n);
    for k in 1..=24 {
        term = scale(&matmul(&term, &scaled), Complex64::new(1.0 / k as f64, 0.0));
        result = add(&result, &term);
    }
    for _ in 0..squarings {
        result = matmul(&result, &result);
    }
    result
}

/// Transverse-field mixer `sum_i X_i` as a dense matrix.
pub fn mixer_hamiltonian(m: usize) -> Matrix {
    let dim = 1 << m;
    let mut b = zeros(dim);
    for z in 0..dim {
        for i in 0..m {
            b[z][z ^ (1 << i)] += Complex64::new(1.0, 0.0);
        }
    }
    b
}

pub fn cost_hamiltonian(g: &Graph, cost: HandCost) -> Matrix {
    let dim = 1 << g.n();
    let mut c = zeros(dim);
    for (z, row) in c.iter_mut().enumerate() {
        row[z] = Complex64::new(cost.value(g, z), 0.0);
    }
    c
}

pub fn initial_vector(m: usize, initial: InitialState) -> Vec<Complex64> {
    let dim = 1 << m;
    match initial {
        InitialState::AllZero => {
            let mut v = vec![Complex64::new(0.0, 0.0); dim];
            v[0] = Complex64::new(1.0, 0.0);
            v
        }
        InitialState::PlusProduct => vec![Complex64::new((dim as f64).powf(-0.5), 0.0); dim],
    }
}

fn apply(a: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(&x, &y)| x * y).sum())
        .collect()
}

/// `prod_k exp(-i beta_k B) exp(-i gamma_k C)` applied to the initial state,
/// with every exponential formed from dense matrices.
pub fn dense_qaoa(
    g: &Graph,
    cost: HandCost,
    params: &QaoaParams,
    initial: InitialState,
) -> Vec<Complex64> {
    let b = mixer_hamiltonian(g.n());
    let c = cost_hamiltonian(g, cost);
    let mut state = initial_vector(g.n(), initial);
    for (&gamma, &beta) in params.gammas().iter().zip(params.betas()) {
        state = apply(&expm(&scale(&c, Complex64::new(0.0, -gamma))), &state);
        state = apply(&expm(&scale(&b, Complex64::new(0.0, -beta))), &state);
    }
    state
}

pub fn max_amplitude_difference(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Every labelled simple graph on exactly `n` vertices.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    (0..1u32 << pairs.len())
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e);
            Graph::from_edges(n, edges).expect("simple by construction")
        })
        .collect()
}
