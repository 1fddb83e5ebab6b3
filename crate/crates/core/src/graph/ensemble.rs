//! Random d-regular graph ensembles built from uniformly matched stubs.
//!
//! Both generators draw a configuration-model pairing and throw the whole
//! pairing away if it contains a self-loop or a repeated edge, so the output is
//! uniform over simple graphs of the ensemble.

use std::sync::OnceLock;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};
use crate::registry::Registry;
use crate::{rng_from_seed, SeededRng};

/// Upper bound on resampling rounds before giving up. For fixed small d the
/// acceptance rate is a constant (about e^-2 for d = 3), so this is never hit
/// in practice.
pub const MAX_GENERATION_ATTEMPTS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub n: usize,
    pub d: usize,
    /// Registered ensemble name, `general` or `bipartite` for the built-ins.
    pub kind: String,
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn new(n: usize, d: usize, kind: impl Into<String>, seed: u64) -> Self {
        Self {
            n,
            d,
            kind: kind.into(),
            seed,
        }
    }

    pub fn general(n: usize, d: usize, seed: u64) -> Self {
        Self::new(n, d, GeneralRegular::NAME, seed)
    }

    pub fn bipartite(n: usize, d: usize, seed: u64) -> Self {
        Self::new(n, d, BipartiteRegular::NAME, seed)
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self {
            seed,
            ..self.clone()
        }
    }
}

/// A family of random d-regular graphs.
pub trait Ensemble: Send + Sync {
    fn name(&self) -> &'static str;

    /// Rejects (n, d) pairs for which the ensemble is empty.
    fn validate(&self, n: usize, d: usize) -> Result<()>;

    /// One stub-matching draw; `None` if the pairing is not simple.
    fn try_sample(&self, n: usize, d: usize, rng: &mut SeededRng) -> Option<Graph>;

    fn sample(&self, n: usize, d: usize, rng: &mut SeededRng) -> Result<Graph> {
        self.validate(n, d)?;
        for _ in 0..MAX_GENERATION_ATTEMPTS {
            if let Some(g) = self.try_sample(n, d, rng) {
                return Ok(g);
            }
        }
        Err(Error::Generation {
            n,
            d,
            attempts: MAX_GENERATION_ATTEMPTS,
        })
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct GeneralRegular;

impl GeneralRegular {
    pub const NAME: &'static str = "general";
}

impl Ensemble for GeneralRegular {
    fn name(&self) -> &'static str {
        Self::NAME
    }

    fn validate(&self, n: usize, d: usize) -> Result<()> {
        if d == 0 {
            return Err(Error::invalid("degree must be at least 1"));
        }
        if d >= n {
            return Err(Error::invalid(format!("need d < n, got d={d}, n={n}")));
        }
        if !(n * d).is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "n*d must be even, got n={n}, d={d}"
            )));
        }
        Ok(())
    }

    fn try_sample(&self, n: usize, d: usize, rng: &mut SeededRng) -> Option<Graph> {
        let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        stubs.shuffle(rng);
        let edges = stubs.chunks_exact(2).map(|p| (p[0], p[1]));
        Graph::from_edges(n, edges).ok()
    }
}

/// Bipartite ensemble: vertices `0..n/2` on one side, `n/2..n` on the other.
#[derive(Debug, Clone, Copy, Default)]
pub struct BipartiteRegular;

impl BipartiteRegular {
    pub const NAME: &'static str = "bipartite";
}

impl Ensemble for BipartiteRegular {
    fn name(&self) -> &'static str {
        Self::NAME
    }

    fn validate(&self, n: usize, d: usize) -> Result<()> {
        if d == 0 {
            return Err(Error::invalid("degree must be at least 1"));
        }
        if !n.is_multiple_of(2) {
            return Err(Error::invalid(format!(
                "bipartite ensemble needs even n, got {n}"
            )));
        }
        if d > n / 2 {
            return Err(Error::invalid(format!(
                "need d <= n/2 for a simple bipartite graph, got d={d}, n={n}"
            )));
        }
        Ok(())
    }

    fn try_sample(&self, n: usize, d: usize, rng: &mut SeededRng) -> Option<Graph> {
        let half = n / 2;
        let mut right: Vec<usize> = (half..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
        right.shuffle(rng);
        let left = (0..half).flat_map(|v| std::iter::repeat_n(v, d));
        let g = Graph::from_edges(n, left.zip(right)).ok()?;
        let side = (0..n).map(|v| v >= half).collect();
        g.with_bipartition(side).ok()
    }
}

pub fn builtin_ensembles() -> Registry<dyn Ensemble> {
    let mut reg: Registry<dyn Ensemble> = Registry::new("ensemble");
    reg.register(GeneralRegular::NAME, Box::new(GeneralRegular))
        .expect("fresh registry");
    reg.register(BipartiteRegular::NAME, Box::new(BipartiteRegular))
        .expect("fresh registry");
    reg
}

/// Shared registry of the built-in ensembles.
pub fn ensembles() -> &'static Registry<dyn Ensemble> {
    static REG: OnceLock<Registry<dyn Ensemble>> = OnceLock::new();
    REG.get_or_init(builtin_ensembles)
}

/// Samples from whichever ensemble `spec.kind` names.
pub fn generate(spec: &EnsembleSpec) -> Result<Graph> {
    let ensemble = ensembles().get(&spec.kind)?;
    let mut rng = rng_from_seed(spec.seed);
    ensemble.sample(spec.n, spec.d, &mut rng)
}

pub fn generate_regular(spec: &EnsembleSpec) -> Result<Graph> {
    expect_kind(spec, GeneralRegular::NAME)?;
    generate(spec)
}

pub fn generate_bipartite_regular(spec: &EnsembleSpec) -> Result<Graph> {
    expect_kind(spec, BipartiteRegular::NAME)?;
    generate(spec)
}

fn expect_kind(spec: &EnsembleSpec, kind: &str) -> Result<()> {
    if spec.kind != kind {
        return Err(Error::invalid(format!(
            "expected a '{kind}' ensemble spec, got '{}'",
            spec.kind
        )));
    }
    Ok(())
}
