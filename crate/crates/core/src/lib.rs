//! Light-cone analysis of the depth-p QAOA on random regular graphs.
//!
//! At depth `p` the expectation of a single edge term only depends on the
//! edge's radius-`p` neighborhood. When that neighborhood is a tree, the value
//! is the same for every such edge and for every graph, bipartite or not. The
//! crate computes that tree value exactly with a statevector simulator, checks
//! it against full-graph simulation, measures how many edges of random regular
//! graphs actually have tree neighborhoods, and turns known bounds on the
//! Max-Cut and independent-set optima of random regular graphs into ceilings on
//! the approximation ratio reachable on bipartite instances.
//!
//! Module map:
//! - [`graph`]: graphs, random d-regular ensembles, neighborhoods, cycle counts
//! - [`sim`]: cost models and the statevector QAOA
//! - [`tree`]: the canonical neighborhood tree and its edge expectation
//! - [`optimize`]: grid search plus derivative-free refinement of the angles
//! - [`experiments`]: the reproducible experiment drivers and reports

pub mod error;
pub mod experiments;
pub mod graph;
pub mod optimize;
pub mod registry;
pub mod sim;
pub mod tree;

pub use error::{Error, Result};
pub use graph::{EnsembleSpec, Graph, Neighborhood};
pub use optimize::{OptResult, SearchDomain};
pub use sim::{Bitstring, CostModel, InitialState, QaoaParams, Statevector};
pub use tree::{CanonicalTree, TreeExpectation};

use rand::SeedableRng;

/// The generator behind every stochastic operation.
pub type SeededRng = rand_chacha::ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SeededRng {
    SeededRng::seed_from_u64(seed)
}
