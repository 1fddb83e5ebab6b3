//! Exact statevector simulation of the depth-p QAOA.
//!
//! The circuit is `U = U_B(beta_p) U_C(gamma_p) ... U_B(beta_1) U_C(gamma_1)`
//! with `U_C(gamma) = exp(-i gamma C)` diagonal and
//! `U_B(beta) = prod_j exp(-i beta X_j)`. Vertex `i` is bit `i` of the basis
//! index (least significant bit is vertex 0).

mod cost;
mod qaoa;
mod state;

pub use cost::{
    builtin_cost_models, cost_models, cost_value, cost_value_exact, edge_cost, Bitstring,
    CostFactory, CostModel, CostTable, EdgeCost, IndependentSet, MaxCut,
};
pub use qaoa::{
    expect_edge, expect_total, run_qaoa, run_qaoa_capped, sample_bitstrings, QaoaCircuit,
    QaoaParams,
};
pub use state::{
    prepare_initial, prepare_initial_capped, InitialState, Statevector, DEFAULT_QUBIT_CAP,
};
