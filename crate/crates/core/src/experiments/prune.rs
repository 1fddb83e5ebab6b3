//! Greedy repair of a bitstring into an independent set.
//!
//! While some edge has both endpoints set, clear the larger endpoint of the
//! lexicographically smallest such edge. With the degree-d normalized cost,
//! clearing a vertex lowers the weight term by d/(2d) = 1/2 and removes at
//! least one unit penalty, so the cost never decreases and the final set is at
//! least as large as the starting cost.

use num_rational::Rational64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::sim::{cost_value_exact, Bitstring, CostModel};

fn ser_rational<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&format_args!("{}/{}", r.numer(), r.denom()))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PruneStep {
    pub edge: Edge,
    pub vertex_zeroed: usize,
    #[serde(serialize_with = "ser_rational")]
    pub cost_after: Rational64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PruneResult {
    pub input_bitstring: Bitstring,
    pub output_bitstring: Bitstring,
    #[serde(serialize_with = "ser_rational")]
    pub input_cost: Rational64,
    #[serde(serialize_with = "ser_rational")]
    pub output_cost: Rational64,
    pub output_set_size: usize,
    pub steps: Vec<PruneStep>,
}

impl PruneResult {
    pub fn input_cost_f64(&self) -> f64 {
        *self.input_cost.numer() as f64 / *self.input_cost.denom() as f64
    }

    /// Costs before the first step and after each step.
    pub fn cost_sequence(&self) -> Vec<Rational64> {
        std::iter::once(self.input_cost)
            .chain(self.steps.iter().map(|s| s.cost_after))
            .collect()
    }
}

pub fn is_independent_set(g: &Graph, b: &Bitstring) -> bool {
    g.edges().iter().all(|&(u, v)| !(b.get(u) && b.get(v)))
}

pub fn prune(g: &Graph, b: &Bitstring, d: usize) -> Result<PruneResult> {
    if g.degree() != Some(d) {
        return Err(Error::invalid(format!(
            "pruning needs a {d}-regular graph (graph degree: {:?})",
            g.degree()
        )));
    }
    let model = CostModel::mis(d)?;
    let input_cost = cost_value_exact(&model, g, b)?;

    let mut edges: Vec<Edge> = g.edges().to_vec();
    edges.sort_unstable();
    let mut out = b.clone();
    let mut cost = input_cost;
    let mut steps = Vec::new();
    // Clearing a bit never creates a violation, so one ordered pass finds the
    // smallest violated edge at every step.
    for &(u, v) in &edges {
        if out.get(u) && out.get(v) {
            out.set(v, false);
            cost = cost_value_exact(&model, g, &out)?;
            steps.push(PruneStep {
                edge: (u, v),
                vertex_zeroed: v,
                cost_after: cost,
            });
        }
    }
    Ok(PruneResult {
        input_bitstring: b.clone(),
        output_set_size: out.hamming_weight(),
        output_bitstring: out,
        input_cost,
        output_cost: cost,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn four_cycle() {
        let c4 = Graph::cycle(4);
        let r = prune(&c4, &"1100".parse().unwrap(), 2).unwrap();
        assert_eq!(r.output_bitstring.to_string(), "1000");
        assert_eq!(r.output_set_size, 1);
        assert_eq!(r.steps.len(), 1);
        assert_eq!((r.steps[0].edge, r.steps[0].vertex_zeroed), ((0, 1), 1));
        assert_eq!(r.input_cost, Rational64::new(0, 1));
        assert_eq!(r.output_cost, Rational64::new(1, 2));
    }

    #[test]
    fn zeros_unchanged() {
        let g = Graph::complete(4);
        let r = prune(&g, &Bitstring::zeros(4), 3).unwrap();
        assert!(r.steps.is_empty());
        assert_eq!(r.output_bitstring, Bitstring::zeros(4));
    }

    #[test]
    fn k4_all_ones() {
        let g = Graph::complete(4);
        let r = prune(&g, &"1111".parse().unwrap(), 3).unwrap();
        assert_eq!(r.input_cost, Rational64::new(-4, 1));
        assert_eq!(r.output_set_size, 1);
        assert!(is_independent_set(&g, &r.output_bitstring));
        // (0,1) clears 1, (0,2) clears 2, (0,3) clears 3.
        let zeroed: Vec<usize> = r.steps.iter().map(|s| s.vertex_zeroed).collect();
        assert_eq!(zeroed, vec![1, 2, 3]);
    }

    #[test]
    fn rejects_irregular_or_mismatched() {
        assert!(prune(&Graph::path(3), &"101".parse().unwrap(), 2).is_err());
        assert!(prune(&Graph::cycle(5), &"101".parse().unwrap(), 2).is_err());
        assert!(prune(&Graph::cycle(5), &"10100".parse().unwrap(), 3).is_err());
    }

    proptest! {
        #[test]
        fn pruning_contract(seed in 0u64..500, bits in proptest::collection::vec(any::<bool>(), 12)) {
            let g = crate::graph::generate(&crate::graph::EnsembleSpec::general(12, 3, seed)).unwrap();
            let b = Bitstring(bits);
            let r = prune(&g, &b, 3).unwrap();
            prop_assert!(is_independent_set(&g, &r.output_bitstring));
            let costs = r.cost_sequence();
            prop_assert!(costs.windows(2).all(|w| w[1] >= w[0]));
            if r.input_cost > Rational64::new(0, 1) {
                prop_assert!(Rational64::from_integer(r.output_set_size as i64) >= r.input_cost);
            }
            prop_assert!(r.steps.len() <= g.n());
        }
    }
}
