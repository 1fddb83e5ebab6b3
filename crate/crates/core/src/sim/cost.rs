//! Edge cost models. Every model has rational edge values with a common
//! denominator, which keeps cost tables in integers and fixes the period of
//! the phase operator.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_rational::Rational64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::registry::Registry;

/// One edge's contribution to the cost function.
pub trait EdgeCost: Send + Sync + fmt::Debug {
    fn name(&self) -> &'static str;

    /// Degree parameter baked into the model, if any.
    fn degree(&self) -> Option<usize> {
        None
    }

    /// Common denominator of all edge values.
    fn denominator(&self) -> i64;

    /// Edge value times [`EdgeCost::denominator`].
    fn numerator(&self, bi: bool, bj: bool) -> i64;
}

/// Max-Cut: the edge is satisfied when its endpoints disagree.
#[derive(Debug, Clone, Copy, Default)]
pub struct MaxCut;

impl MaxCut {
    pub const NAME: &'static str = "maxcut";
}

impl EdgeCost for MaxCut {
    fn name(&self) -> &'static str {
        Self::NAME
    }

    fn denominator(&self) -> i64 {
        1
    }

    fn numerator(&self, bi: bool, bj: bool) -> i64 {
        i64::from(bi ^ bj)
    }
}

/// Independent-set cost for degree-d graphs: `(b_i + b_j) / 2d - b_i b_j`.
#[derive(Debug, Clone, Copy)]
pub struct IndependentSet {
    degree: usize,
}

impl IndependentSet {
    pub const NAME: &'static str = "mis";

    pub fn new(degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::invalid("independent-set cost needs degree d >= 1"));
        }
        Ok(Self { degree })
    }
}

impl EdgeCost for IndependentSet {
    fn name(&self) -> &'static str {
        Self::NAME
    }

    fn degree(&self) -> Option<usize> {
        Some(self.degree)
    }

    fn denominator(&self) -> i64 {
        2 * self.degree as i64
    }

    fn numerator(&self, bi: bool, bj: bool) -> i64 {
        let (a, b) = (i64::from(bi), i64::from(bj));
        a + b - self.denominator() * a * b
    }
}

/// Shared handle to a cost model.
#[derive(Clone)]
pub struct CostModel(Arc<dyn EdgeCost>);

impl CostModel {
    pub fn new(model: impl EdgeCost + 'static) -> Self {
        Self(Arc::new(model))
    }

    pub fn max_cut() -> Self {
        Self::new(MaxCut)
    }

    pub fn mis(degree: usize) -> Result<Self> {
        Ok(Self::new(IndependentSet::new(degree)?))
    }

    /// Looks a model up in the shared registry. `degree` is forwarded to models
    /// that need it.
    pub fn from_name(name: &str, degree: Option<usize>) -> Result<Self> {
        cost_models().get(name)?(degree)
    }

    pub fn name(&self) -> &'static str {
        self.0.name()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    pub fn denominator(&self) -> i64 {
        self.0.denominator()
    }

    pub fn numerator(&self, bi: bool, bj: bool) -> i64 {
        self.0.numerator(bi, bj)
    }

    pub fn edge_value(&self, bi: bool, bj: bool) -> Rational64 {
        Rational64::new(self.numerator(bi, bj), self.denominator())
    }

    /// Period of `gamma`: the spectrum of the cost operator lies in
    /// `(1/denominator) * Z`.
    pub fn gamma_period(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.denominator() as f64
    }

    fn numerators(&self) -> [i64; 4] {
        [
            self.numerator(false, false),
            self.numerator(false, true),
            self.numerator(true, false),
            self.numerator(true, true),
        ]
    }

    /// Smallest and largest single-edge values.
    pub fn edge_value_range(&self) -> (f64, f64) {
        let nums = self.numerators();
        let den = self.denominator() as f64;
        let lo = *nums.iter().min().expect("four values");
        let hi = *nums.iter().max().expect("four values");
        (lo as f64 / den, hi as f64 / den)
    }
}

impl PartialEq for CostModel {
    fn eq(&self, other: &Self) -> bool {
        self.name() == other.name() && self.degree() == other.degree()
    }
}

impl fmt::Debug for CostModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for CostModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree() {
            Some(d) => write!(f, "{}(d={d})", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

impl Serialize for CostModel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            kind: &'static str,
            #[serde(skip_serializing_if = "Option::is_none")]
            degree: Option<usize>,
        }
        Repr {
            kind: self.name(),
            degree: self.degree(),
        }
        .serialize(s)
    }
}

pub type CostFactory = dyn Fn(Option<usize>) -> Result<CostModel> + Send + Sync;

pub fn builtin_cost_models() -> Registry<CostFactory> {
    let mut reg: Registry<CostFactory> = Registry::new("cost model");
    reg.register(MaxCut::NAME, Box::new(|_| Ok(CostModel::max_cut())))
        .expect("fresh registry");
    reg.register(
        IndependentSet::NAME,
        Box::new(|d| {
            let d = d.ok_or_else(|| Error::invalid("the mis cost model needs a degree"))?;
            CostModel::mis(d)
        }),
    )
    .expect("fresh registry");
    reg
}

pub fn cost_models() -> &'static Registry<CostFactory> {
    static REG: OnceLock<Registry<CostFactory>> = OnceLock::new();
    REG.get_or_init(builtin_cost_models)
}

/// A 0/1 assignment to the vertices; character `i` of the text form is vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bitstring(pub Vec<bool>);

impl Bitstring {
    pub fn zeros(n: usize) -> Self {
        Self(vec![false; n])
    }

    /// Bit `i` of `index` becomes vertex `i`.
    pub fn from_index(index: usize, n: usize) -> Self {
        Self((0..n).map(|i| (index >> i) & 1 == 1).collect())
    }

    pub fn to_index(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &b)| acc | (usize::from(b) << i))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, value: bool) {
        self.0[i] = value;
    }

    pub fn hamming_weight(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0
            .iter()
            .try_for_each(|&b| f.write_str(if b { "1" } else { "0" }))
    }
}

impl FromStr for Bitstring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::invalid(format!("bitstring contains {c:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

impl Serialize for Bitstring {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn edge_cost(model: &CostModel, bi: bool, bj: bool) -> Rational64 {
    model.edge_value(bi, bj)
}

/// Exact cost of an assignment.
pub fn cost_value_exact(model: &CostModel, g: &Graph, b: &Bitstring) -> Result<Rational64> {
    if b.len() != g.n() {
        return Err(Error::invalid(format!(
            "bitstring has length {} but the graph has {} vertices",
            b.len(),
            g.n()
        )));
    }
    let num: i64 = g
        .edges()
        .iter()
        .map(|&(u, v)| model.numerator(b.get(u), b.get(v)))
        .sum();
    Ok(Rational64::new(num, model.denominator()))
}

pub fn cost_value(model: &CostModel, g: &Graph, b: &Bitstring) -> Result<f64> {
    let r = cost_value_exact(model, g, b)?;
    Ok(*r.numer() as f64 / *r.denom() as f64)
}

/// Cost of every basis state, scaled by the model denominator.
#[derive(Debug, Clone)]
pub struct CostTable {
    pub numerators: Vec<i64>,
    pub denominator: i64,
}

impl CostTable {
    pub fn build(g: &Graph, model: &CostModel) -> Self {
        let dim = 1usize << g.n();
        let mut numerators = vec![0i64; dim];
        let table = model.numerators();
        for &(u, v) in g.edges() {
            for (idx, slot) in numerators.iter_mut().enumerate() {
                let key = (((idx >> u) & 1) << 1) | ((idx >> v) & 1);
                *slot += table[key];
            }
        }
        Self {
            numerators,
            denominator: model.denominator(),
        }
    }

    pub fn value(&self, index: usize) -> f64 {
        self.numerators[index] as f64 / self.denominator as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn maxcut_edge_values() {
        let mc = CostModel::max_cut();
        assert_eq!(edge_cost(&mc, false, true), r(1, 1));
        assert_eq!(edge_cost(&mc, true, false), r(1, 1));
        assert_eq!(edge_cost(&mc, true, true), r(0, 1));
        assert_eq!(edge_cost(&mc, false, false), r(0, 1));
    }

    #[test]
    fn mis_edge_values() {
        let mis = CostModel::mis(3).unwrap();
        assert_eq!(edge_cost(&mis, true, true), r(-2, 3));
        assert_eq!(edge_cost(&mis, true, false), r(1, 6));
        assert_eq!(edge_cost(&mis, false, false), r(0, 1));
        assert!(CostModel::mis(0).is_err());
        assert_eq!(mis.edge_value_range(), (-2.0 / 3.0, 1.0 / 6.0));
    }

    #[test]
    fn registry_lookup() {
        assert_eq!(
            CostModel::from_name("maxcut", None).unwrap(),
            CostModel::max_cut()
        );
        assert_eq!(
            CostModel::from_name("mis", Some(4)).unwrap(),
            CostModel::mis(4).unwrap()
        );
        assert!(CostModel::from_name("mis", None).is_err());
        assert!(CostModel::from_name("coloring", None).is_err());
    }

    #[test]
    fn cost_values() {
        let k33 = Graph::complete_bipartite(3, 3);
        let side: Bitstring = "000111".parse().unwrap();
        assert_eq!(cost_value(&CostModel::max_cut(), &k33, &side).unwrap(), 9.0);

        let c5 = Graph::cycle(5);
        assert_eq!(
            cost_value(&CostModel::max_cut(), &c5, &Bitstring::zeros(5)).unwrap(),
            0.0
        );

        let k4 = Graph::complete(4);
        let ones: Bitstring = "1111".parse().unwrap();
        let mis = CostModel::mis(3).unwrap();
        assert_eq!(cost_value_exact(&mis, &k4, &ones).unwrap(), r(-4, 1));
        assert!(cost_value(&mis, &k4, &"111".parse().unwrap()).is_err());
    }

    #[test]
    fn bitstring_text_and_index() {
        let b: Bitstring = "1101".parse().unwrap();
        assert_eq!(b.to_index(), 0b1011);
        assert_eq!(Bitstring::from_index(0b1011, 4), b);
        assert_eq!(b.to_string(), "1101");
        assert_eq!(b.hamming_weight(), 3);
        assert!("10a".parse::<Bitstring>().is_err());
    }

    #[test]
    fn table_matches_direct_cost() {
        let g = Graph::complete(4);
        for model in [CostModel::max_cut(), CostModel::mis(3).unwrap()] {
            let table = CostTable::build(&g, &model);
            for idx in 0..16 {
                let b = Bitstring::from_index(idx, 4);
                assert_eq!(table.value(idx), cost_value(&model, &g, &b).unwrap());
            }
        }
    }
}
