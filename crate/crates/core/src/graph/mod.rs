//! Simple undirected graphs, random regular ensembles, edge neighborhoods and
//! short-cycle counting.

mod cycles;
mod ensemble;
mod io;
mod neighborhood;

pub use cycles::{count_cycles, CycleCensus};
pub use ensemble::{
    builtin_ensembles, ensembles, generate, generate_bipartite_regular, generate_regular,
    BipartiteRegular, Ensemble, EnsembleSpec, GeneralRegular, MAX_GENERATION_ATTEMPTS,
};
pub use neighborhood::{edge_neighborhood, neighborhood_is_tree, tree_edge_fraction, Neighborhood};

use serde::Serialize;

use crate::error::{Error, Result};

/// Undirected edge stored with `u < v`.
pub type Edge = (usize, usize);

/// A simple undirected graph.
///
/// Edges keep their insertion order, which fixes edge indices; each edge is
/// stored with its smaller endpoint first. `degree` is populated whenever every
/// vertex has the same number of neighbours.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    #[serde(skip)]
    adjacency: Vec<Vec<usize>>,
    degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bipartition: Option<Vec<bool>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and out-of-range
    /// endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut adjacency = vec![Vec::new(); n];
        let mut stored = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::invalid(format!(
                    "edge ({a}, {b}) has an endpoint outside 0..{n}"
                )));
            }
            if a == b {
                return Err(Error::invalid(format!("self-loop at vertex {a}")));
            }
            let (u, v) = (a.min(b), a.max(b));
            if adjacency[u].contains(&v) {
                return Err(Error::invalid(format!("duplicate edge ({u}, {v})")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
            stored.push((u, v));
        }
        let degree = uniform_degree(&adjacency);
        Ok(Self {
            n,
            edges: stored,
            adjacency,
            degree,
            bipartition: None,
        })
    }

    /// Attaches a two-class labeling; every edge must join the two classes.
    pub fn with_bipartition(mut self, side: Vec<bool>) -> Result<Self> {
        if side.len() != self.n {
            return Err(Error::invalid(format!(
                "bipartition has length {} but the graph has {} vertices",
                side.len(),
                self.n
            )));
        }
        if let Some(&(u, v)) = self.edges.iter().find(|&&(u, v)| side[u] == side[v]) {
            return Err(Error::invalid(format!(
                "edge ({u}, {v}) does not cross the bipartition"
            )));
        }
        self.bipartition = Some(side);
        Ok(self)
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path is simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        Self::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is simple")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edges(n, edges).expect("complete graph is simple")
    }

    /// K_{a,b} with vertices `0..a` on one side and `a..a+b` on the other.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)));
        let side = (0..a + b).map(|v| v >= a).collect();
        Self::from_edges(a + b, edges)
            .and_then(|g| g.with_bipartition(side))
            .expect("complete bipartite graph is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn vertex_degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// The common degree if the graph is regular.
    pub fn degree(&self) -> Option<usize> {
        self.degree
    }

    pub fn bipartition(&self) -> Option<&[bool]> {
        self.bipartition.as_deref()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.n && b < self.n && self.adjacency[a].contains(&b)
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edges.iter().position(|&e| e == key)
    }

    /// Number of edges crossing the stored bipartition.
    pub fn max_cut_of_bipartition(&self) -> Result<usize> {
        let side = self
            .bipartition
            .as_ref()
            .ok_or_else(|| Error::invalid("graph has no bipartition"))?;
        Ok(self
            .edges
            .iter()
            .filter(|&&(u, v)| side[u] != side[v])
            .count())
    }

    /// True when the graph has no cycles and is connected (`n >= 1`).
    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.edges.len() + 1 == self.n && self.is_connected()
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Applies a vertex relabeling `perm[old] = new`. The bipartition, if any,
    /// follows the vertices.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::invalid(
                "permutation length differs from vertex count",
            ));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::invalid("not a permutation"));
            }
        }
        let g = Self::from_edges(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))?;
        match &self.bipartition {
            Some(side) => {
                let mut moved = vec![false; self.n];
                for (old, &s) in side.iter().enumerate() {
                    moved[perm[old]] = s;
                }
                g.with_bipartition(moved)
            }
            None => Ok(g),
        }
    }
}

fn uniform_degree(adjacency: &[Vec<usize>]) -> Option<usize> {
    let first = adjacency.first()?.len();
    adjacency.iter().all(|a| a.len() == first).then_some(first)
}
