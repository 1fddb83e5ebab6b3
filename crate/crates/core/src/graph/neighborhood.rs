//! Edge p-neighborhoods: the light cone of a single edge term at depth p.
//!
//! The neighborhood of edge `e` at radius `p` holds every edge reachable from
//! `e` in at most `p` edge-to-adjacent-edge steps. Equivalently, an edge other
//! than `e` is included when its nearer endpoint is within distance `p - 1` of
//! an endpoint of `e`. Its vertex set is exactly the vertices within distance
//! `p` of either endpoint.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use super::{Edge, Graph};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct Neighborhood {
    pub subgraph: Graph,
    /// Index of the middle edge inside `subgraph` (always 0; endpoints are
    /// subgraph vertices 0 and 1).
    pub middle_edge: usize,
    /// `vertex_map[i]` is the host vertex behind subgraph vertex `i`.
    pub vertex_map: Vec<usize>,
    pub radius: usize,
    pub is_tree: bool,
}

impl Neighborhood {
    pub fn middle_endpoints(&self) -> Edge {
        self.subgraph.edges()[self.middle_edge]
    }
}

/// Breadth-first sweep shared by the full extraction and the cheap tree test.
/// Returns host vertices in discovery order (endpoints first) and included
/// host edges, middle edge first.
fn sweep(g: &Graph, (u, v): Edge, p: usize) -> (Vec<usize>, Vec<Edge>) {
    let mut dist: HashMap<usize, usize> = HashMap::new();
    let mut order = vec![u, v];
    dist.insert(u, 0);
    dist.insert(v, 0);
    let mut queue: VecDeque<usize> = VecDeque::from([u, v]);
    let mut edges = vec![(u.min(v), u.max(v))];
    let mut seen_edges: HashSet<Edge> = edges.iter().copied().collect();

    while let Some(x) = queue.pop_front() {
        let dx = dist[&x];
        if dx >= p {
            continue;
        }
        for &y in g.neighbors(x) {
            let key = (x.min(y), x.max(y));
            if seen_edges.insert(key) {
                edges.push(key);
            }
            if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(y) {
                e.insert(dx + 1);
                order.push(y);
                queue.push_back(y);
            }
        }
    }
    (order, edges)
}

fn endpoints(g: &Graph, e: Edge) -> Result<Edge> {
    if !g.has_edge(e.0, e.1) {
        return Err(Error::invalid(format!(
            "edge ({}, {}) is not in the graph",
            e.0, e.1
        )));
    }
    Ok(e)
}

/// Extracts the radius-`p` neighborhood of edge `e`.
pub fn edge_neighborhood(g: &Graph, e: Edge, p: usize) -> Result<Neighborhood> {
    let e = endpoints(g, e)?;
    let (order, host_edges) = sweep(g, e, p);
    let local: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &h)| (h, i)).collect();
    let subgraph = Graph::from_edges(
        order.len(),
        host_edges.iter().map(|&(a, b)| (local[&a], local[&b])),
    )?;
    let is_tree = subgraph.is_tree();
    Ok(Neighborhood {
        subgraph,
        middle_edge: 0,
        vertex_map: order,
        radius: p,
        is_tree,
    })
}

/// Tree test without materializing the subgraph. The sweep result is always
/// connected, so counting suffices.
pub fn neighborhood_is_tree(g: &Graph, e: Edge, p: usize) -> Result<bool> {
    let e = endpoints(g, e)?;
    let (vertices, edges) = sweep(g, e, p);
    Ok(edges.len() + 1 == vertices.len())
}

/// Fraction of edges whose radius-`p` neighborhood is a tree. An edgeless
/// graph has no non-tree edges and reports 1.
pub fn tree_edge_fraction(g: &Graph, p: usize) -> f64 {
    if g.num_edges() == 0 {
        return 1.0;
    }
    let trees = g
        .edges()
        .iter()
        .filter(|&&e| neighborhood_is_tree(g, e, p).expect("edge taken from the graph"))
        .count();
    trees as f64 / g.num_edges() as f64
}
