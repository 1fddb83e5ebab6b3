//! The canonical d-regular edge neighborhood tree and the single-edge QAOA
//! expectation on it.
//!
//! Two complete (d-1)-ary trees of depth p hang off the endpoints of a middle
//! edge. Any edge of a d-regular graph whose radius-p neighborhood is a tree
//! sees exactly this shape, so its expectation at depth p equals the value
//! computed here regardless of the rest of the graph.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::sim::{CostModel, InitialState, QaoaCircuit, QaoaParams, DEFAULT_QUBIT_CAP};

#[derive(Debug, Clone, Serialize)]
pub struct CanonicalTree {
    pub d: usize,
    pub p: usize,
    pub graph: Graph,
    /// Always edge 0, joining vertices 0 and 1.
    pub middle_edge: usize,
    /// Distance of each vertex from the nearer middle endpoint.
    pub depth_of: Vec<usize>,
}

/// `2 * sum_{k=0..p} (d-1)^k`, or `None` on overflow.
pub fn canonical_tree_size(d: usize, p: usize) -> Option<usize> {
    let mut level = 1usize;
    let mut total = 0usize;
    for _ in 0..=p {
        total = total.checked_add(level)?;
        level = level.checked_mul(d.checked_sub(1)?)?;
    }
    total.checked_mul(2)
}

pub fn build_canonical_tree(d: usize, p: usize) -> Result<CanonicalTree> {
    build_canonical_tree_capped(d, p, DEFAULT_QUBIT_CAP)
}

/// Builds the tree with breadth-first labels: endpoints 0 and 1, then each
/// level lists the children on vertex 0's side before those on vertex 1's side.
pub fn build_canonical_tree_capped(d: usize, p: usize, cap: usize) -> Result<CanonicalTree> {
    if d < 2 {
        return Err(Error::invalid(format!(
            "canonical tree needs d >= 2, got {d}"
        )));
    }
    let what = format!("canonical tree (d={d}, p={p})");
    let size = canonical_tree_size(d, p).ok_or_else(|| Error::QubitCap {
        what: what.clone(),
        required: usize::MAX,
        cap,
    })?;
    if size > cap {
        return Err(Error::QubitCap {
            what,
            required: size,
            cap,
        });
    }

    let mut edges: Vec<Edge> = vec![(0, 1)];
    let mut depth_of = vec![0, 0];
    let mut frontiers = [vec![0usize], vec![1usize]];
    let mut next = 2usize;
    for level in 1..=p {
        for frontier in frontiers.iter_mut() {
            let mut children = Vec::with_capacity(frontier.len() * (d - 1));
            for &parent in frontier.iter() {
                for _ in 0..d - 1 {
                    edges.push((parent, next));
                    depth_of.push(level);
                    children.push(next);
                    next += 1;
                }
            }
            *frontier = children;
        }
    }
    debug_assert_eq!(next, size);
    let graph = Graph::from_edges(size, edges)?;
    Ok(CanonicalTree {
        d,
        p,
        graph,
        middle_edge: 0,
        depth_of,
    })
}

impl CanonicalTree {
    pub fn num_qubits(&self) -> usize {
        self.graph.n()
    }

    pub fn middle_endpoints(&self) -> Edge {
        self.graph.edges()[self.middle_edge]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TreeExpectation {
    pub model: CostModel,
    pub d: usize,
    pub p: usize,
    pub params: QaoaParams,
    pub initial: InitialState,
    pub value: f64,
}

/// Reusable evaluator of the middle-edge expectation for one (d, p, model,
/// initial state); the cost table is built once.
#[derive(Debug, Clone)]
pub struct TreeObjective {
    tree: CanonicalTree,
    model: CostModel,
    initial: InitialState,
    circuit: QaoaCircuit,
}

impl TreeObjective {
    pub fn new(d: usize, p: usize, model: &CostModel, initial: InitialState) -> Result<Self> {
        Self::with_cap(d, p, model, initial, DEFAULT_QUBIT_CAP)
    }

    pub fn with_cap(
        d: usize,
        p: usize,
        model: &CostModel,
        initial: InitialState,
        cap: usize,
    ) -> Result<Self> {
        let tree = build_canonical_tree_capped(d, p, cap)?;
        let circuit = QaoaCircuit::new(&tree.graph, model, initial, cap)?;
        Ok(Self {
            tree,
            model: model.clone(),
            initial,
            circuit,
        })
    }

    pub fn tree(&self) -> &CanonicalTree {
        &self.tree
    }

    pub fn model(&self) -> &CostModel {
        &self.model
    }

    pub fn initial(&self) -> InitialState {
        self.initial
    }

    pub fn depth(&self) -> usize {
        self.tree.p
    }

    pub fn evaluate(&self, params: &QaoaParams) -> Result<f64> {
        if params.depth() != self.tree.p {
            return Err(Error::invalid(format!(
                "schedule has depth {} but the tree has radius {}",
                params.depth(),
                self.tree.p
            )));
        }
        let state = self.circuit.run(params);
        state.expect_edge(self.tree.middle_endpoints(), &self.model)
    }
}

pub fn tree_expectation(
    d: usize,
    p: usize,
    model: &CostModel,
    params: &QaoaParams,
    initial: InitialState,
) -> Result<TreeExpectation> {
    if params.depth() != p {
        return Err(Error::invalid(format!(
            "schedule has depth {} but p = {p}",
            params.depth()
        )));
    }
    let value = TreeObjective::new(d, p, model, initial)?.evaluate(params)?;
    Ok(TreeExpectation {
        model: model.clone(),
        d,
        p,
        params: params.clone(),
        initial,
        value,
    })
}

/// Leading term `(n d / 2) * C_tree` of the ensemble-averaged cost. The
/// sublinear correction from non-tree edges has no known constant and is only
/// flagged.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EnsemblePrediction {
    pub leading_term: f64,
    pub finite_size_correction_unquantified: bool,
}

pub fn predicted_ensemble_cost(n: usize, d: usize, tree_value: f64) -> EnsemblePrediction {
    EnsemblePrediction {
        leading_term: (n * d) as f64 / 2.0 * tree_value,
        finite_size_correction_unquantified: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::run_qaoa;
    use approx::assert_abs_diff_eq;

    #[test]
    fn sizes() {
        let t = build_canonical_tree(3, 1).unwrap();
        assert_eq!((t.graph.n(), t.graph.num_edges()), (6, 5));
        let t = build_canonical_tree(3, 2).unwrap();
        assert_eq!((t.graph.n(), t.graph.num_edges()), (14, 13));
        assert_eq!(canonical_tree_size(3, 3), Some(30));
        assert_eq!(canonical_tree_size(4, 2), Some(26));
    }

    #[test]
    fn degrees_and_depths() {
        for (d, p) in [(3, 2), (4, 1), (2, 3), (5, 1)] {
            let t = build_canonical_tree(d, p).unwrap();
            assert!(t.graph.is_tree());
            for v in 0..t.graph.n() {
                let expected = if t.depth_of[v] == p { 1 } else { d };
                assert_eq!(t.graph.vertex_degree(v), expected, "d={d} p={p} v={v}");
            }
        }
    }

    #[test]
    fn d2_is_a_centered_path() {
        let t = build_canonical_tree(2, 2).unwrap();
        assert_eq!(t.graph.n(), 6);
        // 4 - 2 - 0 - 1 - 3 - 5
        assert_eq!(t.graph.edges(), &[(0, 1), (0, 2), (1, 3), (2, 4), (3, 5)]);
        assert_eq!(t.depth_of, vec![0, 0, 1, 1, 2, 2]);
    }

    #[test]
    fn radius_zero_is_the_middle_edge() {
        let t = build_canonical_tree(3, 0).unwrap();
        assert_eq!(t.graph.edges(), &[(0, 1)]);
    }

    #[test]
    fn cap_errors_report_required_qubits() {
        match build_canonical_tree(3, 3).unwrap_err() {
            Error::QubitCap { required, cap, .. } => assert_eq!((required, cap), (30, 26)),
            e => panic!("unexpected {e}"),
        }
        assert!(build_canonical_tree(1, 2).is_err());
    }

    #[test]
    fn smaller_tree_is_a_labelled_prefix() {
        for d in 2..=4 {
            for p in 0..2 {
                let small = build_canonical_tree(d, p).unwrap();
                let big = build_canonical_tree(d, p + 1).unwrap();
                let m = small.graph.n();
                let induced: Vec<Edge> = big
                    .graph
                    .edges()
                    .iter()
                    .copied()
                    .filter(|&(u, v)| u < m && v < m)
                    .collect();
                assert_eq!(induced, small.graph.edges());
                assert_eq!(&big.depth_of[..m], &small.depth_of[..]);
            }
        }
    }

    #[test]
    fn zero_angle_values() {
        let mc = tree_expectation(
            3,
            1,
            &CostModel::max_cut(),
            &QaoaParams::zeros(1),
            InitialState::PlusProduct,
        )
        .unwrap();
        assert_abs_diff_eq!(mc.value, 0.5, epsilon = 1e-14);
        let mis = CostModel::mis(3).unwrap();
        let v =
            tree_expectation(3, 1, &mis, &QaoaParams::zeros(1), InitialState::PlusProduct).unwrap();
        assert_abs_diff_eq!(v.value, -1.0 / 12.0, epsilon = 1e-14);
    }

    #[test]
    fn depth_mismatch_rejected() {
        let err = tree_expectation(
            3,
            2,
            &CostModel::max_cut(),
            &QaoaParams::zeros(1),
            InitialState::PlusProduct,
        )
        .unwrap_err();
        assert_eq!(err.category(), "invalid_input");
    }

    /// From |0...0> the phase layer is inert; one mixer layer sets each bit with
    /// probability s = sin^2(beta), so the edge value is s/d - s^2.
    #[test]
    fn mis_from_all_zero_at_depth_one() {
        let d = 3;
        let mis = CostModel::mis(d).unwrap();
        for &(gamma, beta) in &[(0.0, 0.2), (1.3, 0.5), (4.0, 1.2)] {
            let params = QaoaParams::new(vec![gamma], vec![beta]).unwrap();
            let v = tree_expectation(d, 1, &mis, &params, InitialState::AllZero).unwrap();
            let s = beta.sin().powi(2);
            assert_abs_diff_eq!(v.value, s / d as f64 - s * s, epsilon = 1e-12);
        }
    }

    /// d = 2, p = 1 tree is a path on four vertices. Known closed form for an
    /// edge with both endpoints of degree 2 and no triangles:
    /// 1/2 + (1/2) sin(4b) sin(g) cos(g).
    #[test]
    fn path_closed_form() {
        let mc = CostModel::max_cut();
        for &(g, b) in &[(0.4, 0.3), (1.0, -0.2), (2.2, 0.7)] {
            let params = QaoaParams::new(vec![g], vec![b]).unwrap();
            let v = tree_expectation(2, 1, &mc, &params, InitialState::PlusProduct).unwrap();
            let expected = 0.5 + 0.5 * (4.0 * b).sin() * g.sin() * g.cos();
            assert_abs_diff_eq!(v.value, expected, epsilon = 1e-12);
        }
    }

    #[test]
    fn side_swap_symmetry() {
        let tree = build_canonical_tree(3, 2).unwrap();
        let n = tree.graph.n();
        // Swap the two halves: endpoint 0 <-> 1 and each level's A block with
        // its B block.
        let mut perm = vec![0; n];
        perm[0] = 1;
        perm[1] = 0;
        let mut start = 2;
        let mut width = 2;
        while start < n {
            for i in 0..width {
                perm[start + i] = start + width + i;
                perm[start + width + i] = start + i;
            }
            start += 2 * width;
            width *= 2;
        }
        let swapped = tree.graph.relabel(&perm).unwrap();
        let params = QaoaParams::new(vec![0.3, 0.8], vec![0.5, 0.2]).unwrap();
        for model in [CostModel::max_cut(), CostModel::mis(3).unwrap()] {
            let a = run_qaoa(&tree.graph, &model, &params, InitialState::PlusProduct).unwrap();
            let b = run_qaoa(&swapped, &model, &params, InitialState::PlusProduct).unwrap();
            let va = a.expect_edge((0, 1), &model).unwrap();
            let vb = b.expect_edge((0, 1), &model).unwrap();
            assert_abs_diff_eq!(va, vb, epsilon = 1e-12);
        }
    }

    #[test]
    fn prediction() {
        let p = predicted_ensemble_cost(1000, 3, 0.5);
        assert_eq!(p.leading_term, 750.0);
        assert!(p.finite_size_correction_unquantified);
        assert_eq!(predicted_ensemble_cost(77, 5, 0.0).leading_term, 0.0);
    }
}
