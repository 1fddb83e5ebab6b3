use std::collections::BTreeMap;

use serde::Serialize;

use super::Graph;

/// Exact counts of simple cycles by length, each cycle counted once.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleCensus {
    pub max_length: usize,
    pub counts: BTreeMap<usize, u64>,
}

impl CycleCensus {
    pub fn count(&self, length: usize) -> u64 {
        self.counts.get(&length).copied().unwrap_or(0)
    }

    pub fn total_up_to(&self, length: usize) -> u64 {
        self.counts.range(..=length).map(|(_, c)| c).sum()
    }
}

/// Counts simple cycles of every length in `3..=kmax`.
///
/// Each cycle is enumerated from its smallest vertex, visiting only larger
/// vertices, and kept in one orientation only (second vertex smaller than the
/// last). Cost grows like `n * (d-1)^kmax`, fine for kmax up to about 10 on
/// sparse graphs.
pub fn count_cycles(g: &Graph, kmax: usize) -> CycleCensus {
    let mut counts: BTreeMap<usize, u64> = (3..=kmax).map(|k| (k, 0)).collect();
    if kmax >= 3 {
        let mut on_path = vec![false; g.n()];
        let mut path = Vec::with_capacity(kmax);
        for start in 0..g.n() {
            path.clear();
            path.push(start);
            on_path[start] = true;
            extend(g, start, kmax, &mut path, &mut on_path, &mut counts);
            on_path[start] = false;
        }
    }
    CycleCensus {
        max_length: kmax,
        counts,
    }
}

fn extend(
    g: &Graph,
    start: usize,
    kmax: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    counts: &mut BTreeMap<usize, u64>,
) {
    let last = *path.last().expect("path starts non-empty");
    for &next in g.neighbors(last) {
        if next == start {
            if path.len() >= 3 && path[1] < last {
                *counts.get_mut(&path.len()).expect("length within range") += 1;
            }
            continue;
        }
        if next < start || on_path[next] || path.len() == kmax {
            continue;
        }
        on_path[next] = true;
        path.push(next);
        extend(g, start, kmax, path, on_path, counts);
        path.pop();
        on_path[next] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Counts k-cycles by checking every k-subset of vertices and every cyclic
    /// ordering of it, dividing out the 2k rotations and reflections.
    fn brute_force(g: &Graph, k: usize) -> u64 {
        fn subsets(
            n: usize,
            k: usize,
            from: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for v in from..n {
                cur.push(v);
                subsets(n, k, v + 1, cur, out);
                cur.pop();
            }
        }
        fn perms(items: &mut Vec<usize>, i: usize, g: &Graph, hits: &mut u64) {
            if i == items.len() {
                let k = items.len();
                if (0..k).all(|j| g.has_edge(items[j], items[(j + 1) % k])) {
                    *hits += 1;
                }
                return;
            }
            for j in i..items.len() {
                items.swap(i, j);
                perms(items, i + 1, g, hits);
                items.swap(i, j);
            }
        }
        let mut all = Vec::new();
        subsets(g.n(), k, 0, &mut Vec::new(), &mut all);
        let mut hits = 0;
        for mut s in all {
            perms(&mut s, 0, g, &mut hits);
        }
        hits / (2 * k as u64)
    }

    #[test]
    fn k4_counts() {
        let c = count_cycles(&Graph::complete(4), 4);
        assert_eq!(c.counts, BTreeMap::from([(3, 4), (4, 3)]));
    }

    #[test]
    fn k33_counts_match_brute_force() {
        let k33 = Graph::complete_bipartite(3, 3);
        let c = count_cycles(&k33, 4);
        assert_eq!(brute_force(&k33, 3), 0);
        assert_eq!(brute_force(&k33, 4), 9);
        assert_eq!(c.counts, BTreeMap::from([(3, 0), (4, 9)]));
    }

    #[test]
    fn c6_counts() {
        let c = count_cycles(&Graph::cycle(6), 6);
        assert_eq!(c.counts, BTreeMap::from([(3, 0), (4, 0), (5, 0), (6, 1)]));
        assert_eq!(c.total_up_to(6), 1);
    }

    #[test]
    fn small_kmax_is_empty() {
        assert!(count_cycles(&Graph::complete(5), 2).counts.is_empty());
    }

    #[test]
    fn agrees_with_brute_force_on_dense_and_random_graphs() {
        let k5 = Graph::complete(5);
        let c = count_cycles(&k5, 5);
        for k in 3..=5 {
            assert_eq!(c.count(k), brute_force(&k5, k), "K5 length {k}");
        }
        for seed in 0..5 {
            let g =
                crate::graph::generate(&crate::graph::EnsembleSpec::general(10, 3, seed)).unwrap();
            let c = count_cycles(&g, 7);
            for k in 3..=7 {
                assert_eq!(c.count(k), brute_force(&g, k), "seed {seed} length {k}");
            }
        }
    }
}
