use super::{LocalOutcome, LocalSearch, Objective};

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

/// Downhill simplex on `-f`.
///
/// The initial simplex steps `scales[i]` along each axis. Iteration stops once
/// the simplex diameter and the spread of its values are both below the
/// tolerance. If that already holds for the initial simplex, the start point
/// is returned as is.
#[derive(Debug, Clone, Copy, Default)]
pub struct NelderMead;

impl NelderMead {
    pub const NAME: &'static str = "nelder-mead";
}

struct Vertex {
    x: Vec<f64>,
    f: f64,
}

fn order(simplex: &mut [Vertex]) {
    // Best (largest f) first; ties go to the lexicographically smaller point.
    simplex.sort_by(|a, b| b.f.total_cmp(&a.f).then_with(|| super::lex_cmp(&a.x, &b.x)));
}

fn converged(simplex: &[Vertex], tolerance: f64) -> bool {
    let best = &simplex[0];
    let diameter = simplex
        .iter()
        .map(|v| {
            v.x.iter()
                .zip(&best.x)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);
    let spread = best.f - simplex[simplex.len() - 1].f;
    diameter < tolerance && spread < tolerance
}

impl LocalSearch for NelderMead {
    fn name(&self) -> &'static str {
        Self::NAME
    }

    fn maximize(
        &self,
        f: &Objective<'_>,
        start: &[f64],
        scales: &[f64],
        tolerance: f64,
        max_iterations: usize,
    ) -> LocalOutcome {
        let dim = start.len();
        let mut trace = Vec::new();
        let mut eval = |x: Vec<f64>| {
            let fx = f(&x);
            trace.push((x.clone(), fx));
            Vertex { x, f: fx }
        };

        let start_vertex = eval(start.to_vec());
        let start_value = start_vertex.f;
        if dim == 0 {
            return LocalOutcome::unmoved(start.to_vec(), start_value, trace);
        }
        let mut simplex = vec![start_vertex];
        for i in 0..dim {
            let mut x = start.to_vec();
            x[i] += scales[i];
            simplex.push(eval(x));
        }
        order(&mut simplex);
        if converged(&simplex, tolerance) {
            return LocalOutcome::unmoved(start.to_vec(), start_value, trace);
        }

        let mut iterations = 0;
        let mut done = false;
        while iterations < max_iterations {
            iterations += 1;
            let worst = simplex.len() - 1;
            let centroid: Vec<f64> = (0..dim)
                .map(|j| simplex[..worst].iter().map(|v| v.x[j]).sum::<f64>() / dim as f64)
                .collect();
            let toward = |coef: f64, from: &[f64]| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(from)
                    .map(|(c, w)| c + coef * (c - w))
                    .collect()
            };

            let reflected = eval(toward(REFLECT, &simplex[worst].x));
            if reflected.f > simplex[0].f {
                let expanded = eval(toward(EXPAND, &simplex[worst].x));
                simplex[worst] = if expanded.f > reflected.f {
                    expanded
                } else {
                    reflected
                };
            } else if reflected.f > simplex[worst - 1].f {
                simplex[worst] = reflected;
            } else {
                let (anchor, anchor_f) = if reflected.f > simplex[worst].f {
                    (reflected.x.clone(), reflected.f)
                } else {
                    (simplex[worst].x.clone(), simplex[worst].f)
                };
                let contracted = eval(toward(-CONTRACT, &anchor));
                if contracted.f > anchor_f {
                    simplex[worst] = contracted;
                } else {
                    let best = simplex[0].x.clone();
                    for v in simplex.iter_mut().skip(1) {
                        let x: Vec<f64> = best
                            .iter()
                            .zip(&v.x)
                            .map(|(b, xi)| b + SHRINK * (xi - b))
                            .collect();
                        *v = eval(x);
                    }
                }
            }
            order(&mut simplex);
            if converged(&simplex, tolerance) {
                done = true;
                break;
            }
        }

        // The best vertex never gets worse, so this is at least the start value.
        let best = simplex.swap_remove(0);
        LocalOutcome {
            point: best.x,
            value: best.f,
            trace,
            iterations,
            converged: done,
        }
    }
}
