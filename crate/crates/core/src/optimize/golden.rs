use super::{LocalOutcome, LocalSearch, Objective};

const INV_PHI: f64 = 0.618_033_988_749_894_9;
const MAX_LINE_STEPS: usize = 80;

/// Cyclic coordinate ascent with a golden-section line search on
/// `[x_i - h_i, x_i + h_i]`. A coordinate only moves if the value improves;
/// `h` halves after a sweep without improvement.
#[derive(Debug, Clone, Copy, Default)]
pub struct CoordinateGolden;

impl CoordinateGolden {
    pub const NAME: &'static str = "coordinate-golden";
}

fn golden_max(g: &mut dyn FnMut(f64) -> f64, mut lo: f64, mut hi: f64, width: f64) -> (f64, f64) {
    let mut a = hi - INV_PHI * (hi - lo);
    let mut b = lo + INV_PHI * (hi - lo);
    let mut fa = g(a);
    let mut fb = g(b);
    for _ in 0..MAX_LINE_STEPS {
        if hi - lo < width {
            break;
        }
        if fa >= fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - INV_PHI * (hi - lo);
            fa = g(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + INV_PHI * (hi - lo);
            fb = g(b);
        }
    }
    if fa >= fb {
        (a, fa)
    } else {
        (b, fb)
    }
}

impl LocalSearch for CoordinateGolden {
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
        let mut trace = Vec::new();
        let mut x = start.to_vec();
        let mut fx = f(&x);
        trace.push((x.clone(), fx));
        let mut step = scales.to_vec();
        if x.is_empty() || step.iter().all(|&h| h < tolerance) {
            return LocalOutcome::unmoved(x, fx, trace);
        }

        let mut iterations = 0;
        let mut converged = false;
        while iterations < max_iterations {
            iterations += 1;
            let sweep_start = fx;
            let mut largest_move: f64 = 0.0;
            for i in 0..x.len() {
                let centre = x[i];
                let mut line = |t: f64| {
                    let mut y = x.clone();
                    y[i] = t;
                    let fy = f(&y);
                    trace.push((y, fy));
                    fy
                };
                let (t, ft) = golden_max(
                    &mut line,
                    centre - step[i],
                    centre + step[i],
                    tolerance * 0.1,
                );
                if ft > fx {
                    largest_move = largest_move.max((t - centre).abs());
                    x[i] = t;
                    fx = ft;
                }
            }
            let improvement = fx - sweep_start;
            if improvement < tolerance
                && largest_move < tolerance
                && step.iter().all(|&h| h < tolerance)
            {
                converged = true;
                break;
            }
            if improvement <= 0.0 {
                step.iter_mut().for_each(|h| *h *= 0.5);
            }
        }
        LocalOutcome {
            point: x,
            value: fx,
            trace,
            iterations,
            converged,
        }
    }
}
