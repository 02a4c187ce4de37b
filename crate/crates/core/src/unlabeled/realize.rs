//! Damped least-squares realization of a graph with prescribed squared
//! edge lengths.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::OrderedGraph;
use crate::linalg::Configuration;
use crate::rigidity::measure_f64;

pub const DEFAULT_RESTARTS: usize = 32;
const MAX_ITERATIONS: usize = 400;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealizationResult {
    pub config: Configuration,
    /// Sum over edges of the squared difference between realized and target
    /// squared length.
    pub residual: f64,
    pub converged: bool,
}

/// Residual below which a realization counts as exact:
/// `10^-16 * (1 + max target)^2`.
pub fn convergence_threshold(target: &[f64]) -> f64 {
    let top = target.iter().copied().fold(0.0, f64::max);
    1e-16 * (1.0 + top).powi(2)
}

pub fn residual(edges: &[(usize, usize)], coords: &[f64], d: usize, target: &[f64]) -> f64 {
    measure_f64(edges, coords, d).iter().zip(target).map(|(m, t)| (m - t).powi(2)).sum()
}

/// Minimises `sum_e (|p_i - p_j|^2 - t_e)^2` from up to `restarts` random
/// starts, stopping at the first converged one.
///
/// Vertex 0 is pinned at the origin and vertex `k < d` is confined to the
/// first `k` axes, which removes the rigid motions from the search space.
pub fn realize(g: &OrderedGraph, target: &[f64], d: usize, restarts: usize, seed: u64) -> RealizationResult {
    assert_eq!(target.len(), g.m(), "one target per edge");
    let n = g.n();
    let free: Vec<usize> = (0..n).flat_map(|i| (0..d.min(i)).map(move |k| i * d + k)).collect();
    let spread = target.iter().copied().fold(0.0, f64::max).sqrt().max(1e-3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let threshold = convergence_threshold(target);
    let mut best: Option<(Vec<f64>, f64)> = None;
    for _ in 0..restarts.max(1) {
        let mut x = vec![0.0; n * d];
        for &v in &free {
            x[v] = rng.gen_range(-spread..=spread);
        }
        let cost = levenberg_marquardt(g.edges(), target, d, &mut x, &free, threshold);
        if best.as_ref().is_none_or(|(_, b)| cost < *b) {
            best = Some((x, cost));
        }
        if cost < threshold {
            break;
        }
    }
    let (x, _) = best.expect("at least one restart");
    finish(g, target, d, x)
}

/// Local refinement from `init` with every coordinate free.
pub fn refine(g: &OrderedGraph, target: &[f64], d: usize, init: &[f64]) -> RealizationResult {
    let mut x = init.to_vec();
    let free: Vec<usize> = (0..x.len()).collect();
    levenberg_marquardt(g.edges(), target, d, &mut x, &free, convergence_threshold(target));
    finish(g, target, d, x)
}

fn finish(g: &OrderedGraph, target: &[f64], d: usize, x: Vec<f64>) -> RealizationResult {
    let res = residual(g.edges(), &x, d, target);
    RealizationResult {
        converged: res < convergence_threshold(target),
        residual: res,
        config: Configuration::numeric(g.n(), d, x),
    }
}

/// Returns the final cost. Iterates past `threshold` to polish the solution
/// down to rounding level.
pub(crate) fn levenberg_marquardt(
    edges: &[(usize, usize)],
    target: &[f64],
    d: usize,
    x: &mut [f64],
    free: &[usize],
    threshold: f64,
) -> f64 {
    let m = edges.len();
    let nv = free.len();
    let mut col_of = vec![usize::MAX; x.len()];
    for (c, &v) in free.iter().enumerate() {
        col_of[v] = c;
    }
    let eval = |x: &[f64]| -> (DVector<f64>, f64) {
        let r = DVector::from_iterator(
            m,
            measure_f64(edges, x, d).into_iter().zip(target).map(|(a, t)| a - t),
        );
        let c = r.norm_squared();
        (r, c)
    };
    let (mut r, mut cost) = eval(x);
    if nv == 0 || m == 0 {
        return cost;
    }
    let floor = threshold * 1e-16;
    let mut lambda = 1e-3;
    let mut polish = 0;
    for _ in 0..MAX_ITERATIONS {
        if cost <= floor {
            break;
        }
        if cost < threshold {
            // a few extra steps after convergence
            polish += 1;
            if polish > 4 {
                break;
            }
        }
        let mut jac = DMatrix::zeros(m, nv);
        for (e, &(i, j)) in edges.iter().enumerate() {
            for k in 0..d {
                let diff = 2.0 * (x[i * d + k] - x[j * d + k]);
                if col_of[i * d + k] != usize::MAX {
                    jac[(e, col_of[i * d + k])] = diff;
                }
                if col_of[j * d + k] != usize::MAX {
                    jac[(e, col_of[j * d + k])] = -diff;
                }
            }
        }
        let jtj = jac.transpose() * &jac;
        let grad = jac.transpose() * &r;
        let scale = jtj.diagonal().max().max(1e-300);
        let mut improved = false;
        for _ in 0..30 {
            let mut a = jtj.clone();
            for c in 0..nv {
                a[(c, c)] += lambda * (jtj[(c, c)] + 1e-9 * scale);
            }
            let Some(chol) = a.cholesky() else {
                lambda *= 10.0;
                continue;
            };
            let step = chol.solve(&(-&grad));
            let mut trial = x.to_vec();
            for (c, &v) in free.iter().enumerate() {
                trial[v] += step[c];
            }
            let (tr, tc) = eval(&trial);
            if tc < cost {
                x.copy_from_slice(&trial);
                r = tr;
                cost = tc;
                lambda = (lambda / 3.0).max(1e-15);
                improved = true;
                break;
            }
            lambda *= 4.0;
            if lambda > 1e16 {
                break;
            }
        }
        if !improved {
            break;
        }
    }
    cost
}
