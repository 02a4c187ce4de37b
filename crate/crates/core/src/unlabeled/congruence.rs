//! Congruence and relabeling equivalence of point configurations.

use crate::error::{Error, Result};
use crate::graph::OrderedGraph;
use crate::linalg::Configuration;

pub const DEFAULT_CONGRUENCE_TOL: f64 = 1e-8;

fn squared_distances(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    points
        .iter()
        .map(|a| points.iter().map(|b| a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum()).collect())
        .collect()
}

fn max_entry(m: &[Vec<f64>]) -> f64 {
    m.iter().flatten().copied().fold(0.0, f64::max)
}

/// True iff all pairwise squared distances agree within `tol` relative to
/// the largest one. Point sets with equal pairwise distances are congruent,
/// reflections included.
pub fn congruent(p: &Configuration, q: &Configuration, tol: f64) -> Result<bool> {
    if p.n() != q.n() || p.d() != q.d() {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} vs {}x{} configurations",
            p.n(),
            p.d(),
            q.n(),
            q.d()
        )));
    }
    let (dp, dq) = (squared_distances(&p.points_f64()), squared_distances(&q.points_f64()));
    let scale = max_entry(&dp).max(max_entry(&dq)).max(f64::MIN_POSITIVE);
    Ok(dp.iter().flatten().zip(dq.iter().flatten()).all(|(a, b)| (a - b).abs() <= tol * scale))
}

/// Finds a vertex bijection carrying `(g, p)` onto `(h, q)`: edges onto
/// edges and pairwise squared distances preserved within `tol` (relative).
/// Returns `perm` with `perm[v]` the image of `v`.
pub fn find_equivalence(
    g: &OrderedGraph,
    p: &Configuration,
    h: &OrderedGraph,
    q: &Configuration,
    tol: f64,
) -> Option<Vec<usize>> {
    if g.n() != h.n() || g.m() != h.m() || p.n() != g.n() || q.n() != h.n() {
        return None;
    }
    let (dp, dq) = (squared_distances(&p.points_f64()), squared_distances(&q.points_f64()));
    let tol = tol * max_entry(&dp).max(max_entry(&dq)).max(f64::MIN_POSITIVE);
    let (ag, ah) = (g.adjacency(), h.adjacency());
    let n = g.n();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(
        v: usize,
        perm: &mut [usize],
        used: &mut [bool],
        ok: &dyn Fn(usize, usize, usize, usize) -> bool,
    ) -> bool {
        if v == perm.len() {
            return true;
        }
        for w in 0..perm.len() {
            if used[w] || !(0..v).all(|u| ok(u, v, perm[u], w)) {
                continue;
            }
            perm[v] = w;
            used[w] = true;
            if extend(v + 1, perm, used, ok) {
                return true;
            }
            used[w] = false;
        }
        false
    }
    let ok = |u: usize, v: usize, pu: usize, pv: usize| {
        ag[u][v] == ah[pu][pv] && (dp[u][v] - dq[pu][pv]).abs() <= tol
    };
    extend(0, &mut perm, &mut used, &ok).then_some(perm)
}
