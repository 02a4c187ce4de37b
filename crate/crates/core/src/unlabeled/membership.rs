//! Membership in Euclidean measurement sets, sampled variety comparison,
//! edge-swap pairs and the certificate check.

use std::collections::BTreeSet;

use super::realize::realize;
use super::search::{search_graph, SearchOptions};
use super::DistanceMultiset;
use crate::error::{Error, Result};
use crate::graph::{EdgeBijection, OrderedGraph};
use crate::linalg::{random_unit_configuration, Configuration};
use crate::rigidity::{generic_rank, is_generically_globally_rigid, measure_f64, measurement_variety_dim, rigid_rank};

/// Largest edge count for which the variety comparison searches over all
/// edge bijections.
pub const MAX_BIJECTION_SEARCH_EDGES: usize = 9;

/// True iff `realize` converges. One-sided: a `false` may be a missed
/// realization rather than a proof of infeasibility.
pub fn is_member(g: &OrderedGraph, target: &[f64], d: usize, restarts: usize, seed: u64) -> bool {
    if target.iter().any(|&t| t < 0.0 || !t.is_finite()) {
        return false;
    }
    realize(g, target, d, restarts, seed).converged
}

/// Monte-Carlo test that the measurement sets of `g` and `h` coincide up to
/// an edge bijection: each sampled measurement of one graph must be
/// realizable on the other.
///
/// With `candidate` (edges of `g` to edges of `h`) only that bijection is
/// checked. Without it, the bijections consistent with every sample are
/// intersected and the answer is whether one survives.
pub fn same_measurement_variety_sampled(
    g: &OrderedGraph,
    h: &OrderedGraph,
    d: usize,
    trials: usize,
    seed: u64,
    candidate: Option<&EdgeBijection>,
    restarts: usize,
) -> Result<bool> {
    if g.m() != h.m() {
        return Err(Error::ShapeMismatch(format!("{} edges vs {} edges", g.m(), h.m())));
    }
    if measurement_variety_dim(g, d, seed) != measurement_variety_dim(h, d, seed) {
        return Ok(false);
    }
    let sample = |graph: &OrderedGraph, t: usize| {
        let p = random_unit_configuration(graph.n(), d, seed.wrapping_add(t as u64));
        measure_f64(graph.edges(), &p.to_f64(), d)
    };
    if let Some(b) = candidate {
        if b.source().m() != g.m() || b.source().edges() != g.edges() || b.target().edges() != h.edges() {
            return Err(Error::ShapeMismatch("candidate bijection does not match the graphs".into()));
        }
        let inv = b.inverse();
        for t in 0..trials {
            let sub = seed.wrapping_add(1000 + t as u64);
            if !is_member(h, &transport(&sample(g, t), b.map()), d, restarts, sub) {
                return Ok(false);
            }
            if !is_member(g, &transport(&sample(h, t), inv.map()), d, restarts, sub) {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    if g.m() > MAX_BIJECTION_SEARCH_EDGES {
        return Err(Error::ScaleExceeded(format!(
            "{} edges; the bijection search handles at most {MAX_BIJECTION_SEARCH_EDGES} without a candidate",
            g.m()
        )));
    }
    let opts = SearchOptions { restarts, seed, parallel: false, ..SearchOptions::default() };
    let mut alive: Option<BTreeSet<Vec<usize>>> = None;
    for t in 0..trials {
        // g -> h: realizations of g's sample on h
        let fwd = feasible_bijections(g, &sample(g, t), h, d, &opts);
        // h -> g, inverted to read g -> h
        let back: BTreeSet<Vec<usize>> =
            feasible_bijections(h, &sample(h, t), g, d, &opts).into_iter().map(|m| invert(&m)).collect();
        let both: BTreeSet<Vec<usize>> = fwd.intersection(&back).cloned().collect();
        let next = match alive {
            None => both,
            Some(prev) => prev.intersection(&both).cloned().collect(),
        };
        if next.is_empty() {
            return Ok(false);
        }
        alive = Some(next);
    }
    Ok(true)
}

/// Edge bijections `sigma` (source edge to `host` edge) for which the host
/// realizes `values` placed as `host[sigma[e]] = values[e]`.
fn feasible_bijections(
    source: &OrderedGraph,
    values: &[f64],
    host: &OrderedGraph,
    d: usize,
    opts: &SearchOptions,
) -> BTreeSet<Vec<usize>> {
    let mut by_rank: Vec<usize> = (0..source.m()).collect();
    by_rank.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let sorted: Vec<f64> = by_rank.iter().map(|&e| values[e]).collect();
    let res = search_graph(host, &sorted, d, opts, opts.seed, None);
    res.found
        .iter()
        .map(|f| {
            let mut sigma = vec![0; source.m()];
            for (host_edge, &val) in f.assignment.iter().enumerate() {
                sigma[by_rank[val]] = host_edge;
            }
            sigma
        })
        .collect()
}

fn transport(values: &[f64], map: &[usize]) -> Vec<f64> {
    let mut out = vec![0.0; values.len()];
    for (e, &v) in values.iter().enumerate() {
        out[map[e]] = v;
    }
    out
}

fn invert(map: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; map.len()];
    for (i, &j) in map.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// Swaps edge `e` of `g` for the non-edge `eprime`, after checking that
/// `g - e` is flexible and that its flex changes the length of `eprime`.
/// Both graphs then have measurement variety equal to that of `g - e`
/// times a free line.
pub fn not_rr_pair(
    g: &OrderedGraph,
    e: usize,
    eprime: (usize, usize),
    d: usize,
    seed: u64,
) -> Result<(OrderedGraph, OrderedGraph)> {
    if e >= g.m() {
        return Err(Error::PreconditionFailed(format!("edge index {e} out of range")));
    }
    let (a, b) = eprime;
    if a == b || a >= g.n() || b >= g.n() || g.has_edge(a, b) {
        return Err(Error::PreconditionFailed(format!("({}, {}) is not a non-edge", a + 1, b + 1)));
    }
    let minus = g.without_edge(e);
    let r = generic_rank(&minus, d, seed);
    if g.n() > d && r >= rigid_rank(g.n(), d) {
        return Err(Error::PreconditionFailed("graph minus the edge is still rigid".into()));
    }
    let plus = minus.with_edge(a, b)?;
    if generic_rank(&plus, d, seed) <= r {
        return Err(Error::PreconditionFailed("the flex does not change the new pair's length".into()));
    }
    let swapped = g.replace_edge(e, a, b)?;
    Ok((g.clone(), swapped))
}

/// Accepts `(h, q)` as the answer for `v` when `h` is generically globally
/// rigid in `d` and the squared edge lengths of `(h, q)` match `v` as
/// multisets within relative `1e-8`.
pub fn certify(
    v: &DistanceMultiset,
    n: usize,
    d: usize,
    h: &OrderedGraph,
    q: &Configuration,
    seed: u64,
) -> Result<bool> {
    if h.n() != n || h.m() != v.len() || q.n() != n || q.d() != d {
        return Err(Error::ShapeMismatch(format!(
            "graph ({} vertices, {} edges), configuration {}x{}, expected {n} vertices, {} edges, d={d}",
            h.n(),
            h.m(),
            q.n(),
            q.d(),
            v.len()
        )));
    }
    if n < d + 2 || !is_generically_globally_rigid(h, d, seed)? {
        return Ok(false);
    }
    Ok(v.matches(&measure_f64(h.edges(), &q.to_f64(), d), CERTIFY_TOL))
}

pub const CERTIFY_TOL: f64 = 1e-8;
