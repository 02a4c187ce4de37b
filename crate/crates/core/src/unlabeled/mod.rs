//! Realization from squared lengths and reconstruction from an unlabeled
//! multiset of them.

mod congruence;
mod io;
mod membership;
mod realize;
mod search;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{enumerate_graphs, OrderedGraph};
use crate::linalg::Configuration;

pub use congruence::{congruent, find_equivalence, DEFAULT_CONGRUENCE_TOL};
pub use io::{parse_configuration_json, parse_distance_file, to_distance_file, DistanceFile};
pub use membership::{
    certify, is_member, not_rr_pair, same_measurement_variety_sampled, CERTIFY_TOL, MAX_BIJECTION_SEARCH_EDGES,
};
pub use realize::{convergence_threshold, realize, refine, residual, RealizationResult, DEFAULT_RESTARTS};
pub use search::{SearchOptions, SearchStats};

pub const MAX_RECONSTRUCT_VERTICES: usize = 7;
pub const MAX_RECONSTRUCT_EDGES: usize = 12;
/// Values closer than this (relative) are treated as colliding.
pub const DISTINCTNESS: f64 = 1e-6;

/// Unordered squared lengths, kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceMultiset {
    values: Vec<f64>,
}

impl DistanceMultiset {
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::Parse(format!("squared distance {bad} is not a nonnegative number")));
        }
        values.sort_by(f64::total_cmp);
        Ok(DistanceMultiset { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// Every value multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        Self::new(self.values.iter().map(|v| v * s).collect())
    }

    /// Whether `other`, sorted, agrees elementwise within `tol` relative to
    /// the largest value.
    pub fn matches(&self, other: &[f64], tol: f64) -> bool {
        if other.len() != self.len() {
            return false;
        }
        let mut o = other.to_vec();
        o.sort_by(f64::total_cmp);
        let scale = self.max().max(o.last().copied().unwrap_or(0.0)).max(f64::MIN_POSITIVE);
        self.values.iter().zip(&o).all(|(a, b)| (a - b).abs() <= tol * scale)
    }

    /// Fails when two values are within [`DISTINCTNESS`] of each other.
    pub fn check_distinct(&self) -> Result<()> {
        for w in self.values.windows(2) {
            if w[1] - w[0] <= DISTINCTNESS * w[1] {
                return Err(Error::NonGenericInput(format!("values {} and {} collide", w[0], w[1])));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Solution {
    pub graph: OrderedGraph,
    pub coords: Configuration,
    pub residual: f64,
    /// The graph is generically flexible: `coords` is one member of a
    /// continuous family of non-congruent realizations.
    pub flexible: bool,
    #[serde(skip)]
    class: usize,
    #[serde(skip)]
    assignment: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReconstructionResult {
    pub solutions: Vec<Solution>,
    pub stats: SearchStats,
}

/// Finds every graph on `n` vertices (no isolated vertex) and configuration
/// in `R^d` whose squared edge lengths are `v`, up to relabeling and
/// congruence.
///
/// Rigid solutions are deduplicated by relabeling plus congruence. A
/// flexible graph has infinitely many non-congruent realizations; it
/// contributes one solution per way of assigning the values to its edges
/// (up to automorphism).
pub fn reconstruct(v: &DistanceMultiset, n: usize, d: usize, opts: &SearchOptions) -> Result<ReconstructionResult> {
    let m = v.len();
    if n > MAX_RECONSTRUCT_VERTICES || m > MAX_RECONSTRUCT_EDGES {
        return Err(Error::ScaleExceeded(format!(
            "n = {n}, m = {m}; reconstruction handles n <= {MAX_RECONSTRUCT_VERTICES}, m <= {MAX_RECONSTRUCT_EDGES}"
        )));
    }
    if d == 0 {
        return Err(Error::DimensionTooSmall { n, d, required: 1 });
    }
    v.check_distinct()?;
    let classes = enumerate_graphs(n, m, true)?;
    let deadline = opts.max_time.map(|t| Instant::now() + t);
    let run = |(i, h): (usize, &OrderedGraph)| {
        let sub = opts.seed.wrapping_add((i as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        search::search_graph(h, v.values(), d, opts, sub, deadline)
    };
    let results: Vec<_> = if opts.parallel {
        classes.par_iter().enumerate().map(run).collect()
    } else {
        classes.iter().enumerate().map(run).collect()
    };
    let mut stats = SearchStats::default();
    let mut solutions: Vec<Solution> = Vec::new();
    for (class, res) in results.into_iter().enumerate() {
        stats.merge(&res.stats);
        for found in res.found {
            let target: Vec<f64> = found.assignment.iter().map(|&k| v.values()[k]).collect();
            for x in found.configs {
                let r = residual(res.graph.edges(), &x, d, &target);
                let cand = Solution {
                    graph: res.graph.clone(),
                    coords: Configuration::numeric(n, d, x),
                    residual: r,
                    flexible: found.flexible,
                    class,
                    assignment: found.assignment.clone(),
                };
                if !solutions.iter().any(|s| equivalent(s, &cand, d)) {
                    solutions.push(cand);
                }
            }
        }
    }
    Ok(ReconstructionResult { solutions, stats })
}

fn equivalent(a: &Solution, b: &Solution, d: usize) -> bool {
    if a.class != b.class || a.flexible != b.flexible {
        return false;
    }
    if a.flexible {
        search::labeled_isomorphic(&a.graph, &a.assignment, &b.graph, &b.assignment)
    } else {
        search::same_class(&a.graph, &a.coords.to_f64(), &b.graph, &b.coords.to_f64(), d)
    }
}
