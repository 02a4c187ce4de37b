//! Randomized generic rigidity tests.
//!
//! A "generic" configuration is a vector of independent uniform integers in
//! `[-10^6, 10^6]`. Each test runs [`TRIALS`] independent draws, the draw for
//! trial `t` being seeded with `seed + t`, and accepts the best outcome; all
//! rank decisions are exact. A polynomial condition of degree `D` fails at
//! one draw with probability at most `D / (2*10^6 + 1)`.

use num_rational::BigRational;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::stress::shared_kernel;
use super::{
    require_vertices, rigid_motion_dim, rigid_rank, rigidity_matrix, stress_basis, stress_matrix,
    Framework, StressVector,
};
use crate::error::{Error, Result};
use crate::graph::OrderedGraph;
use crate::linalg::{random_coefficients, random_full_span_configuration, rank, RationalMatrix};

pub const TRIALS: u64 = 3;

/// Coefficient range for random combinations of a stress basis.
pub const COMBINATION_BOUND: i64 = 1_000;

fn sample(g: &OrderedGraph, d: usize, seed: u64, trial: u64) -> Framework {
    let p = random_full_span_configuration(g.n(), d, seed.wrapping_add(trial));
    Framework::new(g.clone(), p).expect("matching vertex count")
}

/// The first trial framework attaining the maximal rigidity-matrix rank,
/// together with that rank.
pub fn generic_sample(g: &OrderedGraph, d: usize, seed: u64) -> (Framework, usize) {
    let mut best: Option<(Framework, usize)> = None;
    for t in 0..TRIALS {
        let f = sample(g, d, seed, t);
        let r = rank(&rigidity_matrix(&f));
        if best.as_ref().is_none_or(|(_, b)| r > *b) {
            best = Some((f, r));
        }
    }
    best.expect("at least one trial")
}

/// Rigidity-matrix rank at a generic configuration (max over trials).
pub fn generic_rank(g: &OrderedGraph, d: usize, seed: u64) -> usize {
    generic_sample(g, d, seed).1
}

/// Dimension of the measurement variety, i.e. the generic rank of the
/// differential of the squared-length map.
pub fn measurement_variety_dim(g: &OrderedGraph, d: usize, seed: u64) -> usize {
    generic_rank(g, d, seed)
}

pub fn is_generically_locally_rigid(g: &OrderedGraph, d: usize, seed: u64) -> Result<bool> {
    require_vertices(g.n(), d, d + 1)?;
    Ok(generic_rank(g, d, seed) == rigid_rank(g.n(), d))
}

/// Locally rigid, and still locally rigid after deleting any single edge.
pub fn is_redundantly_rigid(g: &OrderedGraph, d: usize, seed: u64) -> Result<bool> {
    if !is_generically_locally_rigid(g, d, seed)? {
        return Ok(false);
    }
    for e in 0..g.m() {
        if !is_generically_locally_rigid(&g.without_edge(e), d, seed)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the stress-rank test across all trials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalEvidence {
    pub globally_rigid: bool,
    /// Largest rank of a random stress combination seen.
    pub stress_rank: usize,
    /// Shared stress kernel dimension at the trial that attained `stress_rank`.
    pub shared_kernel_dim: usize,
}

/// Randomized stress-matrix test. In each trial a generic configuration is
/// drawn, a random integer combination of its stress basis is formed, and
/// its rank compared against `n - d - 1`.
pub fn global_rigidity_evidence(g: &OrderedGraph, d: usize, seed: u64) -> Result<GlobalEvidence> {
    require_vertices(g.n(), d, d + 2)?;
    let target = g.n() - d - 1;
    let mut best: Option<(usize, Framework)> = None;
    for t in 0..TRIALS {
        let f = sample(g, d, seed, t);
        let basis = stress_basis(&f);
        let r = if basis.is_empty() {
            0
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t));
            random_combination(g, &basis, &mut rng).rank()
        };
        if best.as_ref().is_none_or(|(b, _)| r > *b) {
            best = Some((r, f));
        }
        if r == target {
            break;
        }
    }
    let (stress_rank, f) = best.expect("at least one trial");
    let shared_kernel_dim = shared_kernel(&f).len();
    let globally_rigid = stress_rank == target;
    debug_assert!(!globally_rigid || shared_kernel_dim == d + 1);
    Ok(GlobalEvidence { globally_rigid, stress_rank, shared_kernel_dim })
}

fn random_combination(
    g: &OrderedGraph,
    basis: &[StressVector],
    rng: &mut ChaCha8Rng,
) -> super::StressMatrix {
    let coeffs = loop {
        let c = random_coefficients(basis.len(), COMBINATION_BOUND, rng);
        if c.iter().any(|x| !x.is_zero()) {
            break c;
        }
    };
    let mut w = vec![BigRational::zero(); g.m()];
    for (c, s) in coeffs.iter().zip(basis) {
        for (acc, x) in w.iter_mut().zip(&s.0) {
            *acc += c * x;
        }
    }
    stress_matrix(g, &StressVector(w))
}

pub fn is_generically_globally_rigid(g: &OrderedGraph, d: usize, seed: u64) -> Result<bool> {
    Ok(global_rigidity_evidence(g, d, seed)?.globally_rigid)
}

/// `d*k - d(d+1)/2` where `k` is the shared stress kernel dimension at a
/// generic configuration.
pub fn gauss_fiber_dim(g: &OrderedGraph, d: usize, seed: u64) -> Result<usize> {
    require_vertices(g.n(), d, d + 2)?;
    let (f, r) = generic_sample(g, d, seed);
    if r != rigid_rank(g.n(), d) {
        return Err(Error::NotLocallyRigid);
    }
    let k = shared_kernel(&f).len();
    Ok(d * k - rigid_motion_dim(d))
}

/// Rank of the rigidity matrix restricted to the configurations whose
/// coordinate columns all lie in the shared stress kernel. For a locally
/// rigid graph this equals [`gauss_fiber_dim`].
pub fn restricted_measurement_rank(g: &OrderedGraph, d: usize, seed: u64) -> Result<usize> {
    require_vertices(g.n(), d, d + 2)?;
    let (f, r) = generic_sample(g, d, seed);
    if r != rigid_rank(g.n(), d) {
        return Err(Error::NotLocallyRigid);
    }
    let n = g.n();
    let kernel = shared_kernel(&f);
    let mut basis = RationalMatrix::zeros(n * d, kernel.len() * d);
    for (z_idx, z) in kernel.iter().enumerate() {
        for axis in 0..d {
            let col = z_idx * d + axis;
            for i in 0..n {
                basis[(i * d + axis, col)] = z[i].clone();
            }
        }
    }
    Ok(rank(&rigidity_matrix(&f).mul(&basis)))
}

/// Rank of the linear map `Q -> (e_ij^T Q e_ij)_ij` from symmetric `d x d`
/// matrices to edge space, where `e_ij = p_i - p_j`.
pub fn affine_measurement_map_rank(f: &Framework) -> Result<usize> {
    let d = f.d();
    if f.graph().n() < d + 1 || f.config().affine_rank() < d {
        return Err(Error::DeficientSpan);
    }
    let c = f.config().to_exact();
    let mut rows = Vec::with_capacity(f.graph().m());
    for &(i, j) in f.graph().edges() {
        let e: Vec<BigRational> = (0..d).map(|k| &c[i * d + k] - &c[j * d + k]).collect();
        let mut row = Vec::with_capacity(rigid_motion_dim(d));
        for a in 0..d {
            for b in a..d {
                let x = &e[a] * &e[b];
                row.push(if a == b { x } else { &x + &x });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Ok(0);
    }
    Ok(rank(&RationalMatrix::from_rows(rows)))
}
