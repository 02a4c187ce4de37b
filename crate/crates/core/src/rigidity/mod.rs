//! Frameworks, rigidity matrices and the generic rigidity tests.

mod generic;
mod report;
mod stress;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::OrderedGraph;
use crate::linalg::{rank, Configuration, Coords, RationalMatrix};

pub use generic::{
    affine_measurement_map_rank, gauss_fiber_dim, generic_rank, generic_sample,
    global_rigidity_evidence, is_generically_globally_rigid, is_generically_locally_rigid,
    is_redundantly_rigid, measurement_variety_dim, restricted_measurement_rank, GlobalEvidence,
    COMBINATION_BOUND, TRIALS,
};
pub use report::{hendrickson_check, RigidityReport};
pub use stress::{
    equilibrium_residuals, shared_stress_kernel_dim, stress_basis, stress_matrix, StressMatrix,
    StressVector,
};

/// `d(d+1)/2`, the dimension of the group of rigid motions of `R^d`.
pub fn rigid_motion_dim(d: usize) -> usize {
    d * (d + 1) / 2
}

/// Rank of the rigidity matrix of an infinitesimally rigid framework on `n`
/// points in `R^d` (for `n >= d + 1`).
pub fn rigid_rank(n: usize, d: usize) -> usize {
    (n * d).saturating_sub(rigid_motion_dim(d))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Framework {
    graph: OrderedGraph,
    config: Configuration,
}

impl Framework {
    pub fn new(graph: OrderedGraph, config: Configuration) -> Result<Self> {
        if graph.n() != config.n() {
            return Err(Error::ShapeMismatch(format!(
                "graph has {} vertices, configuration has {} points",
                graph.n(),
                config.n()
            )));
        }
        Ok(Framework { graph, config })
    }

    pub fn graph(&self) -> &OrderedGraph {
        &self.graph
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn d(&self) -> usize {
        self.config.d()
    }
}

/// Squared edge lengths in graph edge order.
#[derive(Debug, Clone, PartialEq)]
pub enum MeasurementVector {
    Exact(Vec<BigRational>),
    Numeric(Vec<f64>),
}

impl MeasurementVector {
    pub fn len(&self) -> usize {
        match self {
            MeasurementVector::Exact(v) => v.len(),
            MeasurementVector::Numeric(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_f64(&self) -> Vec<f64> {
        match self {
            MeasurementVector::Exact(v) => v.iter().map(crate::linalg::ratio_to_f64).collect(),
            MeasurementVector::Numeric(v) => v.clone(),
        }
    }
}

pub fn measure(f: &Framework) -> MeasurementVector {
    let d = f.d();
    match f.config.coords() {
        Coords::Exact(c) => MeasurementVector::Exact(
            f.graph
                .edges()
                .iter()
                .map(|&(i, j)| {
                    (0..d).fold(BigRational::zero(), |acc, k| {
                        let diff = &c[i * d + k] - &c[j * d + k];
                        acc + &diff * &diff
                    })
                })
                .collect(),
        ),
        Coords::Numeric(c) => MeasurementVector::Numeric(measure_f64(f.graph.edges(), c, d)),
    }
}

pub(crate) fn measure_f64(edges: &[(usize, usize)], coords: &[f64], d: usize) -> Vec<f64> {
    edges
        .iter()
        .map(|&(i, j)| (0..d).map(|k| (coords[i * d + k] - coords[j * d + k]).powi(2)).sum())
        .collect()
}

/// `m x nd` matrix whose row for edge `(i, j)` holds `p_i - p_j` in block `i`
/// and `p_j - p_i` in block `j`; one half of the differential of [`measure`].
/// Numeric configurations are converted to rationals exactly.
pub fn rigidity_matrix(f: &Framework) -> RationalMatrix {
    let d = f.d();
    let c = f.config.to_exact();
    let mut r = RationalMatrix::zeros(f.graph.m(), f.graph.n() * d);
    for (e, &(i, j)) in f.graph.edges().iter().enumerate() {
        for k in 0..d {
            let diff = &c[i * d + k] - &c[j * d + k];
            r[(e, j * d + k)] = -diff.clone();
            r[(e, i * d + k)] = diff;
        }
    }
    r
}

fn require_vertices(n: usize, d: usize, required: usize) -> Result<()> {
    if n < required {
        Err(Error::DimensionTooSmall { n, d, required })
    } else {
        Ok(())
    }
}

/// Rank of the rigidity matrix equals `nd - d(d+1)/2`. Needs `n >= d + 1`.
pub fn is_infinitesimally_rigid(f: &Framework) -> Result<bool> {
    require_vertices(f.graph.n(), f.d(), f.d() + 1)?;
    Ok(rank(&rigidity_matrix(f)) == rigid_rank(f.graph.n(), f.d()))
}

/// Basis of the infinitesimal rigid motions at `p`: `d` translations and
/// `d(d-1)/2` rotations, each as a length-`nd` velocity vector.
pub fn trivial_motions(p: &Configuration) -> Vec<Vec<BigRational>> {
    let (n, d) = (p.n(), p.d());
    let c = p.to_exact();
    let mut out = Vec::new();
    for k in 0..d {
        let mut v = vec![BigRational::zero(); n * d];
        for i in 0..n {
            v[i * d + k] = BigRational::from_integer(1.into());
        }
        out.push(v);
    }
    for a in 0..d {
        for b in a + 1..d {
            let mut v = vec![BigRational::zero(); n * d];
            for i in 0..n {
                v[i * d + a] = -c[i * d + b].clone();
                v[i * d + b] = c[i * d + a].clone();
            }
            out.push(v);
        }
    }
    out
}

/// Applies `x -> A x + t` to every point, exactly.
pub fn affine_image(p: &Configuration, a: &RationalMatrix, t: &[BigRational]) -> Configuration {
    let (n, d) = (p.n(), p.d());
    let c = p.to_exact();
    let mut out = Vec::with_capacity(n * d);
    for i in 0..n {
        let img = a.mul_vec(&c[i * d..(i + 1) * d]);
        out.extend(img.into_iter().zip(t).map(|(x, s)| x + s));
    }
    Configuration::exact(n, d, out)
}

/// Rational view of a floating configuration for exact rank checks.
pub fn exact_framework(f: &Framework) -> Framework {
    let c = f.config.to_exact();
    Framework {
        graph: f.graph.clone(),
        config: Configuration::exact(f.config.n(), f.d(), c),
    }
}
