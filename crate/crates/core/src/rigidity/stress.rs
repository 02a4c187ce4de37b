//! Equilibrium stresses and stress matrices.

use num_rational::BigRational;
use num_traits::Zero;

use super::{rigidity_matrix, Framework};
use crate::graph::OrderedGraph;
use crate::linalg::{kernel_basis, rank, RationalMatrix};

/// One scalar per edge, in graph edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StressVector(pub Vec<BigRational>);

/// Symmetric `n x n` matrix with zero row sums whose off-diagonal entry
/// `(i, j)` is `-w_ij` on edges and zero elsewhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StressMatrix(RationalMatrix);

impl StressMatrix {
    pub fn matrix(&self) -> &RationalMatrix {
        &self.0
    }

    pub fn rank(&self) -> usize {
        rank(&self.0)
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }
}

/// Basis of the equilibrium stresses: the left kernel of the rigidity matrix.
pub fn stress_basis(f: &Framework) -> Vec<StressVector> {
    kernel_basis(&rigidity_matrix(f).transpose()).into_iter().map(StressVector).collect()
}

/// Net force at every vertex, `sum_j w_ij (p_i - p_j)`, flattened `n x d`.
/// All zero exactly when `w` is an equilibrium stress.
pub fn equilibrium_residuals(f: &Framework, w: &StressVector) -> Vec<BigRational> {
    let d = f.d();
    let c = f.config().to_exact();
    let mut out = vec![BigRational::zero(); f.graph().n() * d];
    for (e, &(i, j)) in f.graph().edges().iter().enumerate() {
        if w.0[e].is_zero() {
            continue;
        }
        for k in 0..d {
            let force = &w.0[e] * (&c[i * d + k] - &c[j * d + k]);
            out[j * d + k] -= &force;
            out[i * d + k] += force;
        }
    }
    out
}

/// Builds the stress matrix of `w` on `g`.
///
/// # Panics
/// If `w` does not have one entry per edge.
pub fn stress_matrix(g: &OrderedGraph, w: &StressVector) -> StressMatrix {
    assert_eq!(w.0.len(), g.m(), "stress length must equal edge count");
    let mut om = RationalMatrix::zeros(g.n(), g.n());
    for (e, &(i, j)) in g.edges().iter().enumerate() {
        let x = &w.0[e];
        om[(i, j)] -= x;
        om[(j, i)] -= x;
        om[(i, i)] += x;
        om[(j, j)] += x;
    }
    StressMatrix(om)
}

/// Dimension of the common kernel of every equilibrium stress matrix of `f`.
/// With no stresses this is `n`.
pub fn shared_stress_kernel_dim(f: &Framework) -> usize {
    shared_kernel(f).len()
}

pub(crate) fn shared_kernel(f: &Framework) -> Vec<Vec<BigRational>> {
    let n = f.graph().n();
    let basis = stress_basis(f);
    if basis.is_empty() {
        return kernel_basis(&RationalMatrix::zeros(0, n));
    }
    let stacked = basis
        .iter()
        .map(|w| stress_matrix(f.graph(), w).0)
        .reduce(|acc, m| acc.stack(&m))
        .expect("non-empty basis");
    kernel_basis(&stacked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;
    use crate::linalg::{random_generic_configuration, Configuration};

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    fn generic(g: OrderedGraph, d: usize, seed: u64) -> Framework {
        let n = g.n();
        Framework::new(g, random_generic_configuration(n, d, seed)).unwrap()
    }

    #[test]
    fn basis_sizes() {
        let tri = Framework::new(catalog::complete(3), Configuration::from_integers(3, 2, &[0, 0, 4, 0, 1, 3])).unwrap();
        assert!(stress_basis(&tri).is_empty());
        assert_eq!(stress_basis(&generic(catalog::complete(4), 2, 1)).len(), 1);
        for d in 1..=3 {
            assert_eq!(stress_basis(&generic(catalog::complete(d + 2), d, 2)).len(), 1);
        }
    }

    #[test]
    fn triangle_stress_matrix() {
        let k3 = catalog::complete(3);
        let zero = stress_matrix(&k3, &StressVector(vec![q(0); 3]));
        assert!(zero.matrix().is_zero());
        let om = stress_matrix(&k3, &StressVector(vec![q(1); 3]));
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(om.matrix()[(i, j)], if i == j { q(2) } else { q(-1) });
            }
        }
    }

    #[test]
    fn stresses_are_in_equilibrium_and_annihilate_coordinates() {
        for (_, g) in catalog::builtin() {
            for d in 1..=3 {
                let f = generic(g.clone(), d, 5);
                let c = f.config().to_exact();
                for w in stress_basis(&f) {
                    assert!(equilibrium_residuals(&f, &w).iter().all(Zero::is_zero));
                    let om = stress_matrix(&g, &w);
                    let ones = vec![q(1); g.n()];
                    assert!(om.matrix().mul_vec(&ones).iter().all(Zero::is_zero));
                    for k in 0..d {
                        let col: Vec<BigRational> = (0..g.n()).map(|i| c[i * d + k].clone()).collect();
                        assert!(om.matrix().mul_vec(&col).iter().all(Zero::is_zero));
                    }
                }
            }
        }
    }

    #[test]
    fn shared_kernel_dims() {
        let tri = Framework::new(catalog::complete(3), Configuration::from_integers(3, 2, &[0, 0, 4, 0, 1, 3])).unwrap();
        assert_eq!(shared_stress_kernel_dim(&tri), 3);
        assert_eq!(shared_stress_kernel_dim(&generic(catalog::complete(4), 2, 8)), 3);
        // 2-connected graphs are globally rigid on the line, so C4 reaches d + 1
        assert_eq!(shared_stress_kernel_dim(&generic(catalog::cycle(4), 1, 8)), 2);
        let bowtie = OrderedGraph::new(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert_eq!(shared_stress_kernel_dim(&generic(bowtie, 1, 8)), 3);
    }
}
