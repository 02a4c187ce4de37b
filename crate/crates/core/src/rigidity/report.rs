use serde::Serialize;

use super::generic::{gauss_fiber_dim, generic_sample, global_rigidity_evidence, is_redundantly_rigid};
use super::{is_infinitesimally_rigid, require_vertices, rigid_rank};
use crate::error::Result;
use crate::graph::{vertex_connectivity, OrderedGraph};

/// Aggregated rigidity analysis of one graph in one dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RigidityReport {
    pub graph: OrderedGraph,
    pub d: usize,
    pub seed: u64,
    pub connectivity: usize,
    /// Infinitesimal rigidity at the generic sample.
    pub inf_rigid: bool,
    pub gen_loc_rigid: bool,
    pub gen_glob_rigid: bool,
    pub redundant: bool,
    pub stress_rank: usize,
    pub shared_kernel_dim: usize,
    pub mvar_dim: usize,
    pub gauss_fiber_dim: Option<usize>,
    /// Set when the graph tests globally rigid but fails `d+1`-connectivity
    /// or redundant rigidity. Both are necessary, so this means a bug.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub violation: bool,
}

impl RigidityReport {
    pub fn is_connected_enough(&self) -> bool {
        self.connectivity > self.d
    }
}

/// Runs every test on `g` in dimension `d`. Needs `n >= d + 2`.
pub fn hendrickson_check(g: &OrderedGraph, d: usize, seed: u64) -> Result<RigidityReport> {
    require_vertices(g.n(), d, d + 2)?;
    let (sample, mvar_dim) = generic_sample(g, d, seed);
    let gen_loc_rigid = mvar_dim == rigid_rank(g.n(), d);
    let inf_rigid = is_infinitesimally_rigid(&sample)?;
    let evidence = global_rigidity_evidence(g, d, seed)?;
    let redundant = is_redundantly_rigid(g, d, seed)?;
    let connectivity = vertex_connectivity(g);
    let gauss = if gen_loc_rigid { Some(gauss_fiber_dim(g, d, seed)?) } else { None };
    let violation = evidence.globally_rigid && (connectivity < d + 1 || !redundant);
    Ok(RigidityReport {
        graph: g.clone(),
        d,
        seed,
        connectivity,
        inf_rigid,
        gen_loc_rigid,
        gen_glob_rigid: evidence.globally_rigid,
        redundant,
        stress_rank: evidence.stress_rank,
        shared_kernel_dim: evidence.shared_kernel_dim,
        mvar_dim,
        gauss_fiber_dim: gauss,
        violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;

    #[test]
    fn bipartite_report() {
        let r = hendrickson_check(&catalog::complete_bipartite(4, 3), 2, 0).unwrap();
        assert_eq!(r.connectivity, 3);
        assert!(r.redundant && r.gen_glob_rigid && !r.violation);
        assert_eq!(r.stress_rank, 4);
        assert_eq!(r.gauss_fiber_dim, Some(3));
    }

    #[test]
    fn k4_minus_edge_report() {
        let r = hendrickson_check(&catalog::k4_minus_edge(), 2, 0).unwrap();
        assert!(r.connectivity < 3);
        assert!(!r.gen_glob_rigid);
    }

    #[test]
    fn k5_in_space() {
        let r = hendrickson_check(&catalog::complete(5), 3, 0).unwrap();
        assert_eq!(r.connectivity, 4);
        assert!(r.inf_rigid && r.gen_loc_rigid && r.gen_glob_rigid && r.redundant);
    }

    #[test]
    fn json_fields() {
        let r = hendrickson_check(&catalog::complete(4), 2, 3).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        for k in [
            "graph", "d", "seed", "connectivity", "inf_rigid", "gen_loc_rigid", "gen_glob_rigid",
            "redundant", "stress_rank", "shared_kernel_dim", "mvar_dim", "gauss_fiber_dim",
        ] {
            assert!(keys.contains(&k), "missing {k}");
        }
        assert!(!keys.contains(&"violation"));
    }
}
