//! Ordered graphs and the combinatorics built on them.
//!
//! Vertices are `0..n` inside the library. The text and JSON file formats use
//! the 1-based convention and are converted in [`io`].

mod canon;
pub mod catalog;
mod connectivity;
pub mod io;
mod matroid;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use canon::{canonical_form, canonical_labeling, enumerate_graphs, is_isomorphic, CanonicalForm};
pub use connectivity::{is_connected, vertex_connectivity};
pub use matroid::{
    enumerate_circuits, is_cycle_isomorphism, is_cycle_isomorphism_with_cap, is_forest,
    vertex_map_from_edge_bijection, whitney_reversal, DEFAULT_CIRCUIT_CAP,
};

/// A graph whose edges carry a fixed index order.
///
/// Edges are stored normalised as `(i, j)` with `i < j`. Edge order matters
/// only as an index labeling; isomorphism notions ignore it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "io::GraphJson", into = "io::GraphJson")]
pub struct OrderedGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl OrderedGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) out of range for {n} vertices"
                )));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({}, {})", e.0, e.1)));
            }
            out.push(e);
        }
        Ok(OrderedGraph { n, edges: out })
    }

    pub fn empty(n: usize) -> Self {
        OrderedGraph { n, edges: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> (usize, usize) {
        self.edges[idx]
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let e = (a.min(b), a.max(b));
        self.edges.iter().position(|&f| f == e)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edge_index(a, b).is_some()
    }

    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.n]; self.n];
        for &(a, b) in &self.edges {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        adj
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut nb = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            nb[a].push(b);
            nb[b].push(a);
        }
        for list in &mut nb {
            list.sort_unstable();
        }
        nb
    }

    /// Edge indices incident to each vertex.
    pub fn stars(&self) -> Vec<Vec<usize>> {
        let mut st = vec![Vec::new(); self.n];
        for (idx, &(a, b)) in self.edges.iter().enumerate() {
            st[a].push(idx);
            st[b].push(idx);
        }
        st
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn has_isolated_vertices(&self) -> bool {
        self.degrees().contains(&0)
    }

    pub fn is_complete(&self) -> bool {
        self.m() == self.n * self.n.saturating_sub(1) / 2
    }

    /// Copy with edge `idx` removed; later edges shift down by one.
    pub fn without_edge(&self, idx: usize) -> Self {
        let mut edges = self.edges.clone();
        edges.remove(idx);
        OrderedGraph { n: self.n, edges }
    }

    /// Copy with the edge `{a, b}` appended.
    pub fn with_edge(&self, a: usize, b: usize) -> Result<Self> {
        OrderedGraph::new(self.n, self.edges.iter().copied().chain(std::iter::once((a, b))))
    }

    /// Copy with edge `idx` replaced in place by `{a, b}`.
    pub fn replace_edge(&self, idx: usize, a: usize, b: usize) -> Result<Self> {
        let mut edges = self.edges.clone();
        edges[idx] = (a, b);
        OrderedGraph::new(self.n, edges)
    }

    /// Applies a vertex relabeling; edge order is preserved.
    pub fn relabel(&self, map: &VertexMap) -> Self {
        assert_eq!(map.len(), self.n, "vertex map size mismatch");
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (map.apply(a), map.apply(b));
                (x.min(y), x.max(y))
            })
            .collect();
        OrderedGraph { n: self.n, edges }
    }

    /// Same edge set, edges sorted lexicographically.
    pub fn sorted(&self) -> Self {
        let mut edges = self.edges.clone();
        edges.sort_unstable();
        OrderedGraph { n: self.n, edges }
    }

    /// Adds a vertex `n` joined to every original vertex. New edges are
    /// appended in vertex order after the original ones.
    pub fn cone(&self) -> Self {
        let apex = self.n;
        let mut edges = self.edges.clone();
        edges.extend((0..self.n).map(|v| (v, apex)));
        OrderedGraph { n: self.n + 1, edges }
    }

    /// Edges with both endpoints in `keep`, indices relative to `self`.
    pub fn induced_edge_indices(&self, keep: &[bool]) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| keep[a] && keep[b])
            .map(|(i, _)| i)
            .collect()
    }
}

/// Free function form of [`OrderedGraph::cone`].
pub fn cone(g: &OrderedGraph) -> OrderedGraph {
    g.cone()
}

/// A permutation of vertices: `apply(v)` is the image of `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexMap {
    perm: Vec<usize>,
}

impl VertexMap {
    pub fn new(perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || seen[p] {
                return Err(Error::InvalidGraph("vertex map is not a permutation".into()));
            }
            seen[p] = true;
        }
        Ok(VertexMap { perm })
    }

    pub fn identity(n: usize) -> Self {
        VertexMap { perm: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn apply(&self, v: usize) -> usize {
        self.perm[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (v, &p) in self.perm.iter().enumerate() {
            inv[p] = v;
        }
        VertexMap { perm: inv }
    }
}

/// A bijection from the edge indices of `source` to those of `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeBijection {
    source: OrderedGraph,
    target: OrderedGraph,
    map: Vec<usize>,
}

impl EdgeBijection {
    pub fn new(source: OrderedGraph, target: OrderedGraph, map: Vec<usize>) -> Result<Self> {
        if source.m() != target.m() {
            return Err(Error::ShapeMismatch(format!(
                "edge counts differ: {} vs {}",
                source.m(),
                target.m()
            )));
        }
        if map.len() != source.m() {
            return Err(Error::ShapeMismatch("edge map has wrong length".into()));
        }
        let mut seen = vec![false; map.len()];
        for &t in &map {
            if t >= map.len() || seen[t] {
                return Err(Error::ShapeMismatch("edge map is not a bijection".into()));
            }
            seen[t] = true;
        }
        Ok(EdgeBijection { source, target, map })
    }

    /// Edge `i` of `source` goes to edge `i` of `target`.
    pub fn by_index(source: OrderedGraph, target: OrderedGraph) -> Result<Self> {
        let m = source.m();
        EdgeBijection::new(source, target, (0..m).collect())
    }

    /// The bijection induced on edges by a vertex relabeling of `source`.
    pub fn induced(source: &OrderedGraph, target: &OrderedGraph, vmap: &VertexMap) -> Result<Self> {
        let mut map = Vec::with_capacity(source.m());
        for &(a, b) in source.edges() {
            let idx = target.edge_index(vmap.apply(a), vmap.apply(b)).ok_or_else(|| {
                Error::ShapeMismatch("vertex map does not carry source edges onto target".into())
            })?;
            map.push(idx);
        }
        EdgeBijection::new(source.clone(), target.clone(), map)
    }

    pub fn source(&self) -> &OrderedGraph {
        &self.source
    }

    pub fn target(&self) -> &OrderedGraph {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, e: usize) -> usize {
        self.map[e]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &t) in self.map.iter().enumerate() {
            inv[t] = i;
        }
        EdgeBijection { source: self.target.clone(), target: self.source.clone(), map: inv }
    }
}
