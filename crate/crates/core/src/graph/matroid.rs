//! Graphic-matroid operations: forests, circuits, cycle isomorphisms and
//! Whitney's 2-isomorphism surgery.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::{EdgeBijection, OrderedGraph, VertexMap};
use crate::error::{Error, Result};

pub const DEFAULT_CIRCUIT_CAP: usize = 100_000;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// True iff the given edges contain no cycle.
///
/// # Panics
/// If an index is out of range.
pub fn is_forest(g: &OrderedGraph, subset: &[usize]) -> bool {
    let mut uf = UnionFind::new(g.n());
    subset.iter().all(|&e| {
        let (a, b) = g.edge(e);
        uf.union(a, b)
    })
}

/// Edge sets supporting simple cycles, each sorted ascending. Fails with
/// [`Error::CapExceeded`] once more than `cap` circuits are found.
pub fn enumerate_circuits(g: &OrderedGraph, cap: usize) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    let mut inc: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (idx, &(a, b)) in g.edges().iter().enumerate() {
        inc[a].push((b, idx));
        inc[b].push((a, idx));
    }
    let mut out = Vec::new();
    for start in 0..n {
        let mut on_path = vec![false; n];
        on_path[start] = true;
        let mut path = vec![start];
        let mut path_edges = Vec::new();
        extend_cycles(&inc, start, &mut path, &mut path_edges, &mut on_path, &mut out, cap)?;
    }
    out.sort();
    Ok(out)
}

fn extend_cycles(
    inc: &[Vec<(usize, usize)>],
    start: usize,
    path: &mut Vec<usize>,
    path_edges: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> Result<()> {
    let v = *path.last().unwrap();
    for &(w, e) in &inc[v] {
        if w == start {
            // each cycle is traversed in both directions; keep one
            if path.len() >= 3 && path[1] < v {
                let mut c = path_edges.clone();
                c.push(e);
                c.sort_unstable();
                out.push(c);
                if out.len() > cap {
                    return Err(Error::CapExceeded { cap });
                }
            }
        } else if w > start && !on_path[w] {
            on_path[w] = true;
            path.push(w);
            path_edges.push(e);
            extend_cycles(inc, start, path, path_edges, on_path, out, cap)?;
            path.pop();
            path_edges.pop();
            on_path[w] = false;
        }
    }
    Ok(())
}

pub fn is_cycle_isomorphism(b: &EdgeBijection) -> Result<bool> {
    is_cycle_isomorphism_with_cap(b, DEFAULT_CIRCUIT_CAP)
}

/// True iff `b` carries the circuits of its source exactly onto the circuits
/// of its target. Because `b` is a bijection on edges, equality of the two
/// circuit families covers both directions.
pub fn is_cycle_isomorphism_with_cap(b: &EdgeBijection, cap: usize) -> Result<bool> {
    let src = enumerate_circuits(b.source(), cap)?;
    let dst = enumerate_circuits(b.target(), cap)?;
    if src.len() != dst.len() {
        return Ok(false);
    }
    let dst: HashSet<Vec<usize>> = dst.into_iter().collect();
    Ok(src.iter().all(|c| {
        let mut img: Vec<usize> = c.iter().map(|&e| b.apply(e)).collect();
        img.sort_unstable();
        dst.contains(&img)
    }))
}

/// Recovers a vertex relabeling inducing `b`, or `None` if none exists.
///
/// Each source vertex must go to a target vertex whose star (set of incident
/// edges) is the image of its own star. Among several valid maps the
/// lexicographically least is returned.
pub fn vertex_map_from_edge_bijection(b: &EdgeBijection) -> Option<VertexMap> {
    let (src, dst) = (b.source(), b.target());
    if src.n() != dst.n() || src.has_isolated_vertices() || dst.has_isolated_vertices() {
        return None;
    }
    let mut by_star: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (w, mut star) in dst.stars().into_iter().enumerate() {
        star.sort_unstable();
        by_star.entry(star).or_default().push(w);
    }
    let mut candidates = Vec::with_capacity(src.n());
    for star in src.stars() {
        let mut img: Vec<usize> = star.iter().map(|&e| b.apply(e)).collect();
        img.sort_unstable();
        candidates.push(by_star.get(&img)?.clone());
    }
    let mut assign = vec![usize::MAX; src.n()];
    let mut used = vec![false; dst.n()];
    if !assign_stars(0, &candidates, &mut assign, &mut used, b) {
        return None;
    }
    VertexMap::new(assign).ok()
}

fn assign_stars(
    v: usize,
    candidates: &[Vec<usize>],
    assign: &mut [usize],
    used: &mut [bool],
    b: &EdgeBijection,
) -> bool {
    if v == assign.len() {
        return b.source().edges().iter().enumerate().all(|(e, &(x, y))| {
            let (p, q) = (assign[x], assign[y]);
            b.target().edge(b.apply(e)) == (p.min(q), p.max(q))
        });
    }
    for &w in &candidates[v] {
        if !used[w] {
            used[w] = true;
            assign[v] = w;
            if assign_stars(v + 1, candidates, assign, used, b) {
                return true;
            }
            used[w] = false;
        }
    }
    assign[v] = usize::MAX;
    false
}

/// Whitney reversal at the 2-separation `{a, b}`: every edge joining `side`
/// to `a` is moved to `b` and vice versa. Edge indices are preserved, so the
/// identity edge map is a cycle isomorphism between input and output.
pub fn whitney_reversal(
    g: &OrderedGraph,
    separator: (usize, usize),
    side: &[usize],
) -> Result<OrderedGraph> {
    let (a, b) = separator;
    let bad = || Error::NotA2Separation(a, b);
    let n = g.n();
    if a == b || a >= n || b >= n {
        return Err(bad());
    }
    let side: BTreeSet<usize> = side.iter().copied().collect();
    if side.is_empty() || side.iter().any(|&v| v >= n || v == a || v == b) {
        return Err(bad());
    }
    // side must be a union of components of g - {a, b}, with something left over
    let rest = n - 2 - side.len();
    if rest == 0 {
        return Err(bad());
    }
    for &(x, y) in g.edges() {
        let (sx, sy) = (side.contains(&x), side.contains(&y));
        let (cut_x, cut_y) = (x == a || x == b, y == a || y == b);
        if sx != sy && !cut_x && !cut_y {
            return Err(bad());
        }
    }
    let swap = |v: usize| {
        if v == a {
            b
        } else if v == b {
            a
        } else {
            v
        }
    };
    let edges = g.edges().iter().map(|&(x, y)| {
        if side.contains(&x) {
            (x, swap(y))
        } else if side.contains(&y) {
            (swap(x), y)
        } else {
            (x, y)
        }
    });
    OrderedGraph::new(n, edges)
}
