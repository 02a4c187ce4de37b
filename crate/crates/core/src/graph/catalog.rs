//! Named graphs and random graph generators.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{vertex_connectivity, OrderedGraph};
use crate::error::{Error, Result};

pub fn complete(n: usize) -> OrderedGraph {
    OrderedGraph::new(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
}

pub fn cycle(n: usize) -> OrderedGraph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    OrderedGraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn path(n: usize) -> OrderedGraph {
    OrderedGraph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

/// Star on `n` vertices centred at vertex 0.
pub fn star(n: usize) -> OrderedGraph {
    OrderedGraph::new(n, (1..n).map(|i| (0, i))).unwrap()
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> OrderedGraph {
    OrderedGraph::new(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j)))).unwrap()
}

/// Wheel with hub 0 and a rim cycle on `1..=k`; `wheel(4)` is W4 on 5 vertices.
pub fn wheel(k: usize) -> OrderedGraph {
    let rim = (0..k).map(|i| (1 + i, 1 + (i + 1) % k));
    let spokes = (1..=k).map(|i| (0, i));
    OrderedGraph::new(k + 1, rim.chain(spokes)).unwrap()
}

/// K4 with edge `{2, 3}` removed.
pub fn k4_minus_edge() -> OrderedGraph {
    OrderedGraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]).unwrap()
}

/// 4-cycle with a pendant edge on two of its vertices (n = 6, m = 6).
pub fn square_with_pendants() -> OrderedGraph {
    OrderedGraph::new(6, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (2, 5)]).unwrap()
}

/// The 2-separation `{0, 1}` and the side `{4, 5, 6}` that
/// [`reversal_pair`] flips.
pub const REVERSAL_CUT: ((usize, usize), &[usize]) = ((0, 1), &[4, 5, 6]);

/// Two 2-isomorphic, non-isomorphic graphs related by a Whitney reversal at
/// [`REVERSAL_CUT`]. Edge `i` of one corresponds to edge `i` of the other.
pub fn reversal_pair() -> (OrderedGraph, OrderedGraph) {
    let a = OrderedGraph::new(
        7,
        [(0, 1), (0, 2), (1, 2), (2, 3), (0, 3), (0, 4), (1, 5), (4, 5), (4, 6), (1, 6)],
    )
    .unwrap();
    let (sep, side) = REVERSAL_CUT;
    let d = super::whitney_reversal(&a, sep, side).expect("valid 2-separation");
    (a, d)
}

/// A K4 block (vertices 0..4) and a W4 block (hub 4, rim 5..9) joined by the
/// three bridging edges {0,5}, {1,6}, {2,7}. Removing any bridge leaves a
/// one-parameter flex in the plane.
pub fn bridged_blocks() -> OrderedGraph {
    let k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let w4 = [(5, 6), (6, 7), (7, 8), (5, 8), (4, 5), (4, 6), (4, 7), (4, 8)];
    let bridges = [(0, 5), (1, 6), (2, 7)];
    OrderedGraph::new(9, k4.into_iter().chain(w4).chain(bridges)).unwrap()
}

/// Index of the bridge {2,7} in [`bridged_blocks`] and the replacement
/// pair {2,4} that moves its block-side endpoint from the rim to the hub.
pub const BRIDGE_SWAP: (usize, (usize, usize)) = (16, (2, 4));

/// Built-in catalog used by the CLI and the acceptance suite.
pub fn builtin() -> Vec<(&'static str, OrderedGraph)> {
    vec![
        ("K3", complete(3)),
        ("K4", complete(4)),
        ("K5", complete(5)),
        ("K6", complete(6)),
        ("C4", cycle(4)),
        ("C5", cycle(5)),
        ("C6", cycle(6)),
        ("K4,3", complete_bipartite(4, 3)),
        ("W4", wheel(4)),
        ("W5", wheel(5)),
        ("reversal-a", reversal_pair().0),
        ("bridged-blocks", bridged_blocks()),
    ]
}

/// Resolves names such as `K5`, `C6`, `P4`, `S4`, `W5`, `K4,3`, `K4-e`, and
/// the catalog entries.
pub fn by_name(name: &str) -> Result<OrderedGraph> {
    if let Some((_, g)) = builtin().into_iter().find(|(k, _)| k.eq_ignore_ascii_case(name)) {
        return Ok(g);
    }
    match name {
        "reversal-d" => return Ok(reversal_pair().1),
        "K4-e" => return Ok(k4_minus_edge()),
        _ => {}
    }
    let bad = || Error::Parse(format!("unknown graph name `{name}`"));
    if name.len() < 2 || !name.is_ascii() {
        return Err(bad());
    }
    let (kind, rest) = name.split_at(1);
    if kind == "K" {
        if let Some((a, b)) = rest.split_once(',') {
            let (a, b) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
            return Ok(complete_bipartite(a, b));
        }
    }
    let k: usize = rest.parse().map_err(|_| bad())?;
    match kind {
        "K" => Ok(complete(k)),
        "C" if k >= 3 => Ok(cycle(k)),
        "P" => Ok(path(k)),
        "S" => Ok(star(k)),
        "W" if k >= 3 => Ok(wheel(k)),
        _ => Err(bad()),
    }
}

/// Uniform graph with `n` vertices and `m` edges, edges in random order.
pub fn random_graph<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> OrderedGraph {
    let mut pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    pairs.shuffle(rng);
    pairs.truncate(m);
    OrderedGraph::new(n, pairs).unwrap()
}

/// Random 3-connected graph on `n >= 4` vertices by rejection.
pub fn random_three_connected<R: Rng + ?Sized>(n: usize, rng: &mut R) -> OrderedGraph {
    assert!(n >= 4);
    let max = n * (n - 1) / 2;
    loop {
        let m = rng.gen_range((3 * n).div_ceil(2)..=max);
        let g = random_graph(n, m, rng);
        if vertex_connectivity(&g) >= 3 {
            return g;
        }
    }
}

/// Uniform random labeled tree on `n` vertices via a Prüfer sequence.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> OrderedGraph {
    if n < 2 {
        return OrderedGraph::empty(n);
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    OrderedGraph::new(n, edges).unwrap()
}
