use std::collections::VecDeque;

use super::OrderedGraph;

pub fn is_connected(g: &OrderedGraph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let nb = g.neighbors();
    let mut seen = vec![false; g.n()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &nb[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Minimum number of vertices whose removal disconnects `g` or leaves a
/// single vertex. `K_n` has connectivity `n - 1`.
///
/// Computed by Menger's theorem: the minimum over non-adjacent pairs of the
/// number of internally vertex-disjoint paths, found by unit-capacity
/// max-flow on the vertex-split digraph.
pub fn vertex_connectivity(g: &OrderedGraph) -> usize {
    let n = g.n();
    if n < 2 {
        return 0;
    }
    let adj = g.adjacency();
    let mut best = n - 1;
    for s in 0..n {
        for t in s + 1..n {
            if adj[s][t] {
                continue;
            }
            best = best.min(local_connectivity(g, s, t, best));
            if best == 0 {
                return 0;
            }
        }
    }
    best
}

struct FlowNet {
    head: Vec<usize>,
    cap: Vec<u32>,
    adj: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet { head: Vec::new(), cap: Vec::new(), adj: vec![Vec::new(); nodes] }
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        self.adj[from].push(self.head.len());
        self.head.push(to);
        self.cap.push(cap);
        self.adj[to].push(self.head.len());
        self.head.push(from);
        self.cap.push(0);
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via = vec![usize::MAX; self.adj.len()];
        let mut queue = VecDeque::from([s]);
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &arc in &self.adj[u] {
                let w = self.head[arc];
                if self.cap[arc] > 0 && !seen[w] {
                    seen[w] = true;
                    via[w] = arc;
                    queue.push_back(w);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut v = t;
        while v != s {
            let arc = via[v];
            self.cap[arc] -= 1;
            self.cap[arc ^ 1] += 1;
            v = self.head[arc ^ 1];
        }
        true
    }
}

/// Internally disjoint s-t paths, capped at `limit`.
fn local_connectivity(g: &OrderedGraph, s: usize, t: usize, limit: usize) -> usize {
    let n = g.n();
    // v_in = 2v, v_out = 2v + 1
    let mut net = FlowNet::new(2 * n);
    for v in 0..n {
        let c = if v == s || v == t { u32::MAX / 2 } else { 1 };
        net.add_arc(2 * v, 2 * v + 1, c);
    }
    for &(a, b) in g.edges() {
        net.add_arc(2 * a + 1, 2 * b, 1);
        net.add_arc(2 * b + 1, 2 * a, 1);
    }
    let mut flow = 0;
    while flow < limit && net.augment(2 * s + 1, 2 * t) {
        flow += 1;
    }
    flow
}
