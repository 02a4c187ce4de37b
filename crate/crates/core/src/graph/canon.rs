//! Canonical forms for small graphs by individualization and refinement.
//!
//! Every leaf of the search tree is a discrete ordered partition; the form
//! is the lexicographically least upper-triangle adjacency string over the
//! leaves. There is no automorphism pruning, so cost grows with the
//! automorphism group. That is fine at the sizes used here (n <= 10).

use std::collections::BTreeMap;

use super::{OrderedGraph, VertexMap};
use crate::error::{Error, Result};

pub const MAX_ENUMERATION_VERTICES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    n: usize,
    m: usize,
    bits: Vec<u64>,
}

pub fn canonical_form(g: &OrderedGraph) -> CanonicalForm {
    canonize(g).0
}

/// Vertex map sending `g` to its canonical relabeling.
pub fn canonical_labeling(g: &OrderedGraph) -> VertexMap {
    canonize(g).1
}

pub fn is_isomorphic(g: &OrderedGraph, h: &OrderedGraph) -> bool {
    g.n() == h.n() && g.m() == h.m() && g.degrees_sorted() == h.degrees_sorted()
        && canonical_form(g) == canonical_form(h)
}

impl OrderedGraph {
    fn degrees_sorted(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable();
        d
    }

    /// Canonical representative: canonically relabeled, edges sorted.
    pub fn canonical(&self) -> OrderedGraph {
        self.relabel(&canonical_labeling(self)).sorted()
    }
}

fn canonize(g: &OrderedGraph) -> (CanonicalForm, VertexMap) {
    let adj = g.adjacency();
    let nb = g.neighbors();
    let start = refine(&nb, g.degrees());
    let mut best: Option<(Vec<u64>, Vec<usize>)> = None;
    search(&adj, &nb, start, &mut best);
    let (bits, perm) = best.unwrap_or_default();
    (CanonicalForm { n: g.n(), m: g.m(), bits }, VertexMap::new(perm).expect("leaf is a permutation"))
}

/// Equitable refinement; colors come back as dense ranks `0..k`.
fn refine(nb: &[Vec<usize>], mut colors: Vec<usize>) -> Vec<usize> {
    colors = rank(&colors);
    let mut classes = count_classes(&colors);
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..colors.len())
            .map(|v| {
                let mut s: Vec<usize> = nb[v].iter().map(|&w| colors[w]).collect();
                s.sort_unstable();
                (colors[v], s)
            })
            .collect();
        let next = rank(&sigs);
        let k = count_classes(&next);
        colors = next;
        if k == classes {
            return colors;
        }
        classes = k;
    }
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let mut order: BTreeMap<T, usize> = sigs.iter().map(|s| (s.clone(), 0)).collect();
    for (i, v) in order.values_mut().enumerate() {
        *v = i;
    }
    sigs.iter().map(|s| order[s]).collect()
}

fn count_classes(colors: &[usize]) -> usize {
    colors.iter().copied().max().map_or(0, |c| c + 1)
}

fn search(
    adj: &[Vec<bool>],
    nb: &[Vec<usize>],
    colors: Vec<usize>,
    best: &mut Option<(Vec<u64>, Vec<usize>)>,
) {
    let n = colors.len();
    if count_classes(&colors) == n {
        let bits = encode(adj, &colors);
        if best.as_ref().is_none_or(|(b, _)| bits < *b) {
            *best = Some((bits, colors));
        }
        return;
    }
    let mut sizes = vec![0usize; n];
    for &c in &colors {
        sizes[c] += 1;
    }
    let target = (0..n).find(|&c| sizes[c] > 1).expect("non-discrete partition");
    for v in (0..n).filter(|&v| colors[v] == target) {
        let split: Vec<usize> = colors
            .iter()
            .enumerate()
            .map(|(w, &c)| 2 * c + usize::from(c == target && w != v))
            .collect();
        search(adj, nb, refine(nb, split), best);
    }
}

/// Upper-triangle adjacency string of the graph relabeled by `pos`, packed
/// most-significant bit first so `Vec` order is string order.
fn encode(adj: &[Vec<bool>], pos: &[usize]) -> Vec<u64> {
    let n = pos.len();
    let mut at = vec![0; n];
    for (v, &p) in pos.iter().enumerate() {
        at[p] = v;
    }
    let total = n * n.saturating_sub(1) / 2;
    let mut bits = vec![0u64; total.div_ceil(64)];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if adj[at[i]][at[j]] {
                bits[k / 64] |= 1 << (63 - k % 64);
            }
            k += 1;
        }
    }
    bits
}

/// One representative per isomorphism class of graphs with `n` vertices and
/// `m` edges, in canonical form, sorted by canonical form.
pub fn enumerate_graphs(n: usize, m: usize, no_isolated: bool) -> Result<Vec<OrderedGraph>> {
    if n > MAX_ENUMERATION_VERTICES {
        return Err(Error::ScaleExceeded(format!(
            "graph enumeration supports at most {MAX_ENUMERATION_VERTICES} vertices, got {n}"
        )));
    }
    let pairs = n * n.saturating_sub(1) / 2;
    if m > pairs {
        return Ok(Vec::new());
    }
    let mut layer: BTreeMap<CanonicalForm, OrderedGraph> = BTreeMap::new();
    let empty = OrderedGraph::empty(n);
    layer.insert(canonical_form(&empty), empty);
    for _ in 0..m {
        let mut next = BTreeMap::new();
        for g in layer.values() {
            let adj = g.adjacency();
            for a in 0..n {
                for b in a + 1..n {
                    if adj[a][b] {
                        continue;
                    }
                    let h = g.with_edge(a, b).expect("non-edge");
                    let (form, map) = canonize(&h);
                    next.entry(form).or_insert_with(|| h.relabel(&map).sorted());
                }
            }
        }
        layer = next;
    }
    Ok(layer.into_values().filter(|g| !no_isolated || !g.has_isolated_vertices()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Canonical form by minimising over every vertex permutation.
    fn brute_force_form(g: &OrderedGraph) -> Vec<u64> {
        let adj = g.adjacency();
        let mut perm: Vec<usize> = (0..g.n()).collect();
        let mut best = encode(&adj, &perm);
        while next_permutation(&mut perm) {
            best = best.min(encode(&adj, &perm));
        }
        best
    }

    fn next_permutation(p: &mut [usize]) -> bool {
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            return false;
        };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    fn brute_force_classes(n: usize, m: usize, no_isolated: bool) -> usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut forms = std::collections::BTreeSet::new();
        for mask in 0u64..1 << pairs.len() {
            if mask.count_ones() as usize != m {
                continue;
            }
            let g = OrderedGraph::new(n, (0..pairs.len()).filter(|k| mask >> k & 1 == 1).map(|k| pairs[k]))
                .unwrap();
            if no_isolated && g.has_isolated_vertices() {
                continue;
            }
            forms.insert(brute_force_form(&g));
        }
        forms.len()
    }

    #[test]
    fn small_enumerations() {
        let k3 = enumerate_graphs(3, 3, false).unwrap();
        assert_eq!(k3.len(), 1);
        assert!(k3[0].is_complete());
        assert_eq!(enumerate_graphs(4, 3, true).unwrap().len(), 2);
        assert_eq!(brute_force_classes(4, 3, true), 2);
        let k4 = enumerate_graphs(4, 6, false).unwrap();
        assert_eq!(k4.len(), 1);
        assert!(k4[0].is_complete());
        assert!(enumerate_graphs(9, 3, false).is_err());
    }

    #[test]
    fn enumeration_matches_subset_scan() {
        for n in 2..=5 {
            for m in 0..=n * (n - 1) / 2 {
                for no_isolated in [false, true] {
                    assert_eq!(
                        enumerate_graphs(n, m, no_isolated).unwrap().len(),
                        brute_force_classes(n, m, no_isolated),
                        "n={n} m={m}"
                    );
                }
            }
        }
    }

    #[test]
    fn total_class_counts() {
        // 1, 2, 4, 11, 34, 156, 1044 graphs on 1..7 vertices
        let totals: Vec<usize> = (1..=7)
            .map(|n| (0..=n * (n - 1) / 2).map(|m| enumerate_graphs(n, m, false).unwrap().len()).sum())
            .collect();
        assert_eq!(totals, vec![1, 2, 4, 11, 34, 156, 1044]);
    }

    #[test]
    fn form_is_label_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (_, g) in catalog::builtin() {
            let base = canonical_form(&g);
            for _ in 0..5 {
                let mut perm: Vec<usize> = (0..g.n()).collect();
                perm.shuffle(&mut rng);
                let h = g.relabel(&VertexMap::new(perm).unwrap());
                assert_eq!(canonical_form(&h), base);
                assert_eq!(h.canonical(), g.canonical());
            }
        }
    }
}
