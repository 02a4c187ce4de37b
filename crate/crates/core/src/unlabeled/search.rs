//! Backtracking search for realizations of one graph from an unlabeled
//! multiset of squared edge lengths.
//!
//! Vertices are placed one at a time in a fixed order; when a vertex is
//! placed, every edge back to an already-placed vertex receives an unused
//! value. While the partial framework has finitely many realizations (up to
//! congruence) they are tracked exactly: each new point is found in closed
//! form from the sphere equations of its placed neighbours, which yields
//! zero, one or two candidates. When a placement leaves a continuous family
//! the state switches to "flexible" and carries a few witness realizations;
//! feasibility of later steps is then decided by local least squares.
//!
//! Pruning is one-sided: a partial assignment is dropped only when no
//! realization of the partial framework is found. The closed-form branch is
//! exact up to the residual tolerance; the least-squares branch can miss
//! realizations, which the restart count controls.

use std::time::{Duration, Instant};

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::congruence::find_equivalence;
use super::realize::{convergence_threshold, levenberg_marquardt, realize, refine, DEFAULT_RESTARTS};
use crate::graph::{OrderedGraph, VertexMap};
use crate::linalg::Configuration;
use crate::rigidity::{generic_rank, rigid_rank};

/// Partial realizations kept per node once the search is flexible.
const MAX_WITNESSES: usize = 4;

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub restarts: usize,
    pub seed: u64,
    pub max_time: Option<Duration>,
    /// Relative residual tolerance on squared lengths used for pruning.
    pub tolerance: f64,
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { restarts: DEFAULT_RESTARTS, seed: 0, max_time: None, tolerance: 1e-8, parallel: true }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub graphs_tried: usize,
    pub nodes: usize,
    pub assignments_pruned: usize,
    pub full_assignments: usize,
    pub flexible_assignments: usize,
    pub timed_out: bool,
}

impl SearchStats {
    pub(crate) fn merge(&mut self, other: &SearchStats) {
        self.graphs_tried += other.graphs_tried;
        self.nodes += other.nodes;
        self.assignments_pruned += other.assignments_pruned;
        self.full_assignments += other.full_assignments;
        self.flexible_assignments += other.flexible_assignments;
        self.timed_out |= other.timed_out;
    }
}

/// A complete value assignment that admits realizations.
#[derive(Debug, Clone)]
pub(crate) struct Found {
    /// `assignment[e]` is the index (into the sorted values) given to edge `e`.
    pub assignment: Vec<usize>,
    pub configs: Vec<Vec<f64>>,
    /// The framework is generically flexible; `configs` holds one witness of
    /// a continuous family.
    pub flexible: bool,
}

#[derive(Debug)]
pub(crate) struct GraphSearchResult {
    /// The searched graph, relabeled so that the placement order is `0..n`.
    pub graph: OrderedGraph,
    pub found: Vec<Found>,
    pub stats: SearchStats,
}

enum State {
    /// All realizations of the partial framework, each with the number of
    /// leading axes its points occupy.
    Exact(Vec<(Vec<f64>, usize)>),
    Flexible(Vec<Vec<f64>>),
}

enum Extension {
    Finite(Vec<(Vec<f64>, usize)>),
    Continuum(Vec<f64>),
    /// No point satisfies the constraints; carries the least-squares guess.
    Infeasible(Vec<f64>),
}

/// Placement order: repeatedly take the vertex with the most placed
/// neighbours, breaking ties by degree and then by label.
fn placement_order(g: &OrderedGraph) -> Vec<usize> {
    let n = g.n();
    let adj = g.adjacency();
    let deg = g.degrees();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let back = (0..n).filter(|&u| placed[u] && adj[u][v]).count();
                (back, deg[v], std::cmp::Reverse(v))
            })
            .expect("unplaced vertex");
        placed[v] = true;
        order.push(v);
    }
    order
}

struct Searcher<'a> {
    graph: OrderedGraph,
    values: &'a [f64],
    d: usize,
    /// `back[k]`: (edge index, earlier endpoint) for edges whose later
    /// endpoint is `k`.
    back: Vec<Vec<(usize, usize)>>,
    tol_abs: f64,
    length_scale: f64,
    rigid: bool,
    opts: &'a SearchOptions,
    deadline: Option<Instant>,
    rng: ChaCha8Rng,
    stats: SearchStats,
    found: Vec<Found>,
}

pub(crate) fn search_graph(
    h: &OrderedGraph,
    values: &[f64],
    d: usize,
    opts: &SearchOptions,
    seed: u64,
    deadline: Option<Instant>,
) -> GraphSearchResult {
    assert_eq!(h.m(), values.len(), "one value per edge");
    let order = placement_order(h);
    let mut pos = vec![0; h.n()];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    let graph = h.relabel(&VertexMap::new(pos).expect("order is a permutation"));
    let mut back = vec![Vec::new(); graph.n()];
    for (e, &(a, b)) in graph.edges().iter().enumerate() {
        back[b].push((e, a));
    }
    let scale = values.iter().copied().fold(0.0, f64::max);
    let n = graph.n();
    let rigid = if n > d {
        generic_rank(&graph, d, seed) == rigid_rank(n, d)
    } else {
        graph.is_complete()
    };
    let mut s = Searcher {
        graph,
        values,
        d,
        back,
        tol_abs: opts.tolerance * scale.max(f64::MIN_POSITIVE),
        length_scale: scale.sqrt().max(1e-12),
        rigid,
        opts,
        deadline,
        rng: ChaCha8Rng::seed_from_u64(seed),
        stats: SearchStats { graphs_tried: 1, ..SearchStats::default() },
        found: Vec::new(),
    };
    if n > 0 {
        let mut assign = vec![usize::MAX; values.len()];
        let mut used = vec![false; values.len()];
        let root = State::Exact(vec![(vec![0.0; n * d], 0)]);
        s.step(1, &mut assign, &mut used, &root);
    }
    GraphSearchResult { graph: s.graph, found: s.found, stats: s.stats }
}

impl Searcher<'_> {
    fn out_of_time(&mut self) -> bool {
        if let Some(dl) = self.deadline {
            if Instant::now() >= dl {
                self.stats.timed_out = true;
            }
        }
        self.stats.timed_out
    }

    fn step(&mut self, k: usize, assign: &mut [usize], used: &mut [bool], state: &State) {
        if self.out_of_time() {
            return;
        }
        if k == self.graph.n() {
            self.leaf(assign, state);
            return;
        }
        self.assign_back(k, 0, assign, used, state);
    }

    fn assign_back(&mut self, k: usize, j: usize, assign: &mut [usize], used: &mut [bool], state: &State) {
        if j == self.back[k].len() {
            self.stats.nodes += 1;
            match self.extend(k, assign, state) {
                Some(child) => self.step(k + 1, assign, used, &child),
                None => self.stats.assignments_pruned += 1,
            }
            return;
        }
        let edge = self.back[k][j].0;
        for val in 0..self.values.len() {
            if used[val] {
                continue;
            }
            used[val] = true;
            assign[edge] = val;
            self.assign_back(k, j + 1, assign, used, state);
            assign[edge] = usize::MAX;
            used[val] = false;
            if self.stats.timed_out {
                return;
            }
        }
    }

    fn neighbours(&self, k: usize, assign: &[usize]) -> Vec<(usize, f64)> {
        self.back[k].iter().map(|&(e, u)| (u, self.values[assign[e]])).collect()
    }

    fn extend(&mut self, k: usize, assign: &[usize], state: &State) -> Option<State> {
        let nbrs = self.neighbours(k, assign);
        match state {
            State::Exact(list) => {
                let mut finite = Vec::new();
                let mut witnesses = Vec::new();
                for (x, s) in list {
                    match self.closed_form(x, *s, k, &nbrs) {
                        Extension::Finite(sols) => finite.extend(sols),
                        Extension::Continuum(w) => witnesses.push(w),
                        Extension::Infeasible(_) => {}
                    }
                }
                if witnesses.is_empty() {
                    (!finite.is_empty()).then_some(State::Exact(finite))
                } else {
                    witnesses.extend(finite.into_iter().map(|(x, _)| x));
                    witnesses.truncate(MAX_WITNESSES);
                    Some(State::Flexible(witnesses))
                }
            }
            State::Flexible(ws) => {
                let mut next = Vec::new();
                let mut guesses = Vec::new();
                for w in ws {
                    match self.closed_form(w, self.d, k, &nbrs) {
                        Extension::Finite(sols) => next.extend(sols.into_iter().map(|(x, _)| x)),
                        Extension::Continuum(x) => next.push(x),
                        Extension::Infeasible(x) => guesses.push(x),
                    }
                }
                if next.is_empty() {
                    next = self.flexible_fallback(k, assign, guesses);
                }
                next.truncate(MAX_WITNESSES);
                (!next.is_empty()).then_some(State::Flexible(next))
            }
        }
    }

    /// Partial framework on vertices `0..=k` with the assigned edges.
    fn partial(&self, k: usize, assign: &[usize]) -> (OrderedGraph, Vec<f64>) {
        let (edges, target): (Vec<_>, Vec<_>) = self
            .graph
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, &(_, b))| b <= k)
            .map(|(e, &ab)| (ab, self.values[assign[e]]))
            .unzip();
        (OrderedGraph::new(k + 1, edges).expect("subgraph"), target)
    }

    /// Least-squares search for a realization of the partial framework,
    /// first from the warm guesses, then from random starts.
    fn flexible_fallback(&mut self, k: usize, assign: &[usize], guesses: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
        let d = self.d;
        let n = self.graph.n();
        let (sub, target) = self.partial(k, assign);
        let threshold = convergence_threshold(&target);
        let embed = |x: &[f64]| {
            let mut full = vec![0.0; n * d];
            full[..x.len()].copy_from_slice(x);
            full
        };
        for g in guesses {
            let mut x = g[..(k + 1) * d].to_vec();
            let free: Vec<usize> = (0..x.len()).collect();
            if levenberg_marquardt(sub.edges(), &target, d, &mut x, &free, threshold) < threshold {
                return vec![embed(&x)];
            }
        }
        let res = realize(&sub, &target, d, self.opts.restarts, self.rng.gen());
        if res.converged {
            vec![embed(&res.config.to_f64())]
        } else {
            Vec::new()
        }
    }

    /// Solves for the position of vertex `k` from its placed neighbours.
    /// Points of `x` occupy the first `span` axes.
    fn closed_form(&self, x: &[f64], span: usize, k: usize, nbrs: &[(usize, f64)]) -> Extension {
        let d = self.d;
        let point = |v: usize| &x[v * d..(v + 1) * d];
        let with = |p: &[f64]| {
            let mut y = x.to_vec();
            y[k * d..(k + 1) * d].copy_from_slice(p);
            y
        };
        let axis = |i: usize| {
            let mut e = vec![0.0; d];
            e[i] = 1.0;
            e
        };
        if nbrs.is_empty() {
            // new component: anywhere will do
            return Extension::Continuum(with(&vec![2.0 * self.length_scale; d]));
        }
        let (u1, t1) = (point(nbrs[0].0).to_vec(), nbrs[0].1);
        let diffs: Vec<Vec<f64>> = nbrs[1..]
            .iter()
            .map(|&(u, _)| point(u).iter().zip(&u1).map(|(a, b)| a - b).collect())
            .collect();
        let basis = orthonormalize(&diffs, 1e-9 * self.length_scale);
        let a = basis.len();
        let mut lambda = vec![0.0; a];
        if a > 0 {
            let rows = diffs.len();
            let m = DMatrix::from_fn(rows, a, |i, j| dot(&diffs[i], &basis[j]));
            let rhs = DVector::from_fn(rows, |i, _| (t1 - nbrs[i + 1].1 + dot(&diffs[i], &diffs[i])) / 2.0);
            let sol = (m.transpose() * &m).lu().solve(&(m.transpose() * rhs));
            match sol {
                Some(s) => lambda = s.iter().copied().collect(),
                None => return Extension::Infeasible(with(&u1)),
            }
        }
        let mut x0 = u1.clone();
        for (l, b) in lambda.iter().zip(&basis) {
            for (xi, bi) in x0.iter_mut().zip(b) {
                *xi += l * bi;
            }
        }
        let h2 = t1 - lambda.iter().map(|l| l * l).sum::<f64>();
        if h2 < -self.tol_abs {
            return Extension::Infeasible(with(&x0));
        }
        let h = h2.max(0.0).sqrt();
        let spare = span.saturating_sub(a);
        let shift = |dir: &[f64], sign: f64| -> Vec<f64> {
            x0.iter().zip(dir).map(|(p, q)| p + sign * h * q).collect()
        };
        let candidates: Vec<(Vec<f64>, usize)>;
        let mut continuum = false;
        if h2 <= self.tol_abs {
            candidates = vec![(x0.clone(), span)];
        } else if spare == 0 && span < d {
            candidates = vec![(shift(&axis(span), 1.0), span + 1)];
        } else if spare == 0 {
            return Extension::Infeasible(with(&x0));
        } else if spare == 1 && span == d {
            let normal = complement(&basis, d);
            candidates = vec![(shift(&normal, 1.0), span), (shift(&normal, -1.0), span)];
        } else if span < d {
            continuum = true;
            candidates = vec![(shift(&axis(span), 1.0), span + 1)];
        } else {
            continuum = true;
            candidates = vec![(shift(&complement(&basis, d), 1.0), span)];
        }
        let check = 10.0 * self.tol_abs;
        let valid: Vec<(Vec<f64>, usize)> = candidates
            .into_iter()
            .filter(|(p, _)| {
                nbrs.iter().all(|&(u, t)| {
                    let dist: f64 = point(u).iter().zip(p).map(|(a, b)| (a - b).powi(2)).sum();
                    (dist - t).abs() <= check
                })
            })
            .map(|(p, s)| (with(&p), s))
            .collect();
        match (valid.is_empty(), continuum) {
            (true, _) => Extension::Infeasible(with(&x0)),
            (false, true) => {
                Extension::Continuum(valid.into_iter().next().unwrap().0)
            }
            (false, false) => Extension::Finite(valid),
        }
    }

    fn leaf(&mut self, assign: &[usize], state: &State) {
        self.stats.full_assignments += 1;
        let target: Vec<f64> = assign.iter().map(|&v| self.values[v]).collect();
        let polish = |x: &Vec<f64>| {
            let r = refine(&self.graph, &target, self.d, x);
            if r.converged {
                r.config.to_f64()
            } else {
                x.clone()
            }
        };
        let found = match state {
            State::Exact(list) => {
                Found { assignment: assign.to_vec(), configs: list.iter().map(|(x, _)| polish(x)).collect(), flexible: false }
            }
            State::Flexible(ws) if !self.rigid => {
                self.stats.flexible_assignments += 1;
                Found { assignment: assign.to_vec(), configs: vec![polish(&ws[0])], flexible: true }
            }
            State::Flexible(ws) => {
                let mut configs: Vec<Vec<f64>> = ws.iter().map(polish).collect();
                for _ in 0..self.opts.restarts {
                    let r = realize(&self.graph, &target, self.d, 1, self.rng.gen());
                    if r.converged {
                        configs.push(r.config.to_f64());
                    }
                }
                Found { assignment: assign.to_vec(), configs: self.distinct(configs), flexible: false }
            }
        };
        self.found.push(found);
    }

    /// Drops configurations congruent (same labeling) to an earlier one.
    fn distinct(&self, configs: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
        let n = self.graph.n();
        let d = self.d;
        let mut out: Vec<Vec<f64>> = Vec::new();
        for c in configs {
            let p = Configuration::numeric(n, d, c.clone());
            if !out.iter().any(|o| {
                super::congruence::congruent(&p, &Configuration::numeric(n, d, o.clone()), 1e-6).unwrap_or(false)
            }) {
                out.push(c);
            }
        }
        out
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Gram-Schmidt with a drop tolerance on residual norms.
fn orthonormalize(vs: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = dot(&w, b);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
        }
        let norm = dot(&w, &w).sqrt();
        if norm > tol {
            basis.push(w.into_iter().map(|x| x / norm).collect());
        }
    }
    basis
}

/// A unit vector orthogonal to every vector of `basis` (which must span
/// fewer than `d` dimensions).
fn complement(basis: &[Vec<f64>], d: usize) -> Vec<f64> {
    let mut best = (0.0, vec![0.0; d]);
    for i in 0..d {
        let mut w = vec![0.0; d];
        w[i] = 1.0;
        for b in basis {
            let c = dot(&w, b);
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi -= c * bi;
            }
        }
        let norm = dot(&w, &w).sqrt();
        if norm > best.0 {
            best = (norm, w.into_iter().map(|x| x / norm).collect());
        }
    }
    best.1
}

/// Edge-labeled isomorphism test: a vertex bijection carrying every edge of
/// `g` with label `la[e]` onto an edge of `h` with the same label.
pub(crate) fn labeled_isomorphic(g: &OrderedGraph, la: &[usize], h: &OrderedGraph, lb: &[usize]) -> bool {
    if g.n() != h.n() || g.m() != h.m() {
        return false;
    }
    let n = g.n();
    let mut lg = vec![vec![usize::MAX; n]; n];
    let mut lh = vec![vec![usize::MAX; n]; n];
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        lg[a][b] = la[e];
        lg[b][a] = la[e];
    }
    for (e, &(a, b)) in h.edges().iter().enumerate() {
        lh[a][b] = lb[e];
        lh[b][a] = lb[e];
    }
    fn extend(v: usize, perm: &mut Vec<usize>, used: &mut [bool], lg: &[Vec<usize>], lh: &[Vec<usize>]) -> bool {
        if v == lg.len() {
            return true;
        }
        for w in 0..lg.len() {
            if used[w] || !(0..v).all(|u| lg[u][v] == lh[perm[u]][w]) {
                continue;
            }
            used[w] = true;
            perm.push(w);
            if extend(v + 1, perm, used, lg, lh) {
                return true;
            }
            perm.pop();
            used[w] = false;
        }
        false
    }
    extend(0, &mut Vec::with_capacity(n), &mut vec![false; n], &lg, &lh)
}

/// Whether two rigid solutions on the same graph are equivalent under
/// relabeling and congruence.
pub(crate) fn same_class(g: &OrderedGraph, p: &[f64], h: &OrderedGraph, q: &[f64], d: usize) -> bool {
    let p = Configuration::numeric(g.n(), d, p.to_vec());
    let q = Configuration::numeric(h.n(), d, q.to_vec());
    find_equivalence(g, &p, h, &q, 1e-6).is_some()
}
