//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs as a plain binary so the lines always print.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rigidity_core::graph::{
    canonical_form, catalog, is_cycle_isomorphism, vertex_map_from_edge_bijection, EdgeBijection, OrderedGraph,
    VertexMap,
};
use rigidity_core::linalg::{random_generic_configuration, random_unit_configuration, Configuration};
use rigidity_core::rigidity::{
    affine_measurement_map_rank, equilibrium_residuals, gauss_fiber_dim, generic_sample, global_rigidity_evidence,
    hendrickson_check, is_generically_globally_rigid, is_generically_locally_rigid, measure,
    measurement_variety_dim, restricted_measurement_rank, rigid_motion_dim, rigidity_matrix,
    shared_stress_kernel_dim, stress_basis, stress_matrix, Framework,
};
use rigidity_core::unlabeled::{
    certify, congruent, find_equivalence, not_rr_pair, realize, reconstruct, residual,
    same_measurement_variety_sampled, DistanceMultiset, SearchOptions, DEFAULT_RESTARTS,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() <= limit, || format!("took {:.1?}, limit {limit:?}", start.elapsed()))
}

fn floats(mv: rigidity_core::MeasurementVector) -> Vec<f64> {
    mv.to_f64()
}

/// Measured values of a framework on `g` at unit-scale random coordinates.
fn instance(g: &OrderedGraph, d: usize, seed: u64) -> (Configuration, DistanceMultiset) {
    let p = random_unit_configuration(g.n(), d, seed);
    let f = Framework::new(g.clone(), p.clone()).unwrap();
    (p, DistanceMultiset::new(floats(measure(&f))).unwrap())
}

fn ggr_classification() -> Outcome {
    let start = Instant::now();
    let mut yes: Vec<(String, OrderedGraph, usize)> = (1..=3).map(|d| (format!("K{}", d + 2), catalog::complete(d + 2), d)).collect();
    yes.push(("K4,3".into(), catalog::complete_bipartite(4, 3), 2));
    yes.push(("W4".into(), catalog::wheel(4), 2));
    yes.push(("W5".into(), catalog::wheel(5), 2));
    let mut no: Vec<(String, OrderedGraph, usize)> = (4..=7).map(|n| (format!("C{n}"), catalog::cycle(n), 2)).collect();
    no.push(("K4-e".into(), catalog::k4_minus_edge(), 2));
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for d in 1..=3 {
        for n in d + 2..=7 {
            no.push((format!("tree n={n}"), catalog::random_tree(n, &mut rng), d));
        }
        no.push((format!("path n={}", d + 2), catalog::path(d + 2), d));
        no.push((format!("star n={}", d + 3), catalog::star(d + 3), d));
    }
    for (name, g, d) in &yes {
        ensure(is_generically_globally_rigid(g, *d, 0).unwrap(), || format!("{name} d={d} should be GGR"))?;
    }
    for (name, g, d) in &no {
        ensure(!is_generically_globally_rigid(g, *d, 0).unwrap(), || format!("{name} d={d} should not be GGR"))?;
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("{} positive, {} negative in {:.2?}", yes.len(), no.len(), start.elapsed()))
}

fn rank_formulas() -> Outcome {
    let start = Instant::now();
    let mut rigid = 0;
    for (name, g) in catalog::builtin() {
        for d in 1..=3 {
            if g.n() < d + 1 || !is_generically_locally_rigid(&g, d, 0).unwrap() {
                continue;
            }
            let want = d * g.n() - rigid_motion_dim(d);
            let got = measurement_variety_dim(&g, d, 0);
            ensure(got == want, || format!("{name} d={d}: {got} != {want}"))?;
            rigid += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut forests = 0;
    for n in 2..=8 {
        let t = catalog::random_tree(n, &mut rng);
        // drop every third edge to get forests that are not trees
        let f = OrderedGraph::new(n, t.edges().iter().copied().enumerate().filter(|(i, _)| i % 3 != 2).map(|(_, e)| e)).unwrap();
        for g in [t, f] {
            for d in 1..=3 {
                let got = measurement_variety_dim(&g, d, 0);
                ensure(got == g.m(), || format!("forest {:?} d={d}: {got} != {}", g.edges(), g.m()))?;
                forests += 1;
            }
        }
    }
    within(start, Duration::from_secs(5))?;
    Ok(format!("{rigid} rigid cases, {forests} forest cases in {:.2?}", start.elapsed()))
}

fn stress_identities() -> Outcome {
    use num_traits::Zero;
    let start = Instant::now();
    let mut stresses = 0;
    for (name, g) in catalog::builtin() {
        for d in 1..=3 {
            for seed in 0..3 {
                let f = Framework::new(g.clone(), random_generic_configuration(g.n(), d, seed)).unwrap();
                let c = f.config().to_exact();
                for w in stress_basis(&f) {
                    stresses += 1;
                    ensure(equilibrium_residuals(&f, &w).iter().all(Zero::is_zero), || format!("{name} d={d}: not in equilibrium"))?;
                    let om = stress_matrix(&g, &w);
                    let m = om.matrix();
                    for i in 0..g.n() {
                        let row: num_rational::BigRational = (0..g.n()).map(|j| m[(i, j)].clone()).sum();
                        let col: num_rational::BigRational = (0..g.n()).map(|j| m[(j, i)].clone()).sum();
                        ensure(row.is_zero() && col.is_zero(), || format!("{name} d={d}: nonzero line sum"))?;
                    }
                    for k in 0..d {
                        let x: Vec<_> = (0..g.n()).map(|i| c[i * d + k].clone()).collect();
                        ensure(m.mul_vec(&x).iter().all(Zero::is_zero), || format!("{name} d={d}: coordinates not annihilated"))?;
                    }
                }
            }
            if g.n() < d + 2 {
                continue;
            }
            let ev = global_rigidity_evidence(&g, d, 0).unwrap();
            let loc = is_generically_locally_rigid(&g, d, 0).unwrap();
            if ev.globally_rigid {
                ensure(ev.stress_rank == g.n() - d - 1, || format!("{name} d={d}: stress rank {}", ev.stress_rank))?;
                ensure(ev.shared_kernel_dim == d + 1, || format!("{name} d={d}: kernel {}", ev.shared_kernel_dim))?;
            } else if loc {
                let f = generic_sample(&g, d, 0).0;
                let k = shared_stress_kernel_dim(&f);
                ensure(k > d + 1, || format!("{name} d={d}: rigid, not GGR, but kernel {k}"))?;
            }
        }
    }
    Ok(format!("{stresses} stresses checked in {:.2?}", start.elapsed()))
}

fn gauss_fibers() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    for (name, g) in catalog::builtin() {
        for d in 1..=3 {
            if g.n() < d + 2 || !is_generically_locally_rigid(&g, d, 0).unwrap() {
                continue;
            }
            let fiber = gauss_fiber_dim(&g, d, 0).unwrap();
            let restricted = restricted_measurement_rank(&g, d, 0).unwrap();
            ensure(fiber == restricted, || format!("{name} d={d}: fiber {fiber} vs restricted rank {restricted}"))?;
            if is_generically_globally_rigid(&g, d, 0).unwrap() {
                let f = generic_sample(&g, d, 0).0;
                let affine = affine_measurement_map_rank(&f).unwrap();
                ensure(fiber == rigid_motion_dim(d) && affine == fiber, || {
                    format!("{name} d={d}: fiber {fiber}, affine map rank {affine}")
                })?;
                checked += 1;
            }
        }
    }
    within(start, Duration::from_secs(10))?;
    Ok(format!("{checked} GGR cases in {:.2?}", start.elapsed()))
}

fn hendrickson() -> Outcome {
    let start = Instant::now();
    let mut graphs: Vec<OrderedGraph> = catalog::builtin().into_iter().map(|(_, g)| g).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in 0..50 {
        let n = 4 + i % 4;
        let m = (n + i % 7).min(n * (n - 1) / 2);
        graphs.push(catalog::random_graph(n, m, &mut rng));
    }
    let mut ggr = 0;
    for g in &graphs {
        for d in 1..=3 {
            if g.n() < d + 2 {
                continue;
            }
            let r = hendrickson_check(g, d, 0).unwrap();
            ensure(!r.violation, || format!("violation on {:?} d={d}", g.edges()))?;
            ggr += r.gen_glob_rigid as usize;
        }
    }
    Ok(format!("{} graphs, {ggr} GGR verdicts, 0 violations in {:.2?}", graphs.len(), start.elapsed()))
}

fn whitney() -> Outcome {
    let start = Instant::now();
    let (a, b) = catalog::reversal_pair();
    let rev = EdgeBijection::by_index(a, b).unwrap();
    ensure(is_cycle_isomorphism(&rev).unwrap(), || "reversal pair not cycle-isomorphic".into())?;
    ensure(vertex_map_from_edge_bijection(&rev).is_none(), || "reversal pair has a vertex map".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for i in 0..100 {
        let n = 4 + i % 4;
        let g = catalog::random_three_connected(n, &mut rng);
        let mut perm: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut rng);
        let vmap = VertexMap::new(perm).unwrap();
        let h = g.relabel(&vmap);
        let b = EdgeBijection::induced(&g, &h, &vmap).unwrap();
        ensure(is_cycle_isomorphism(&b).unwrap(), || format!("instance {i}: induced bijection not cycle-isomorphic"))?;
        let found = vertex_map_from_edge_bijection(&b).ok_or_else(|| format!("instance {i}: no vertex map"))?;
        for (e, &(x, y)) in g.edges().iter().enumerate() {
            let (u, v) = h.edge(b.apply(e));
            let (fx, fy) = (found.apply(x), found.apply(y));
            ensure((fx, fy) == (u, v) || (fy, fx) == (u, v), || format!("instance {i}: map breaks edge {e}"))?;
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("reversal pair + 100 random 3-connected graphs in {:.2?}", start.elapsed()))
}

fn main_theorem() -> Outcome {
    let start = Instant::now();
    let opts = SearchOptions::default();
    let cases = [("K4", catalog::complete(4), 2), ("W4", catalog::wheel(4), 2), ("K5", catalog::complete(5), 3)];
    let mut nodes = 0;
    for (name, g, d) in &cases {
        for seed in 0..10 {
            let (p, v) = instance(g, *d, 100 + seed);
            let res = reconstruct(&v, g.n(), *d, &opts).map_err(|e| e.to_string())?;
            nodes += res.stats.nodes;
            ensure(res.solutions.len() == 1, || format!("{name} seed {seed}: {} classes", res.solutions.len()))?;
            let s = &res.solutions[0];
            ensure(find_equivalence(g, &p, &s.graph, &s.coords, 1e-6).is_some(), || {
                format!("{name} seed {seed}: recovered framework differs from the source")
            })?;
        }
    }
    for seed in 0..10 {
        let (_, v) = instance(&catalog::cycle(4), 2, 200 + seed);
        let res = reconstruct(&v, 4, 2, &opts).map_err(|e| e.to_string())?;
        ensure(res.solutions.len() >= 2, || format!("C4 seed {seed}: only {} class", res.solutions.len()))?;
    }
    within(start, Duration::from_secs(15 * 60))?;
    Ok(format!("30 unique + 10 ambiguous instances, {nodes} search nodes, {:.2?}", start.elapsed()))
}

fn same_variety_pair() -> Outcome {
    let start = Instant::now();
    let g = catalog::bridged_blocks();
    let (e, eprime) = catalog::BRIDGE_SWAP;
    let (a, b) = not_rr_pair(&g, e, eprime, 2, 0).map_err(|e| e.to_string())?;
    ensure(canonical_form(&a) != canonical_form(&b), || "pair is isomorphic".into())?;
    let bij = EdgeBijection::by_index(a.clone(), b.clone()).unwrap();
    let same = same_measurement_variety_sampled(&a, &b, 2, 5, 0, Some(&bij), DEFAULT_RESTARTS).map_err(|e| e.to_string())?;
    ensure(same, || "sampled measurement sets differ".into())?;
    within(start, Duration::from_secs(5 * 60))?;
    Ok(format!("non-isomorphic pair, 5 samples per side agree, {:.2?}", start.elapsed()))
}

fn certificates() -> Outcome {
    let start = Instant::now();
    let opts = SearchOptions::default();
    let cases = [(catalog::complete(4), 2), (catalog::wheel(4), 2), (catalog::complete(5), 3)];
    for i in 0..10 {
        let (g, d) = &cases[i % cases.len()];
        let (_, v) = instance(g, *d, 300 + i as u64);
        let res = reconstruct(&v, g.n(), *d, &opts).map_err(|e| e.to_string())?;
        let s = res.solutions.first().ok_or_else(|| format!("instance {i}: no solution"))?;
        ensure(certify(&v, g.n(), *d, &s.graph, &s.coords, 0).unwrap(), || format!("instance {i}: rejected"))?;
        let mut off = v.values().to_vec();
        let k = i % off.len();
        off[k] *= 1.01;
        let off = DistanceMultiset::new(off).unwrap();
        ensure(!certify(&off, g.n(), *d, &s.graph, &s.coords, 0).unwrap(), || format!("instance {i}: accepted a 1e-2 mismatch"))?;
        // a non-GGR candidate with a perfect match
        let c4 = catalog::cycle(4);
        let (q, w) = instance(&c4, 2, 400 + i as u64);
        ensure(!certify(&w, 4, 2, &c4, &q, 0).unwrap(), || format!("instance {i}: accepted C4"))?;
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("10 accepted, 20 rejected in {:.2?}", start.elapsed()))
}

fn numerical_hygiene() -> Outcome {
    let start = Instant::now();
    let graphs: Vec<OrderedGraph> = catalog::builtin().into_iter().map(|(_, g)| g).collect();
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let g = &graphs[i % graphs.len()];
        let d = 1 + i % 3;
        let p = random_unit_configuration(g.n(), d, 500 + i as u64);
        let x = p.to_f64();
        let f = Framework::new(g.clone(), p).unwrap();
        let r = rigidity_matrix(&f).to_f64();
        let h = 1e-6;
        for col in 0..x.len() {
            let (mut up, mut down) = (x.clone(), x.clone());
            up[col] += h;
            down[col] -= h;
            let mu = floats(measure(&Framework::new(g.clone(), Configuration::numeric(g.n(), d, up)).unwrap()));
            let md = floats(measure(&Framework::new(g.clone(), Configuration::numeric(g.n(), d, down)).unwrap()));
            for e in 0..g.m() {
                let fd = (mu[e] - md[e]) / (2.0 * h);
                let exact = 2.0 * r[e][col];
                let err = (fd - exact).abs() / exact.abs().max(1.0);
                worst = worst.max(err);
            }
        }
    }
    ensure(worst <= 1e-6, || format!("finite-difference error {worst:e}"))?;
    let mut worst_res: f64 = 0.0;
    for (i, (name, g)) in catalog::builtin().into_iter().enumerate() {
        for d in 1..=3 {
            let p = random_unit_configuration(g.n(), d, 600 + i as u64);
            let t = floats(measure(&Framework::new(g.clone(), p).unwrap()));
            let res = realize(&g, &t, d, DEFAULT_RESTARTS, 0);
            ensure(res.converged && res.residual < 1e-12, || format!("{name} d={d}: residual {:e}", res.residual))?;
            let again = residual(g.edges(), &res.config.to_f64(), d, &t);
            ensure((again - res.residual).abs() <= 1e-12, || format!("{name} d={d}: stored residual mismatch"))?;
            let src = Framework::new(g.clone(), random_unit_configuration(g.n(), d, 600 + i as u64)).unwrap();
            if g.n() >= d + 2 && is_generically_globally_rigid(&g, d, 0).unwrap() {
                ensure(congruent(src.config(), &res.config, 1e-6).unwrap(), || format!("{name} d={d}: not congruent"))?;
            }
            worst_res = worst_res.max(res.residual);
        }
    }
    Ok(format!("max FD error {worst:.1e}, max round-trip residual {worst_res:.1e}, {:.2?}", start.elapsed()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("generic global rigidity classification", ggr_classification),
        ("measurement variety dimension formulas", rank_formulas),
        ("equilibrium stress identities", stress_identities),
        ("Gauss fiber dimension", gauss_fibers),
        ("Hendrickson necessary conditions", hendrickson),
        ("Whitney cycle isomorphisms", whitney),
        ("unique reconstruction at desk scale", main_theorem),
        ("same-variety non-isomorphic pair", same_variety_pair),
        ("certificate mode", certificates),
        ("numerical hygiene", numerical_hygiene),
    ];
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {id:>2} PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
