use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rigidity_core::graph::io::{parse_any, parse_json, parse_text, to_json, to_text};
use rigidity_core::graph::{
    canonical_form, catalog, enumerate_circuits, is_cycle_isomorphism, is_isomorphic, vertex_connectivity,
    whitney_reversal, EdgeBijection, OrderedGraph, VertexMap, DEFAULT_CIRCUIT_CAP,
};

fn graph() -> impl Strategy<Value = OrderedGraph> {
    (2usize..8, any::<u64>()).prop_map(|(n, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let max = n * (n - 1) / 2;
        let m = (seed as usize) % (max + 1);
        catalog::random_graph(n, m, &mut rng)
    })
}

fn relabeled(g: &OrderedGraph, seed: u64) -> (OrderedGraph, VertexMap) {
    use rand::seq::SliceRandom;
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let map = VertexMap::new(perm).unwrap();
    (g.relabel(&map), map)
}

proptest! {
    #[test]
    fn formats_round_trip(g in graph()) {
        prop_assert_eq!(parse_text(&to_text(&g)).unwrap(), g.clone());
        prop_assert_eq!(parse_json(&to_json(&g)).unwrap(), g.clone());
        prop_assert_eq!(parse_any(&to_json(&g)).unwrap(), g);
    }

    #[test]
    fn canonical_form_ignores_labels(g in graph(), seed in any::<u64>()) {
        let (h, _) = relabeled(&g, seed);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert!(is_isomorphic(&g, &h));
        prop_assert_eq!(vertex_connectivity(&g), vertex_connectivity(&h));
    }

    #[test]
    fn relabeling_preserves_circuits(g in graph(), seed in any::<u64>()) {
        let (h, map) = relabeled(&g, seed);
        let b = EdgeBijection::induced(&g, &h, &map).unwrap();
        prop_assert!(is_cycle_isomorphism(&b).unwrap());
        prop_assert_eq!(
            enumerate_circuits(&g, DEFAULT_CIRCUIT_CAP).unwrap().len(),
            enumerate_circuits(&h, DEFAULT_CIRCUIT_CAP).unwrap().len()
        );
    }

    #[test]
    fn connectivity_bounded_by_min_degree(g in graph()) {
        let k = vertex_connectivity(&g);
        let min_deg = g.degrees().into_iter().min().unwrap_or(0);
        prop_assert!(k <= min_deg.max(g.n() - 1).min(g.n() - 1));
        if !g.is_complete() {
            prop_assert!(k <= min_deg);
        }
    }
}

#[test]
fn reversal_keeps_circuits_but_not_isomorphism() {
    let (a, d) = catalog::reversal_pair();
    let (cut, side) = catalog::REVERSAL_CUT;
    assert_eq!(whitney_reversal(&a, cut, side).unwrap(), d);
    assert_eq!(whitney_reversal(&d, cut, side).unwrap(), a);
    assert!(is_cycle_isomorphism(&EdgeBijection::by_index(a.clone(), d.clone()).unwrap()).unwrap());
    assert!(!is_isomorphic(&a, &d));
}

#[test]
fn named_connectivities() {
    assert_eq!(vertex_connectivity(&catalog::complete(5)), 4);
    assert_eq!(vertex_connectivity(&catalog::cycle(6)), 2);
    assert_eq!(vertex_connectivity(&catalog::wheel(5)), 3);
    assert_eq!(vertex_connectivity(&catalog::complete_bipartite(4, 3)), 3);
    assert_eq!(vertex_connectivity(&catalog::path(4)), 1);
    assert_eq!(vertex_connectivity(&OrderedGraph::new(4, [(0, 1), (2, 3)]).unwrap()), 0);
}
