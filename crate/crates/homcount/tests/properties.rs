//! Randomized invariants, with shrinking, over the public API.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use homcount::verify::{random_ext_expr, random_graph, random_labeled_graph};
use homcount::{
    brute_hom, count_colorings, gen_clique, ExtExpr, Graph, LabeledGraph, DEFAULT_BUDGET,
};

proptest! {
    #[test]
    fn expression_json_round_trips(seed in any::<u64>(), k in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_ext_expr(&mut rng, k, 10);
        prop_assert_eq!(ExtExpr::from_json(&e.to_json()).unwrap(), e);
    }

    #[test]
    fn graph_json_round_trips(seed in any::<u64>(), n in 0usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, 0.5);
        prop_assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
    }

    #[test]
    fn labeled_json_keeps_structure_and_labels(seed in any::<u64>(), n in 1usize..=8, k in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_labeled_graph(&mut rng, n, k);
        let back = LabeledGraph::from_json(&g.to_json()).unwrap();
        prop_assert_eq!(back.graph(), g.graph());
        prop_assert_eq!(back.labels(), g.labels());
    }

    #[test]
    fn hom_counts_multiply_over_disjoint_sources(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_graph(&mut rng, 3, 0.5);
        let b = random_graph(&mut rng, 3, 0.5);
        let h = random_graph(&mut rng, 4, 0.5);
        let mut edges = a.edges().to_vec();
        edges.extend(b.edges().iter().map(|&(u, v)| (u + a.n(), v + a.n())));
        let both = Graph::new(a.n() + b.n(), edges).unwrap();
        let product = brute_hom(&a, &h, DEFAULT_BUDGET).unwrap()
            * brute_hom(&b, &h, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(brute_hom(&both, &h, DEFAULT_BUDGET).unwrap(), product);
    }

    #[test]
    fn colorings_are_homomorphisms_into_cliques(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, 5, 0.4);
        let fast = count_colorings(&g, n).unwrap();
        let slow = brute_hom(&g, &gen_clique(n), DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(fast, slow);
    }
}
