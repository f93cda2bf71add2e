mod common;

use common::*;
use num_bigint::BigUint;
use proptest::prelude::*;
use uppertail::counting::{
    count_labelled, count_labelled_using_edge, embedding_upper_bound, star_count_exact, star_count_using_edge,
};
use uppertail::PatternGraph;

fn small_pattern() -> impl Strategy<Value = PatternGraph> {
    arb_pattern(5).prop_filter("has an edge", |h| h.edge_count() > 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn edge_sum_identity(h in small_pattern(), g in arb_host(10)) {
        let total = count_labelled(&h, &g).unwrap();
        let mut sum = BigUint::default();
        for e in g.edges() {
            sum += count_labelled_using_edge(&h, &g, e).unwrap().value();
        }
        prop_assert_eq!(sum, total.value() * h.edge_count());
    }

    #[test]
    fn star_shortcuts_match_enumeration(g in arb_host(12), r in 2usize..=4) {
        let star = PatternGraph::star(r).unwrap();
        prop_assert_eq!(star_count_exact(r, &g), count_labelled(&star, &g).unwrap());
        for e in g.edges() {
            prop_assert_eq!(star_count_using_edge(r, &g, e), count_labelled_using_edge(&star, &g, e).unwrap());
        }
    }

    #[test]
    fn upper_bound_dominates(h in small_pattern(), g in arb_host(10)) {
        let n = count_labelled(&h, &g).unwrap();
        prop_assert!(embedding_upper_bound(&h, &g).unwrap().value() >= n.value());
    }

    #[test]
    fn monotone_under_edge_addition(h in small_pattern(), g in arb_host(10), a in 0usize..10, b in 0usize..10) {
        let n = g.vertex_count();
        let (a, b) = (a % n, b % n);
        prop_assume!(a != b && !g.has_edge(a, b));
        let bigger = g.with_edge(a, b).unwrap();
        prop_assert!(count_labelled(&h, &bigger).unwrap().value() >= count_labelled(&h, &g).unwrap().value());
    }

    #[test]
    fn divisible_by_automorphisms(h in small_pattern(), g in arb_host(10)) {
        let n = count_labelled(&h, &g).unwrap();
        let aut = h.automorphism_count().unwrap();
        prop_assert_eq!(n.value() % aut, BigUint::default());
    }
}
