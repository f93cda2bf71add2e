mod common;

use common::*;
use proptest::prelude::*;
use uppertail::pattern::{enumerate_qh, fractional_independence_number, independence_polynomial};
use uppertail::PatternGraph;

fn disjoint_union(a: &PatternGraph, b: &PatternGraph) -> PatternGraph {
    let shift = a.vertex_count();
    let edges: Vec<_> = a.edges().iter().copied().chain(b.edges().iter().map(|&(u, v)| (u + shift, v + shift))).collect();
    PatternGraph::new(shift + b.vertex_count(), &edges).unwrap()
}

fn arb_bipartite(max_v: usize) -> impl Strategy<Value = PatternGraph> {
    (1..max_v).prop_flat_map(move |a| (Just(a), 1..=max_v - a)).prop_flat_map(|(a, b)| {
        (Just(a), Just(b), 0u64..(1u64 << (a * b)))
    }).prop_map(|(a, b, mask)| {
        let edges: Vec<_> = (0..a * b).filter(|i| mask >> i & 1 == 1).map(|i| (i / b, a + i % b)).collect();
        PatternGraph::new(a + b, &edges).unwrap()
    })
}

proptest! {
    #[test]
    fn alpha_star_between_half_and_all(h in arb_pattern(9)) {
        let (alpha, w) = fractional_independence_number(&h).unwrap();
        let v = h.vertex_count() as i64;
        prop_assert!(alpha.halves() >= v && alpha.halves() <= 2 * v);
        prop_assert!(w.is_valid_for(&h));
    }

    #[test]
    fn alpha_star_integral_on_bipartite(h in arb_bipartite(8)) {
        prop_assert!(fractional_independence_number(&h).unwrap().0.is_integer());
    }

    #[test]
    fn polynomial_of_union_is_product(a in arb_pattern(6), b in arb_pattern(6)) {
        let u = disjoint_union(&a, &b);
        let pa = independence_polynomial(&a).unwrap();
        let pb = independence_polynomial(&b).unwrap();
        prop_assert_eq!(independence_polynomial(&u).unwrap(), pa.product(&pb));
    }

    #[test]
    fn polynomial_starts_at_one_and_increases(h in arb_pattern(10)) {
        let p = independence_polynomial(&h).unwrap();
        prop_assert_eq!(p.coefficients()[0], 1);
        prop_assert_eq!(p.coefficients()[1], h.vertex_count() as u64);
        prop_assert_eq!(p.eval(0.0), 1.0);
        let mut last = 1.0;
        for i in 1..50 {
            let x = p.eval(i as f64 * 0.1);
            prop_assert!(x > last);
            last = x;
        }
    }

    #[test]
    fn qh_members_are_tight(h in arb_connected_pattern(6).prop_filter("irregular", |h| !h.is_regular())) {
        let delta = h.max_degree().unwrap();
        for member in enumerate_qh(&h).unwrap() {
            prop_assert_eq!(member.edges.len(), delta * member.a.len());
            let (j, _) = member.pattern();
            let (alpha, _) = fractional_independence_number(&j).unwrap();
            prop_assert_eq!(alpha.halves(), 2 * member.b.len() as i64);
        }
    }
}
