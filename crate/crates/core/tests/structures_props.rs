mod common;

use common::*;
use proptest::prelude::*;
use uppertail::structures::{
    clique_degree_requirement, detect_clique, detect_high_degree, detect_hub, extract_core_with_threshold, g_low,
    low_degree_analysis, stability_peel,
};
use uppertail::{HostGraph, PatternGraph};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn core_is_idempotent_subgraph(g in arb_host(16), star in any::<bool>(), frac in 0.0f64..=1.0) {
        let h = if star { PatternGraph::star(2).unwrap() } else { PatternGraph::clique(3).unwrap() };
        let thr = frac * (g.vertex_count() * g.vertex_count()) as f64;
        let core = extract_core_with_threshold(&g, &h, thr).unwrap();
        prop_assert!(core.graph.is_subgraph_of(&g));
        let again = extract_core_with_threshold(&core.graph, &h, thr).unwrap();
        prop_assert!(again.graph.edges().eq(core.graph.edges()));
        prop_assert_eq!(again.removed, 0);
        for e in core.graph.edges() {
            let c = uppertail::counting::count_labelled_using_edge(&h, &core.graph, e).unwrap().to_f64();
            prop_assert!(c >= thr);
        }
    }

    #[test]
    fn detector_witnesses_recheck(g in arb_host(24), chi in 0.0f64..0.5, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let n = g.vertex_count();
        let hub = detect_hub(&g, chi, a * g.edge_count() as f64, b * n as f64);
        if let Some(w) = hub.witness.as_ref() {
            let cross = g.edges().filter(|&(x, y)| w.contains(x) != w.contains(y)).count();
            prop_assert!(cross as f64 >= a * g.edge_count() as f64);
            prop_assert!(w.iter().all(|v| g.degree(v) as f64 >= b * n as f64));
        }
        let size = 1.0 + a * (n as f64 - 1.0);
        let clique = detect_clique(&g, chi, size);
        if let Some(w) = clique.witness.as_ref() {
            prop_assert!(w.len() as f64 >= size);
            let (sub, _) = g.induced_subgraph(w).unwrap();
            let need = clique_degree_requirement(chi, w.len());
            prop_assert!((0..sub.vertex_count()).all(|v| sub.degree(v) >= need));
        }
        let hd = detect_high_degree(&g, b * n as f64);
        prop_assert_eq!(hd.is_yes(), g.max_degree() as f64 >= b * n as f64);
        if let Some(w) = hd.witness.as_ref() {
            prop_assert!(g.degree(w.as_slice()[0]) as f64 >= b * n as f64);
        }
    }

    #[test]
    fn g_low_splits_by_degree_product(g in arb_host(30), c in 0.0f64..200.0) {
        let low = g_low(&g, c);
        prop_assert!(low.is_subgraph_of(&g));
        for (u, v) in g.edges() {
            let prod = (g.degree(u) * g.degree(v)) as f64;
            prop_assert_eq!(low.has_edge(u, v), prod <= c);
        }
    }

    #[test]
    fn low_degree_part_is_attached(g in arb_host(30), eps in 0.05f64..1.0) {
        let low = low_degree_analysis(&g, eps).unwrap();
        for (u, v) in low.g_w.edges() {
            prop_assert!(low.w.contains(u) || low.w.contains(v));
        }
        for v in 0..g.vertex_count() {
            if low.g_w.degree(v) > 0 && !low.w.contains(v) {
                prop_assert!(low.g_w.neighbors(v).iter().any(|&x| low.w.contains(x as usize)));
            }
        }
    }
}

#[test]
fn peel_keeps_cliques() {
    for m in 5..=30 {
        let g = HostGraph::complete(m);
        let peel = stability_peel(&g, 1.0 / m as f64).unwrap();
        assert_eq!(peel.vertices.len(), m);
        assert_eq!(peel.graph.edge_count(), g.edge_count());
    }
}
