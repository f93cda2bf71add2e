#![allow(dead_code)]

use proptest::prelude::*;
use uppertail::montecarlo::sample_gnp;
use uppertail::{HostGraph, PatternGraph};

pub fn pairs(v: usize) -> Vec<(usize, usize)> {
    (0..v).flat_map(|i| (i + 1..v).map(move |j| (i, j))).collect()
}

pub fn pattern_from_mask(v: usize, mask: u64) -> PatternGraph {
    let edges: Vec<_> = pairs(v).into_iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, e)| e).collect();
    PatternGraph::new(v, &edges).unwrap()
}

/// Any pattern on `1..=max_v` vertices.
pub fn arb_pattern(max_v: usize) -> impl Strategy<Value = PatternGraph> {
    (1..=max_v).prop_flat_map(|v| {
        let m = v * (v - 1) / 2;
        (Just(v), 0u64..(1u64 << m)).prop_map(|(v, mask)| pattern_from_mask(v, mask))
    })
}

pub fn arb_connected_pattern(max_v: usize) -> impl Strategy<Value = PatternGraph> {
    arb_pattern(max_v).prop_filter("connected with an edge", |h| h.is_connected() && h.edge_count() > 0)
}

pub fn arb_host(max_n: usize) -> impl Strategy<Value = HostGraph> {
    (2..=max_n, 0.0f64..=1.0, any::<u64>()).prop_map(|(n, p, seed)| sample_gnp(n, p, seed).unwrap())
}
