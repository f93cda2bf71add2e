//! Structure detectors (hub, clique, high degree, tilde-hub), core and
//! strong-core extraction by edge pruning, and the low-degree, degree
//! product and peeling utilities.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use serde::Serialize;

use crate::counting::{count_labelled, count_labelled_using_edge, star_count_u128, star_using_edge_u128};
use crate::error::{Error, Result};
use crate::graph::{HostGraph, PatternGraph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Found {
    Yes,
    /// The search was exhaustive and found nothing.
    NoExhaustive,
    /// A heuristic search found nothing; the structure may still exist.
    UnknownHeuristic,
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureVerdict {
    pub found: Found,
    pub witness: Option<VertexSet>,
    /// Second witness component, e.g. the extra vertex of a tilde-hub.
    pub extra: Option<usize>,
    pub certificate: BTreeMap<String, f64>,
}

impl StructureVerdict {
    fn no(found: Found) -> Self {
        StructureVerdict {
            found,
            witness: None,
            extra: None,
            certificate: BTreeMap::new(),
        }
    }

    fn yes(witness: VertexSet, certificate: BTreeMap<String, f64>) -> Self {
        StructureVerdict {
            found: Found::Yes,
            witness: Some(witness),
            extra: None,
            certificate,
        }
    }

    pub fn is_yes(&self) -> bool {
        self.found == Found::Yes
    }
}

fn cert(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

/// Edges from `u` to its complement.
pub fn cross_edges(g: &HostGraph, u: &VertexSet) -> usize {
    let inside = g.edges_within(u);
    u.iter().map(|v| g.degree(v)).sum::<usize>() - 2 * inside
}

pub const HUB_EXACT_POOL: usize = 20;

/// A set `U` of vertices of degree at least `degree_threshold` with at
/// least `edge_threshold` edges leaving it.
pub fn detect_hub(g: &HostGraph, chi: f64, edge_threshold: f64, degree_threshold: f64) -> StructureVerdict {
    let mut pool: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| g.degree(v) as f64 >= degree_threshold)
        .collect();
    let verdict = |u: Vec<usize>, cross: usize| {
        let w = VertexSet::new(u, g.vertex_count()).expect("valid");
        let min_deg = w.iter().map(|v| g.degree(v)).min().unwrap_or(0);
        StructureVerdict::yes(
            w,
            cert(&[
                ("chi", chi),
                ("cross_edges", cross as f64),
                ("edge_threshold", edge_threshold),
                ("min_degree", min_deg as f64),
                ("degree_threshold", degree_threshold),
            ]),
        )
    };
    if pool.is_empty() {
        return StructureVerdict::no(Found::NoExhaustive);
    }
    if pool.len() <= HUB_EXACT_POOL {
        let m = pool.len();
        let masks: Vec<u32> = pool
            .iter()
            .map(|&a| {
                pool.iter()
                    .enumerate()
                    .filter(|&(_, &b)| g.has_edge(a, b))
                    .fold(0u32, |acc, (i, _)| acc | 1 << i)
            })
            .collect();
        // inner[mask] = edges inside, degree_sum[mask] = Σ deg.
        let size = 1usize << m;
        let mut inner = vec![0u32; size];
        let mut degree_sum = vec![0u64; size];
        let mut best: Option<(usize, usize)> = None;
        for mask in 1..size {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            inner[mask] = inner[rest] + (masks[low] & rest as u32).count_ones();
            degree_sum[mask] = degree_sum[rest] + g.degree(pool[low]) as u64;
            let cross = (degree_sum[mask] - 2 * inner[mask] as u64) as usize;
            if cross as f64 >= edge_threshold && best.map_or(true, |(c, _)| cross > c) {
                best = Some((cross, mask));
            }
        }
        return match best {
            Some((cross, mask)) => verdict((0..m).filter(|&i| mask >> i & 1 == 1).map(|i| pool[i]).collect(), cross),
            None => StructureVerdict::no(Found::NoExhaustive),
        };
    }
    pool.sort_by_key(|&v| (Reverse(g.degree(v)), v));
    let mut chosen = Vec::new();
    let mut best: Option<(usize, usize)> = None;
    let mut inside = 0usize;
    let mut degree_sum = 0usize;
    for (i, &v) in pool.iter().enumerate() {
        inside += chosen.iter().filter(|&&u| g.has_edge(u, v)).count();
        degree_sum += g.degree(v);
        chosen.push(v);
        let cross = degree_sum - 2 * inside;
        if cross as f64 >= edge_threshold && best.map_or(true, |(c, _)| cross > c) {
            best = Some((cross, i + 1));
        }
    }
    match best {
        Some((cross, len)) => verdict(pool[..len].to_vec(), cross),
        None => StructureVerdict::no(Found::UnknownHeuristic),
    }
}

/// Minimum induced degree demanded of a set of size `m`.
pub fn clique_degree_requirement(chi: f64, m: usize) -> usize {
    ((1.0 - chi) * m as f64 + 1e-9).floor().max(0.0) as usize
}

pub const CLIQUE_EXACT_LIMIT: usize = 30;
const CLIQUE_NODE_BUDGET: u64 = 50_000_000;

/// A set `U` with `|U| >= ⌈size_threshold⌉` and every vertex adjacent to
/// at least `⌊(1−χ)|U|⌋` others in `U`.
pub fn detect_clique(g: &HostGraph, chi: f64, size_threshold: f64) -> StructureVerdict {
    let n = g.vertex_count();
    let need = (size_threshold.ceil().max(1.0)) as usize;
    let certify = |u: Vec<usize>| {
        let w = VertexSet::new(u, n).expect("valid");
        let (sub, _) = g.induced_subgraph(&w).expect("valid");
        let min_deg = (0..sub.vertex_count()).map(|v| sub.degree(v)).min().unwrap_or(0);
        let size = w.len();
        StructureVerdict::yes(
            w,
            cert(&[
                ("chi", chi),
                ("size", size as f64),
                ("size_threshold", size_threshold),
                ("min_induced_degree", min_deg as f64),
                ("required_degree", clique_degree_requirement(chi, size) as f64),
            ]),
        )
    };
    if need > n {
        return StructureVerdict::no(Found::NoExhaustive);
    }
    if n <= CLIQUE_EXACT_LIMIT {
        let mut nodes = 0u64;
        for m in (need..=n).rev() {
            match quasi_clique_of_size(g, m, clique_degree_requirement(chi, m), &mut nodes) {
                Some(u) => return certify(u),
                None if nodes > CLIQUE_NODE_BUDGET => return StructureVerdict::no(Found::UnknownHeuristic),
                None => {}
            }
        }
        return StructureVerdict::no(Found::NoExhaustive);
    }
    // Greedy peeling: drop a minimum-degree vertex, test every stage.
    let mut alive: BTreeSet<usize> = (0..n).collect();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    while alive.len() >= need {
        let size = alive.len();
        let (min_v, min_d) = alive.iter().map(|&v| (v, deg[v])).min_by_key(|&(v, d)| (d, v)).expect("nonempty");
        if min_d >= clique_degree_requirement(chi, size) {
            return certify(alive.into_iter().collect());
        }
        alive.remove(&min_v);
        for &w in g.neighbors(min_v) {
            if alive.contains(&(w as usize)) {
                deg[w as usize] -= 1;
            }
        }
    }
    StructureVerdict::no(Found::UnknownHeuristic)
}

/// Exact search for `m` vertices of induced minimum degree `d`.
fn quasi_clique_of_size(g: &HostGraph, m: usize, d: usize, nodes: &mut u64) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    // Restrict to the d-core.
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..n {
            if alive[v] && deg[v] < d {
                alive[v] = false;
                changed = true;
                for &w in g.neighbors(v) {
                    deg[w as usize] -= 1;
                }
            }
        }
    }
    let cand: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    if cand.len() < m {
        return None;
    }
    let adj: Vec<u32> = cand
        .iter()
        .map(|&a| {
            cand.iter()
                .enumerate()
                .filter(|&(_, &b)| g.has_edge(a, b))
                .fold(0u32, |acc, (i, _)| acc | 1 << i)
        })
        .collect();
    fn rec(adj: &[u32], chosen: u32, rest: u32, m: usize, d: usize, nodes: &mut u64) -> Option<u32> {
        *nodes += 1;
        if *nodes > CLIQUE_NODE_BUDGET {
            return None;
        }
        let size = chosen.count_ones() as usize;
        let room = m - size;
        // Each chosen vertex must still be able to reach degree d.
        let mut c = chosen;
        while c != 0 {
            let v = c.trailing_zeros() as usize;
            c &= c - 1;
            let have = (adj[v] & chosen).count_ones() as usize;
            let could = (adj[v] & rest).count_ones() as usize;
            if have + could.min(room) < d {
                return None;
            }
        }
        if room == 0 {
            return Some(chosen);
        }
        if (rest.count_ones() as usize) < room {
            return None;
        }
        let v = rest.trailing_zeros() as usize;
        let without = rest & !(1 << v);
        rec(adj, chosen | 1 << v, without, m, d, nodes).or_else(|| rec(adj, chosen, without, m, d, nodes))
    }
    let full = if cand.len() == 32 { u32::MAX } else { (1u32 << cand.len()) - 1 };
    rec(&adj, 0, full, m, d, nodes).map(|mask| (0..cand.len()).filter(|&i| mask >> i & 1 == 1).map(|i| cand[i]).collect())
}

/// A vertex of degree at least `threshold`.
pub fn detect_high_degree(g: &HostGraph, threshold: f64) -> StructureVerdict {
    let best = (0..g.vertex_count()).max_by_key(|&v| (g.degree(v), Reverse(v)));
    match best {
        Some(v) if g.degree(v) as f64 >= threshold => StructureVerdict::yes(
            VertexSet::new(vec![v], g.vertex_count()).expect("valid"),
            cert(&[("max_degree", g.degree(v) as f64), ("threshold", threshold)]),
        ),
        _ => StructureVerdict::no(Found::NoExhaustive),
    }
}

/// Which high-degree threshold to use, all scaled by `(1−χ)n^{1+1/r}p`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HighDegreeScale {
    /// Factor `δ^{1/r}`, matching the rate.
    #[default]
    RootDelta,
    /// Factor `δ`.
    Delta,
    /// Factor 1.
    Unit,
}

pub fn high_degree_threshold(scale: HighDegreeScale, chi: f64, delta: f64, n: usize, p: f64, r: usize) -> f64 {
    let base = (1.0 - chi) * (n as f64).powf(1.0 + 1.0 / r as f64) * p;
    base * match scale {
        HighDegreeScale::RootDelta => delta.powf(1.0 / r as f64),
        HighDegreeScale::Delta => delta,
        HighDegreeScale::Unit => 1.0,
    }
}

/// The `u_size` highest-degree vertices, each of degree at least
/// `u_degree_threshold`, plus one more of degree at least
/// `extra_degree_threshold`.
pub fn detect_tilde_hub(
    g: &HostGraph,
    u_size: usize,
    u_degree_threshold: f64,
    extra_degree_threshold: f64,
) -> StructureVerdict {
    let n = g.vertex_count();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (Reverse(g.degree(v)), v));
    if u_size > n {
        return StructureVerdict::no(Found::NoExhaustive);
    }
    let (top, rest) = order.split_at(u_size);
    if top.iter().any(|&v| (g.degree(v) as f64) < u_degree_threshold) {
        return StructureVerdict::no(Found::NoExhaustive);
    }
    let extra = match rest.first() {
        Some(&v) if g.degree(v) as f64 >= extra_degree_threshold => Some(v),
        None if extra_degree_threshold <= 0.0 => None,
        _ => return StructureVerdict::no(Found::NoExhaustive),
    };
    let mut v = StructureVerdict::yes(
        VertexSet::new(top.to_vec(), n).expect("valid"),
        cert(&[
            ("u_size", u_size as f64),
            ("min_u_degree", top.iter().map(|&v| g.degree(v)).min().unwrap_or(0) as f64),
            ("u_degree_threshold", u_degree_threshold),
            ("extra_degree", extra.map_or(0.0, |v| g.degree(v) as f64)),
            ("extra_degree_threshold", extra_degree_threshold),
        ]),
    );
    v.extra = extra;
    v
}

/// An event tested on sampled graphs.
#[derive(Clone, Debug, Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum StructureEvent {
    Always,
    HighDegree {
        threshold: f64,
    },
    Hub {
        chi: f64,
        edge_threshold: f64,
        degree_threshold: f64,
    },
    Clique {
        chi: f64,
        size_threshold: f64,
    },
    TildeHub {
        u_size: usize,
        u_degree_threshold: f64,
        extra_degree_threshold: f64,
    },
}

impl StructureEvent {
    pub fn detect(&self, g: &HostGraph) -> StructureVerdict {
        match *self {
            StructureEvent::Always => StructureVerdict::yes(VertexSet::empty(), BTreeMap::new()),
            StructureEvent::HighDegree { threshold } => detect_high_degree(g, threshold),
            StructureEvent::Hub {
                chi,
                edge_threshold,
                degree_threshold,
            } => detect_hub(g, chi, edge_threshold, degree_threshold),
            StructureEvent::Clique { chi, size_threshold } => detect_clique(g, chi, size_threshold),
            StructureEvent::TildeHub {
                u_size,
                u_degree_threshold,
                extra_degree_threshold,
            } => detect_tilde_hub(g, u_size, u_degree_threshold, extra_degree_threshold),
        }
    }

    /// Only a confirmed witness counts.
    pub fn holds(&self, g: &HostGraph) -> bool {
        self.detect(g).is_yes()
    }
}

/// Pruning thresholds for core graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdMode {
    /// `δε n^{v}p^{e} / (C̄ n²p^Δ log(1/p))`.
    General,
    /// `δε n^{r+1}p^r / (C̄ n^{1+1/r}p log(1/p))`.
    Star,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CoreConfig {
    pub delta: f64,
    pub epsilon: f64,
    pub c_bar: f64,
    pub mode: ThresholdMode,
    pub c_bar_star: f64,
    /// Upper constant `C_0` of the degree-product window.
    pub c0_upper: f64,
    /// Lower constant `c_0` of the degree-product window.
    pub c0_lower: f64,
}

impl CoreConfig {
    /// Defaults for stars with `r` arms.
    pub fn star(r: usize, delta: f64, epsilon: f64) -> Result<Self> {
        let mut cfg = Self::general(delta, epsilon)?;
        let rf = r as f64;
        cfg.mode = ThresholdMode::Star;
        cfg.c_bar_star = (1.0 + rf * rf * epsilon) * delta.powf(1.0 / rf);
        cfg.c0_upper = 5.0 * rf * 2f64.powi(r as i32 - 1) * cfg.c_bar_star.powf(rf + 1.0) / (delta * epsilon);
        cfg.c0_lower = 0.5 * (delta * epsilon / (rf * cfg.c_bar_star)).powf(1.0 / (rf - 1.0));
        Ok(cfg)
    }

    pub fn general(delta: f64, epsilon: f64) -> Result<Self> {
        if !(delta > 0.0) || !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::invalid("need delta > 0 and epsilon in (0,1)"));
        }
        Ok(CoreConfig {
            delta,
            epsilon,
            c_bar: 4.0 / delta,
            mode: ThresholdMode::General,
            c_bar_star: 1.0,
            c0_upper: 1.0,
            c0_lower: 1.0,
        })
    }
}

fn ln_pow(n: usize, k: f64) -> f64 {
    k * (n as f64).ln()
}

fn check_np(n: usize, p: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) || n < 2 {
        return Err(Error::invalid("need n >= 2 and p in (0,1)"));
    }
    Ok(())
}

/// Per-edge copy threshold of a core graph.
pub fn core_threshold(h: &PatternGraph, cfg: &CoreConfig, n: usize, p: f64) -> Result<f64> {
    check_np(n, p)?;
    let log_inv = (1.0 / p).ln();
    let de = cfg.delta * cfg.epsilon;
    Ok(match cfg.mode {
        ThresholdMode::General => {
            let (v, e, d) = (h.vertex_count() as f64, h.edge_count() as f64, h.max_degree()? as f64);
            de * (ln_pow(n, v - 2.0) + (e - d) * p.ln()).exp() / (cfg.c_bar * log_inv)
        }
        ThresholdMode::Star => {
            let r = star_arms(h)? as f64;
            de * (ln_pow(n, r - 1.0 / r) + (r - 1.0) * p.ln()).exp() / (cfg.c_bar * log_inv)
        }
    })
}

fn star_arms(h: &PatternGraph) -> Result<usize> {
    h.star_arms()
        .ok_or_else(|| Error::invalid("star threshold mode needs a star pattern"))
}

#[derive(Clone, Debug, Serialize)]
pub struct CoreResult {
    #[serde(skip)]
    pub graph: HostGraph,
    pub threshold: f64,
    pub edges: usize,
    pub removed: usize,
    pub copies: f64,
    /// Copy-count condition on the result.
    pub count_condition: Option<bool>,
    /// Edge-budget condition on the result.
    pub edge_condition: Option<bool>,
}

/// Copies of `H` using each edge, keyed by edge.
fn edge_counts(h: &PatternGraph, g: &HostGraph) -> Result<BTreeMap<(usize, usize), u128>> {
    let star = h.star_arms();
    g.edges()
        .map(|e| {
            let c = match star {
                Some(r) => star_using_edge_u128(r, g, e),
                None => count_labelled_using_edge(h, g, e)?.to_u128().unwrap_or(u128::MAX),
            };
            Ok((e, c))
        })
        .collect()
}

/// Removes, one at a time and smallest edge first, every edge used by
/// fewer than `threshold` labelled copies of `H`, recounting after each
/// removal.
pub fn prune_to_threshold(g: &HostGraph, h: &PatternGraph, threshold: f64) -> Result<(HostGraph, usize)> {
    let mut cur = g.clone();
    let mut removed = 0;
    let star = h.star_arms();
    let mut counts = edge_counts(h, &cur)?;
    // Counts only fall as edges go, so a violator stays one.
    let mut violators: BTreeSet<(usize, usize)> = counts
        .iter()
        .filter(|&(_, &c)| (c as f64) < threshold)
        .map(|(&e, _)| e)
        .collect();
    while let Some(e) = violators.pop_first() {
        cur.remove_edge_mut(e.0, e.1);
        counts.remove(&e);
        removed += 1;
        match star {
            Some(r) => {
                for x in [e.0, e.1] {
                    for &y in cur.neighbors(x) {
                        let f = (x.min(y as usize), x.max(y as usize));
                        let c = star_using_edge_u128(r, &cur, f);
                        counts.insert(f, c);
                        if (c as f64) < threshold {
                            violators.insert(f);
                        }
                    }
                }
            }
            None => {
                for (&f, c) in counts.iter_mut() {
                    if violators.contains(&f) {
                        continue;
                    }
                    *c = count_labelled_using_edge(h, &cur, f)?.to_u128().unwrap_or(u128::MAX);
                    if (*c as f64) < threshold {
                        violators.insert(f);
                    }
                }
            }
        }
    }
    Ok((cur, removed))
}

fn copies_of(h: &PatternGraph, g: &HostGraph) -> Result<f64> {
    Ok(match h.star_arms() {
        Some(r) => star_count_u128(r, g) as f64,
        None => count_labelled(h, g)?.to_f64(),
    })
}

/// Core extraction with the configured threshold; also reports the copy
/// and edge-budget conditions.
pub fn extract_core(g: &HostGraph, h: &PatternGraph, cfg: &CoreConfig, n: usize, p: f64) -> Result<CoreResult> {
    let threshold = core_threshold(h, cfg, n, p)?;
    let (graph, removed) = prune_to_threshold(g, h, threshold)?;
    let copies = copies_of(h, &graph)?;
    let (v, e) = (h.vertex_count() as f64, h.edge_count() as f64);
    let mean_scale = (ln_pow(n, v) + e * p.ln()).exp();
    let log_inv = (1.0 / p).ln();
    let budget = match cfg.mode {
        ThresholdMode::General => {
            let d = h.max_degree()? as f64;
            cfg.c_bar * (ln_pow(n, 2.0) + d * p.ln()).exp() * log_inv
        }
        ThresholdMode::Star => {
            let r = star_arms(h)? as f64;
            cfg.c_bar * (ln_pow(n, 1.0 + 1.0 / r)).exp() * p * log_inv
        }
    };
    Ok(CoreResult {
        edges: graph.edge_count(),
        count_condition: Some(copies >= cfg.delta * (1.0 - 3.0 * cfg.epsilon) * mean_scale),
        edge_condition: Some(graph.edge_count() as f64 <= budget),
        graph,
        threshold,
        removed,
        copies,
    })
}

/// Core extraction with an explicit threshold and no condition reports.
pub fn extract_core_with_threshold(g: &HostGraph, h: &PatternGraph, threshold: f64) -> Result<CoreResult> {
    let (graph, removed) = prune_to_threshold(g, h, threshold)?;
    Ok(CoreResult {
        edges: graph.edge_count(),
        copies: copies_of(h, &graph)?,
        graph,
        threshold,
        removed,
        count_condition: None,
        edge_condition: None,
    })
}

/// `(δε/C̄_*)(n^{1+1/r}p)^{r−1}`.
pub fn strong_core_threshold(r: usize, cfg: &CoreConfig, n: usize, p: f64) -> Result<f64> {
    check_np(n, p)?;
    let rf = r as f64;
    let scale = (ln_pow(n, 1.0 + 1.0 / rf)).exp() * p;
    Ok(cfg.delta * cfg.epsilon / cfg.c_bar_star * scale.powf(rf - 1.0))
}

pub fn extract_strong_core(g: &HostGraph, r: usize, cfg: &CoreConfig, n: usize, p: f64) -> Result<CoreResult> {
    let h = PatternGraph::star(r)?;
    let threshold = strong_core_threshold(r, cfg, n, p)?;
    let (graph, removed) = prune_to_threshold(g, &h, threshold)?;
    let copies = star_count_u128(r, &graph) as f64;
    let rf = r as f64;
    let mean_scale = (ln_pow(n, rf + 1.0) + rf * p.ln()).exp();
    let budget = cfg.c_bar_star * (ln_pow(n, 1.0 + 1.0 / rf)).exp() * p;
    Ok(CoreResult {
        edges: graph.edge_count(),
        count_condition: Some(copies >= cfg.delta * (1.0 - 4.0 * cfg.epsilon) * mean_scale),
        edge_condition: Some(graph.edge_count() as f64 <= budget),
        graph,
        threshold,
        removed,
        copies,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LowDegree {
    pub w: VertexSet,
    #[serde(skip)]
    pub g_w: HostGraph,
    pub g_w_edges: usize,
    pub bipartite: bool,
}

/// `W = {v : 1 <= deg(v) <= 1/ε}`, the edges touching `W`, and whether
/// they form a bipartite graph.
pub fn low_degree_analysis(g: &HostGraph, epsilon: f64) -> Result<LowDegree> {
    if !(epsilon > 0.0) {
        return Err(Error::invalid("epsilon must be positive"));
    }
    let n = g.vertex_count();
    let cap = 1.0 / epsilon;
    let w: Vec<usize> = (0..n)
        .filter(|&v| g.degree(v) >= 1 && g.degree(v) as f64 <= cap)
        .collect();
    let ind = {
        let mut b = vec![false; n];
        for &v in &w {
            b[v] = true;
        }
        b
    };
    let g_w = g.filter_edges(|u, v| ind[u] || ind[v]);
    Ok(LowDegree {
        w: VertexSet::new(w, n)?,
        g_w_edges: g_w.edge_count(),
        bipartite: g_w.is_bipartite(),
        g_w,
    })
}

/// Whether every edge has `deg(u)·deg(v) >= lower`; otherwise the first
/// violating edge.
pub fn degree_product_check(g: &HostGraph, lower: f64) -> (bool, Option<(usize, usize)>) {
    let bad = g
        .edges()
        .find(|&(u, v)| ((g.degree(u) * g.degree(v)) as f64) < lower);
    (bad.is_none(), bad)
}

/// Edges whose endpoint-degree product in `g` is at most `upper`.
pub fn g_low(g: &HostGraph, upper: f64) -> HostGraph {
    g.filter_edges(|u, v| ((g.degree(u) * g.degree(v)) as f64) <= upper)
}

#[derive(Clone, Debug, Serialize)]
pub struct Peel {
    #[serde(skip)]
    pub graph: HostGraph,
    pub vertices: VertexSet,
    pub min_degree: usize,
    pub target: f64,
    /// Whether `ε >= e(G)^{-1/2}`, the range where the peeling guarantee
    /// applies.
    pub epsilon_in_range: bool,
}

/// Repeatedly deletes a minimum-degree vertex (smallest index first) while
/// the minimum degree is below `(1−4√ε)(2e(G))^{1/2}`, with `e(G)` fixed at
/// the input.
pub fn stability_peel(g: &HostGraph, epsilon: f64) -> Result<Peel> {
    let e = g.edge_count();
    if e == 0 {
        return Err(Error::invalid("graph has no edges"));
    }
    if !(epsilon > 0.0) {
        return Err(Error::invalid("epsilon must be positive"));
    }
    let n = g.vertex_count();
    let target = (1.0 - 4.0 * epsilon.sqrt()) * (2.0 * e as f64).sqrt();
    let mut alive: Vec<bool> = (0..n).map(|v| g.degree(v) > 0).collect();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> =
        (0..n).filter(|&v| alive[v]).map(|v| Reverse((deg[v], v))).collect();
    let mut min_degree = 0;
    while let Some(Reverse((d, v))) = heap.pop() {
        if !alive[v] || d != deg[v] {
            continue;
        }
        if d as f64 >= target {
            min_degree = d;
            heap.push(Reverse((d, v)));
            break;
        }
        alive[v] = false;
        for &w in g.neighbors(v) {
            let w = w as usize;
            if alive[w] {
                deg[w] -= 1;
                heap.push(Reverse((deg[w], w)));
            }
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let graph = g.filter_edges(|u, v| alive[u] && alive[v]);
    if keep.is_empty() {
        min_degree = 0;
    }
    Ok(Peel {
        graph,
        vertices: VertexSet::new(keep, n)?,
        min_degree,
        target,
        epsilon_in_range: epsilon >= (e as f64).powf(-0.5),
    })
}

/// `N(H, G) >= (1−ε)(2e(G))^{v_H/2}` for regular `H`.
pub fn stability_hypothesis(h: &PatternGraph, g: &HostGraph, epsilon: f64) -> Result<bool> {
    if !h.is_regular() {
        return Err(Error::invalid("pattern must be regular"));
    }
    let n = count_labelled(h, g)?.to_f64();
    let bound = (1.0 - epsilon) * (2.0 * g.edge_count() as f64).powf(h.vertex_count() as f64 / 2.0);
    Ok(n >= bound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn host(n: usize, edges: &[(usize, usize)]) -> HostGraph {
        HostGraph::from_edges(n, edges.iter().copied()).unwrap()
    }

    fn k(n: usize) -> HostGraph {
        HostGraph::complete(n)
    }

    fn star_host(m: usize) -> HostGraph {
        PatternGraph::star(m).unwrap().to_host()
    }

    #[test]
    fn hub_examples() {
        let kb = PatternGraph::biclique(2, 8).unwrap().to_host();
        let v = detect_hub(&kb, 0.1, 16.0, 7.0);
        assert!(v.is_yes());
        assert_eq!(v.witness.unwrap().as_slice(), &[0, 1]);
        assert_eq!(detect_hub(&HostGraph::empty(5), 0.1, 1.0, 1.0).found, Found::NoExhaustive);
        assert_eq!(detect_hub(&kb, 0.1, 17.0, 7.0).found, Found::NoExhaustive);
    }

    #[test]
    fn clique_examples() {
        let mut edges: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        edges.extend([(5, 6), (7, 8), (9, 10), (4, 11), (11, 12)]);
        let g = host(14, &edges);
        let v = detect_clique(&g, 0.2, 5.0);
        assert!(v.is_yes());
        assert_eq!(v.witness.unwrap().as_slice(), &[0, 1, 2, 3, 4]);
        assert_eq!(detect_clique(&star_host(9), 0.2, 3.0).found, Found::NoExhaustive);
        assert!(detect_clique(&HostGraph::empty(4), 0.2, 1.0).is_yes());
    }

    #[test]
    fn clique_greedy_above_exact_limit() {
        let mut edges: Vec<(usize, usize)> = (0..8).flat_map(|a| (a + 1..8).map(move |b| (a, b))).collect();
        edges.extend((8..39).map(|v| (v, v + 1)));
        let g = host(40, &edges);
        let v = detect_clique(&g, 0.1, 8.0);
        assert!(v.is_yes());
        assert_eq!(v.witness.unwrap().len(), 8);
        assert_eq!(detect_clique(&HostGraph::empty(40), 0.1, 3.0).found, Found::UnknownHeuristic);
    }

    #[test]
    fn high_degree_examples() {
        let v = detect_high_degree(&star_host(5), 5.0);
        assert_eq!(v.witness.unwrap().as_slice(), &[0]);
        assert_eq!(detect_high_degree(&PatternGraph::cycle(6).unwrap().to_host(), 3.0).found, Found::NoExhaustive);
        assert!(detect_high_degree(&k(4), 3.0).is_yes());
    }

    #[test]
    fn tilde_hub_examples() {
        // Vertices 0 and 1 joined to everything, vertex 2 to 8 of 10 others.
        let n = 11;
        let mut edges = vec![(0, 1)];
        for v in 2..n {
            edges.push((0, v));
            edges.push((1, v));
        }
        for v in 3..9 {
            edges.push((2, v));
        }
        let g = host(n, &edges);
        assert_eq!(g.degree(2), 8);
        let v = detect_tilde_hub(&g, 2, 9.0, 7.0);
        assert!(v.is_yes());
        assert_eq!(v.extra, Some(2));
        assert!(detect_tilde_hub(&g, 0, 0.0, 0.0).is_yes());
        let c8 = PatternGraph::cycle(8).unwrap().to_host();
        assert_eq!(detect_tilde_hub(&c8, 1, 7.0, 0.0).found, Found::NoExhaustive);
    }

    #[test]
    fn core_examples() {
        let mut edges: Vec<(usize, usize)> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
        edges.push((3, 4));
        let g = host(5, &edges);
        let cherry = PatternGraph::star(2).unwrap();
        let out = extract_core_with_threshold(&g, &cherry, 7.0).unwrap();
        assert_eq!(out.removed, 1);
        assert!(out.graph.is_subgraph_of(&k(5)));
        assert_eq!(out.graph.edge_count(), 6);
        assert!(!out.graph.has_edge(3, 4));
        assert_eq!(extract_core_with_threshold(&g, &cherry, 0.0).unwrap().graph.edge_count(), 7);
        assert_eq!(extract_core_with_threshold(&g, &cherry, 1e9).unwrap().graph.edge_count(), 0);
    }

    #[test]
    fn general_pruning_recounts_triangles() {
        // K_4 edges lie in 12 labelled triangles, the side triangle's in 6.
        let mut edges: Vec<(usize, usize)> = (0..4).flat_map(|a| (a + 1..4).map(move |b| (a, b))).collect();
        edges.extend([(3, 4), (4, 5), (3, 5), (5, 6)]);
        let g = host(7, &edges);
        let tri = PatternGraph::clique(3).unwrap();
        let out = extract_core_with_threshold(&g, &tri, 7.0).unwrap();
        assert_eq!(out.graph.edge_count(), 6);
    }

    #[test]
    fn strong_core_examples() {
        let cfg = CoreConfig::star(2, 1.0, 0.1).unwrap();
        let mut s = cfg;
        s.delta = 0.0;
        let g = k(5);
        assert_eq!(extract_strong_core(&g, 2, &s, 5, 0.5).unwrap().graph.edge_count(), 10);
        // Hub of 10 leaves plus two far-away noise edges.
        let mut edges: Vec<(usize, usize)> = (1..=10).map(|v| (0, v)).collect();
        edges.extend([(11, 12), (13, 14)]);
        let g = host(15, &edges);
        let h = PatternGraph::star(2).unwrap();
        let out = extract_core_with_threshold(&g, &h, 5.0).unwrap();
        assert_eq!(out.graph.edge_count(), 10);
        assert_eq!(extract_strong_core(&HostGraph::empty(4), 2, &cfg, 4, 0.5).unwrap().edges, 0);
    }

    #[test]
    fn low_degree_examples() {
        let ld = low_degree_analysis(&star_host(10), 0.5).unwrap();
        assert_eq!(ld.w.len(), 10);
        assert_eq!(ld.g_w_edges, 10);
        assert!(ld.bipartite);
        let ld = low_degree_analysis(&k(4), 0.5).unwrap();
        assert!(ld.w.is_empty() && ld.bipartite && ld.g_w_edges == 0);
        let ld = low_degree_analysis(&k(3), 0.4).unwrap();
        assert_eq!(ld.w.len(), 3);
        assert!(!ld.bipartite);
    }

    #[test]
    fn degree_product_examples() {
        assert_eq!(degree_product_check(&k(4), 9.0), (true, None));
        let mut e: Vec<_> = k(4).edges().collect();
        e.push((3, 4));
        assert_eq!(degree_product_check(&host(5, &e), 5.0), (false, Some((3, 4))));
        assert!(degree_product_check(&HostGraph::empty(3), 100.0).0);
    }

    #[test]
    fn g_low_examples() {
        assert_eq!(g_low(&k(4), 9.0).edge_count(), 6);
        assert_eq!(g_low(&k(4), 8.0).edge_count(), 0);
        assert_eq!(g_low(&star_host(3), 3.0).edge_count(), 3);
    }

    #[test]
    fn peel_examples() {
        let out = stability_peel(&k(5), 0.04).unwrap();
        assert_eq!(out.graph.edge_count(), 10);
        assert_eq!(out.min_degree, 4);
        assert!(!out.epsilon_in_range);
        let out = stability_peel(&star_host(9), 0.01).unwrap();
        assert!((out.target - 0.6 * 18f64.sqrt()).abs() < 1e-12);
        assert_eq!(out.graph.edge_count(), 0);
        assert!(out.vertices.is_empty());
        let single = host(2, &[(0, 1)]);
        let out = stability_peel(&single, 1.0).unwrap();
        assert_eq!(out.graph.edge_count(), 1);
        assert!(out.epsilon_in_range);
    }
}
