//! Labelled copy counting by backtracking, plus the closed-form star
//! identities, embedding upper bounds, planted conditional expectations and
//! cluster counts.
//!
//! Pattern vertices are matched in a greedy connected order that maximises
//! back-degree; candidates for the next vertex come from the neighbour list
//! of the already-matched neighbour with the smallest host degree and are
//! filtered by O(1) adjacency tests against the remaining matched
//! neighbours.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{HostGraph, PatternGraph, VertexSet};
use crate::pattern::{alpha_star_halves, QhMember, MAX_ALPHA_VERTICES};

/// A nonnegative copy count.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CopyCount(BigUint);

impl CopyCount {
    pub fn new(v: BigUint) -> Self {
        CopyCount(v)
    }

    pub fn zero() -> Self {
        CopyCount(BigUint::zero())
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn to_u128(&self) -> Option<u128> {
        self.0.to_u128()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl From<u128> for CopyCount {
    fn from(v: u128) -> Self {
        CopyCount(BigUint::from(v))
    }
}

impl From<u64> for CopyCount {
    fn from(v: u64) -> Self {
        CopyCount(BigUint::from(v))
    }
}

impl fmt::Display for CopyCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Serialised as a JSON integer when it fits in `u64`, otherwise as a
/// decimal string.
impl Serialize for CopyCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

/// Search-node and wall-clock budget for backtracking.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CountBudget {
    pub max_nodes: u64,
    /// Checked alongside the node count; `None` means no time cap.
    pub max_seconds: Option<f64>,
}

impl Default for CountBudget {
    fn default() -> Self {
        CountBudget {
            max_nodes: 4_000_000_000,
            max_seconds: None,
        }
    }
}

impl CountBudget {
    pub fn nodes(max_nodes: u64) -> Self {
        CountBudget {
            max_nodes,
            ..Self::default()
        }
    }

    fn deadline(&self) -> Option<Instant> {
        self.max_seconds
            .map(|s| Instant::now() + Duration::from_secs_f64(s.clamp(0.0, 1e9)))
    }
}

/// Matching order and, for each position, the earlier positions adjacent
/// to it.
struct Plan {
    order: Vec<usize>,
    back: Vec<Vec<usize>>,
}

impl Plan {
    /// `prefix` vertices are placed first, in the given order.
    fn new(h: &PatternGraph, prefix: &[usize]) -> Plan {
        let v = h.vertex_count();
        let mut order: Vec<usize> = prefix.to_vec();
        let mut placed = vec![false; v];
        for &x in prefix {
            placed[x] = true;
        }
        while order.len() < v {
            let next = (0..v)
                .filter(|&x| !placed[x])
                .max_by_key(|&x| {
                    let back = h.neighbors(x).filter(|&w| placed[w]).count();
                    (back, h.degree(x), std::cmp::Reverse(x))
                })
                .expect("unplaced vertex");
            placed[next] = true;
            order.push(next);
        }
        let pos: Vec<usize> = {
            let mut p = vec![0; v];
            for (i, &x) in order.iter().enumerate() {
                p[x] = i;
            }
            p
        };
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let mut b: Vec<usize> = h.neighbors(x).map(|w| pos[w]).filter(|&j| j < i).collect();
                b.sort_unstable();
                b
            })
            .collect();
        Plan { order, back }
    }
}

struct Matcher<'a> {
    g: &'a HostGraph,
    plan: &'a Plan,
    domains: Option<&'a [Vec<bool>]>,
    image: Vec<usize>,
    used: Vec<bool>,
    local_nodes: u64,
    shared_nodes: &'a AtomicU64,
    max_nodes: u64,
    flush_every: u64,
    deadline: Option<Instant>,
}

const FLUSH_EVERY: u64 = 1 << 12;

impl<'a> Matcher<'a> {
    fn new(
        g: &'a HostGraph,
        plan: &'a Plan,
        domains: Option<&'a [Vec<bool>]>,
        shared_nodes: &'a AtomicU64,
        budget: CountBudget,
        deadline: Option<Instant>,
    ) -> Self {
        let max_nodes = budget.max_nodes;
        Matcher {
            g,
            plan,
            domains,
            image: vec![usize::MAX; plan.order.len()],
            used: vec![false; g.vertex_count()],
            local_nodes: 0,
            shared_nodes,
            max_nodes,
            flush_every: FLUSH_EVERY.min(max_nodes.max(1)),
            deadline,
        }
    }

    fn tick(&mut self) -> Result<()> {
        self.local_nodes += 1;
        if self.local_nodes == self.flush_every {
            let total = self.shared_nodes.fetch_add(self.local_nodes, Ordering::Relaxed)
                + self.local_nodes;
            self.local_nodes = 0;
            if total > self.max_nodes {
                return Err(Error::Budget(format!(
                    "backtracking exceeded {} search nodes",
                    self.max_nodes
                )));
            }
            if self.deadline.is_some_and(|d| Instant::now() > d) {
                return Err(Error::Budget("backtracking exceeded its time cap".into()));
            }
        }
        Ok(())
    }

    #[inline]
    fn admissible(&self, i: usize, c: usize) -> bool {
        if self.used[c] {
            return false;
        }
        if let Some(d) = self.domains {
            if !d[self.plan.order[i]][c] {
                return false;
            }
        }
        self.plan.back[i].iter().all(|&j| self.g.has_edge(self.image[j], c))
    }

    /// Candidate host vertices for position `i`, before admissibility.
    fn candidates(&self, i: usize) -> Candidates<'a> {
        let back = &self.plan.back[i];
        if back.is_empty() {
            return Candidates::All(self.g.vertex_count());
        }
        let anchor = back
            .iter()
            .map(|&j| self.image[j])
            .min_by_key(|&x| self.g.degree(x))
            .expect("nonempty");
        Candidates::List(self.g.neighbors(anchor))
    }

    fn count_from(&mut self, i: usize) -> Result<u128> {
        self.tick()?;
        let k = self.plan.order.len();
        let cands = self.candidates(i);
        if i + 1 == k {
            return Ok(cands.iter().filter(|&c| self.admissible(i, c)).count() as u128);
        }
        let mut total = 0u128;
        for c in cands.iter() {
            if !self.admissible(i, c) {
                continue;
            }
            self.image[i] = c;
            self.used[c] = true;
            let sub = self.count_from(i + 1);
            self.used[c] = false;
            total += sub?;
        }
        self.image[i] = usize::MAX;
        Ok(total)
    }

    fn visit_from(&mut self, i: usize, f: &mut dyn FnMut(&[usize]) -> Result<()>) -> Result<()> {
        self.tick()?;
        let k = self.plan.order.len();
        if i == k {
            return f(&self.image);
        }
        let cands = self.candidates(i);
        for c in cands.iter() {
            if !self.admissible(i, c) {
                continue;
            }
            self.image[i] = c;
            self.used[c] = true;
            let r = self.visit_from(i + 1, f);
            self.used[c] = false;
            r?;
        }
        self.image[i] = usize::MAX;
        Ok(())
    }

    fn place(&mut self, i: usize, c: usize) {
        self.image[i] = c;
        self.used[c] = true;
    }
}

#[derive(Clone, Copy)]
enum Candidates<'a> {
    All(usize),
    List(&'a [u32]),
}

impl<'a> Candidates<'a> {
    fn iter(self) -> Box<dyn Iterator<Item = usize> + 'a> {
        match self {
            Candidates::All(n) => Box::new(0..n),
            Candidates::List(l) => Box::new(l.iter().map(|&x| x as usize)),
        }
    }
}

/// Counts embeddings, splitting the first free position across threads.
fn count_embeddings(
    h: &PatternGraph,
    g: &HostGraph,
    prefix: &[(usize, usize)],
    domains: Option<&[Vec<bool>]>,
    budget: CountBudget,
) -> Result<u128> {
    let k = h.vertex_count();
    if k > g.vertex_count() {
        return Ok(0);
    }
    let fixed: Vec<usize> = prefix.iter().map(|&(x, _)| x).collect();
    let plan = Plan::new(h, &fixed);
    let shared = AtomicU64::new(0);
    let deadline = budget.deadline();
    let mut root = Matcher::new(g, &plan, domains, &shared, budget, deadline);
    for (i, &(_, c)) in prefix.iter().enumerate() {
        if !root.admissible(i, c) {
            return Ok(0);
        }
        root.place(i, c);
    }
    let start = prefix.len();
    if start == k {
        return Ok(1);
    }
    let firsts: Vec<usize> = root
        .candidates(start)
        .iter()
        .filter(|&c| root.admissible(start, c))
        .collect();
    if start + 1 == k {
        return Ok(firsts.len() as u128);
    }
    let base_image = root.image.clone();
    let base_used = root.used.clone();
    firsts
        .par_iter()
        .map(|&c| {
            let mut m = Matcher::new(g, &plan, domains, &shared, budget, deadline);
            m.image.clone_from(&base_image);
            m.used.clone_from(&base_used);
            m.place(start, c);
            m.count_from(start + 1)
        })
        .try_reduce(|| 0u128, |a, b| Ok(a + b))
}

/// Calls `f` with each embedding as an image vector indexed by *pattern
/// vertex*.
pub fn for_each_embedding(
    h: &PatternGraph,
    g: &HostGraph,
    budget: CountBudget,
    mut f: impl FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if h.vertex_count() > g.vertex_count() {
        return Ok(());
    }
    let plan = Plan::new(h, &[]);
    let shared = AtomicU64::new(0);
    let mut m = Matcher::new(g, &plan, None, &shared, budget, budget.deadline());
    let mut by_vertex = vec![0usize; h.vertex_count()];
    let order = plan.order.clone();
    m.visit_from(0, &mut |img: &[usize]| {
        for (i, &x) in order.iter().enumerate() {
            by_vertex[x] = img[i];
        }
        f(&by_vertex)
    })
}

/// `N(H, G)`: injective maps sending every pattern edge to a host edge.
pub fn count_labelled(h: &PatternGraph, g: &HostGraph) -> Result<CopyCount> {
    count_labelled_with(h, g, CountBudget::default())
}

pub fn count_labelled_with(h: &PatternGraph, g: &HostGraph, budget: CountBudget) -> Result<CopyCount> {
    count_embeddings(h, g, &[], None, budget).map(CopyCount::from)
}

/// `N(H, G, e)`: labelled copies in which some pattern edge lands on `e`.
pub fn count_labelled_using_edge(h: &PatternGraph, g: &HostGraph, e: (usize, usize)) -> Result<CopyCount> {
    count_labelled_using_edge_with(h, g, e, CountBudget::default())
}

pub fn count_labelled_using_edge_with(
    h: &PatternGraph,
    g: &HostGraph,
    e: (usize, usize),
    budget: CountBudget,
) -> Result<CopyCount> {
    let (x, y) = e;
    if x >= g.vertex_count() || y >= g.vertex_count() || !g.has_edge(x, y) {
        return Err(Error::invalid(format!("({x},{y}) is not an edge of the host")));
    }
    // Injectivity means at most one pattern edge covers {x, y}, so the
    // orientations below partition the copies.
    let mut total = 0u128;
    for &(a, b) in h.edges() {
        total += count_embeddings(h, g, &[(a, x), (b, y)], None, budget)?;
        total += count_embeddings(h, g, &[(a, y), (b, x)], None, budget)?;
    }
    Ok(CopyCount::from(total))
}

/// Labelled copies of `J` inside `G[U, V]` with the `A` side mapped into
/// `U` and the `B` side into `V`.
pub fn count_restricted(member: &QhMember, g: &HostGraph, u: &VertexSet, v: &VertexSet) -> Result<CopyCount> {
    let (cross, _) = g.cross_subgraph(u, v)?;
    let (j, a_side) = member.pattern();
    let n = g.vertex_count();
    let in_u = u.indicator(n);
    let in_v = v.indicator(n);
    let domains: Vec<Vec<bool>> = a_side
        .iter()
        .map(|&is_a| if is_a { in_u.clone() } else { in_v.clone() })
        .collect();
    count_embeddings(&j, &cross, &[], Some(&domains), CountBudget::default()).map(CopyCount::from)
}

/// `N(H, G) / |Aut(H)|`.
pub fn count_unlabelled(h: &PatternGraph, g: &HostGraph) -> Result<CopyCount> {
    let labelled = count_labelled(h, g)?;
    let aut = BigUint::from(h.automorphism_count()?);
    let (q, r) = (labelled.value() / &aut, labelled.value() % &aut);
    assert!(
        r.is_zero(),
        "labelled count {labelled} not divisible by |Aut| = {aut}"
    );
    Ok(CopyCount(q))
}

fn falling(d: usize, r: usize) -> u128 {
    (0..r).map(|i| d.saturating_sub(i) as u128).product()
}

/// `N(K_{1,r}, G) = Σ_v d(v)(d(v)-1)…(d(v)-r+1)`.
pub fn star_count_exact(r: usize, g: &HostGraph) -> CopyCount {
    CopyCount::from(star_count_u128(r, g))
}

pub(crate) fn star_count_u128(r: usize, g: &HostGraph) -> u128 {
    (0..g.vertex_count()).map(|v| falling(g.degree(v), r)).sum()
}

/// `N(K_{1,r}, G, e) = r∏_{i=1}^{r-1}(d(u)-i) + r∏_{i=1}^{r-1}(d(v)-i)`
/// for an edge `e = (u, v)`.
pub fn star_count_using_edge(r: usize, g: &HostGraph, e: (usize, usize)) -> CopyCount {
    CopyCount::from(star_using_edge_u128(r, g, e))
}

pub(crate) fn star_using_edge_u128(r: usize, g: &HostGraph, (u, v): (usize, usize)) -> u128 {
    let side = |d: usize| -> u128 { r as u128 * (1..r).map(|i| d.saturating_sub(i) as u128).product::<u128>() };
    side(g.degree(u)) + side(g.degree(v))
}

/// `⌊(2e(G))^{v_J − α*_J} · n^{2α*_J − v_J}⌋`, evaluated exactly.
pub fn embedding_upper_bound(j: &PatternGraph, g: &HostGraph) -> Result<CopyCount> {
    if j.vertex_count() > MAX_ALPHA_VERTICES {
        return Err(Error::PatternTooLarge {
            what: "vertex count for fractional independence",
            actual: j.vertex_count(),
            limit: MAX_ALPHA_VERTICES,
        });
    }
    let v = j.vertex_count() as u32;
    let alpha2 = alpha_star_halves(j) as u32;
    // Square of the bound has integer exponents: (2e)^{2v − 2α*} n^{4α* − 2v}.
    let two_e = BigUint::from(2 * g.edge_count());
    let n = BigUint::from(g.vertex_count());
    let square = two_e.pow(2 * v - alpha2) * n.pow(2 * alpha2 - 2 * v);
    Ok(CopyCount(square.sqrt()))
}

/// Checks `N(K_{1,t}, G) <= e(G)^t`.
pub fn star_global_bound_check(t: usize, g: &HostGraph) -> bool {
    let lhs = star_count_exact(t, g);
    let rhs = BigUint::from(g.edge_count()).pow(t as u32);
    lhs.value() <= &rhs
}

/// Counts of injections `V(H) → [n]` by how many pattern edges land on
/// edges of `g0`; entry `k` is the number with exactly `k` planted edges.
pub fn planted_edge_profile(h: &PatternGraph, g0: &HostGraph, budget: CountBudget) -> Result<Vec<u128>> {
    let n = g0.vertex_count();
    let v = h.vertex_count();
    let mut profile = vec![0u128; h.edge_count() + 1];
    if v > n {
        return Ok(profile);
    }
    let work = (n as f64).powi(v as i32);
    if work > budget.max_nodes as f64 {
        return Err(Error::Budget(format!(
            "conditional expectation needs about {work:.3e} injections"
        )));
    }
    let plan = Plan::new(h, &[]);
    let mut image = vec![usize::MAX; v];
    let mut used = vec![false; n];
    fn rec(
        i: usize,
        planted: usize,
        plan: &Plan,
        g0: &HostGraph,
        image: &mut [usize],
        used: &mut [bool],
        profile: &mut [u128],
    ) {
        if i == plan.order.len() {
            profile[planted] += 1;
            return;
        }
        for c in 0..g0.vertex_count() {
            if used[c] {
                continue;
            }
            let extra = plan.back[i].iter().filter(|&&j| g0.has_edge(image[j], c)).count();
            image[i] = c;
            used[c] = true;
            rec(i + 1, planted + extra, plan, g0, image, used, profile);
            used[c] = false;
        }
    }
    rec(0, 0, &plan, g0, &mut image, &mut used, &mut profile);
    Ok(profile)
}

/// `E[N(H, G(n,p)) | G0 ⊆ G(n,p)]`.
pub fn conditional_expected_count(h: &PatternGraph, n: usize, p: f64, g0: &HostGraph) -> Result<f64> {
    conditional_expected_count_with(h, n, p, g0, CountBudget::default())
}

pub fn conditional_expected_count_with(
    h: &PatternGraph,
    n: usize,
    p: f64,
    g0: &HostGraph,
    budget: CountBudget,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("p = {p} is not a probability")));
    }
    if g0.vertex_count() != n {
        return Err(Error::invalid("planted graph must have n vertices"));
    }
    let profile = planted_edge_profile(h, g0, budget)?;
    Ok(profile_value(&profile, h.edge_count(), p))
}

fn profile_value(profile: &[u128], e: usize, p: f64) -> f64 {
    profile
        .iter()
        .enumerate()
        .map(|(k, &c)| c as f64 * p.powi((e - k) as i32))
        .sum()
}

/// Planted families scanned by [`phi_planted_search`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PlantedFamily {
    /// No planting (δ = 0).
    Empty,
    /// `K_{m, n-m}` from the first `m` vertices.
    Hub,
    /// `K_m` on the first `m` vertices.
    Clique,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlantedSearch {
    /// `e(G0)·log(1/p)` of the best planting.
    pub value: f64,
    pub family: PlantedFamily,
    pub size: usize,
    pub edges: usize,
    #[serde(skip)]
    pub witness: HostGraph,
}

/// The first `m` vertices joined to all others.
pub fn planted_hub(n: usize, m: usize) -> HostGraph {
    let edges = (0..m).flat_map(|u| (m..n).map(move |v| (u, v)));
    HostGraph::from_edges(n, edges).expect("valid")
}

/// A clique on the first `m` vertices.
pub fn planted_clique(n: usize, m: usize) -> HostGraph {
    let edges = (0..m).flat_map(|u| ((u + 1)..m).map(move |v| (u, v)));
    HostGraph::from_edges(n, edges).expect("valid")
}

/// Upper bound on `Φ_H(δ)` from hub and clique plantings: the cheapest
/// planting `G0` with `E_{G0}[N] >= (1+δ)E[N]`.
pub fn phi_planted_search(h: &PatternGraph, n: usize, p: f64, delta: f64) -> Result<PlantedSearch> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::invalid(format!("p = {p} must lie in (0,1)")));
    }
    if delta < 0.0 {
        return Err(Error::invalid("delta must be nonnegative"));
    }
    let budget = CountBudget::default();
    let cost = |e: usize| e as f64 * (1.0 / p).ln();
    if delta == 0.0 {
        return Ok(PlantedSearch {
            value: 0.0,
            family: PlantedFamily::Empty,
            size: 0,
            edges: 0,
            witness: HostGraph::empty(n),
        });
    }
    let base = conditional_expected_count_with(h, n, p, &HostGraph::empty(n), budget)?;
    let target = (1.0 + delta) * base;
    let mut best: Option<PlantedSearch> = None;
    let mut consider = |family: PlantedFamily, size: usize, g0: HostGraph| -> Result<()> {
        let value = cost(g0.edge_count());
        if best.as_ref().is_some_and(|b| b.value <= value) {
            return Ok(());
        }
        if conditional_expected_count_with(h, n, p, &g0, budget)? >= target {
            best = Some(PlantedSearch {
                value,
                family,
                size,
                edges: g0.edge_count(),
                witness: g0,
            });
        }
        Ok(())
    };
    for m in 1..n {
        consider(PlantedFamily::Hub, m, planted_hub(n, m))?;
    }
    for m in 2..=n {
        consider(PlantedFamily::Clique, m, planted_clique(n, m))?;
    }
    best.ok_or_else(|| Error::invalid("constraint unsatisfiable even with the complete graph planted"))
}

/// How an `s`-set of copies qualifies as a cluster.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClusterMode {
    /// Every copy shares an edge with another copy in the set.
    #[default]
    MinDegree,
    /// The copies' edge-sharing graph is connected.
    Connected,
}

/// Cap on distinct unlabelled copies in [`cluster_count`].
pub const CLUSTER_COPY_CAP: usize = 5000;

/// Unlabelled copies of `H` in `G`, each as its sorted host edge list.
pub fn unlabelled_copies(h: &PatternGraph, g: &HostGraph, cap: usize) -> Result<Vec<Vec<(usize, usize)>>> {
    let mut seen: HashSet<Vec<(usize, usize)>> = HashSet::new();
    let mut copies = Vec::new();
    for_each_embedding(h, g, CountBudget::default(), |img| {
        let mut key: Vec<(usize, usize)> = h
            .edges()
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (img[a], img[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        key.sort_unstable();
        if seen.insert(key.clone()) {
            if copies.len() == cap {
                return Err(Error::Budget(format!("more than {cap} unlabelled copies")));
            }
            copies.push(key);
        }
        Ok(())
    })?;
    copies.sort();
    Ok(copies)
}

/// Number of `s`-sets of distinct unlabelled copies forming a cluster in
/// the copy-intersection graph (copies adjacent when they share an edge).
pub fn cluster_count(h: &PatternGraph, g: &HostGraph, s: usize, mode: ClusterMode) -> Result<CopyCount> {
    if !(2..=4).contains(&s) {
        return Err(Error::invalid("cluster size must be between 2 and 4"));
    }
    let copies = unlabelled_copies(h, g, CLUSTER_COPY_CAP)?;
    let mut by_edge: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (i, c) in copies.iter().enumerate() {
        for &e in c {
            by_edge.entry(e).or_default().push(i);
        }
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); copies.len()];
    for owners in by_edge.values() {
        for &a in owners {
            for &b in owners {
                if a != b {
                    adj[a].push(b);
                }
            }
        }
    }
    for list in adj.iter_mut() {
        list.sort_unstable();
        list.dedup();
    }
    let connected = count_connected_sets(&adj, s);
    let mut total = connected as u128;
    if mode == ClusterMode::MinDegree && s == 4 {
        total += count_induced_matchings_of_two(&adj) as u128;
    }
    Ok(CopyCount::from(total))
}

/// Connected induced `s`-vertex subgraphs, by ESU enumeration.
fn count_connected_sets(adj: &[Vec<usize>], s: usize) -> u64 {
    fn extend(adj: &[Vec<usize>], sub: &mut Vec<usize>, ext: Vec<usize>, root: usize, s: usize) -> u64 {
        if sub.len() == s {
            return 1;
        }
        let mut total = 0;
        let mut ext = ext;
        while let Some(w) = ext.pop() {
            let mut next = ext.clone();
            for &u in &adj[w] {
                if u <= root || sub.contains(&u) || next.contains(&u) || u == w {
                    continue;
                }
                // Exclusive neighbourhood: not adjacent to the current set.
                if sub.iter().any(|&x| adj[x].binary_search(&u).is_ok()) {
                    continue;
                }
                next.push(u);
            }
            sub.push(w);
            total += extend(adj, sub, next, root, s);
            sub.pop();
        }
        total
    }
    (0..adj.len())
        .map(|v| {
            let ext: Vec<usize> = adj[v].iter().copied().filter(|&u| u > v).collect();
            extend(adj, &mut vec![v], ext, v, s)
        })
        .sum()
}

/// Pairs of vertex-disjoint edges with no edge between them.
fn count_induced_matchings_of_two(adj: &[Vec<usize>]) -> u64 {
    let edges: Vec<(usize, usize)> = adj
        .iter()
        .enumerate()
        .flat_map(|(a, l)| l.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
        .collect();
    let linked = |x: usize, y: usize| adj[x].binary_search(&y).is_ok();
    let mut total = 0;
    for (i, &(a, b)) in edges.iter().enumerate() {
        for &(c, d) in &edges[i + 1..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if !(linked(a, c) || linked(a, d) || linked(b, c) || linked(b, d)) {
                total += 1;
            }
        }
    }
    total
}
