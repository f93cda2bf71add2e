//! Pattern-level combinatorics: fractional independence, the max-degree
//! core `H*`, independence polynomials and the family `Q_H` of subgraphs
//! whose edges all leave a set of max-degree vertices.
//!
//! Everything here is exhaustive and exact. Half-integers are carried as
//! [`Half`] so that equality tests never depend on a tolerance.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{PatternGraph, VertexSet};

/// Cap for the `3^v` fractional search.
pub const MAX_ALPHA_VERTICES: usize = 12;
/// Cap for independent-set enumeration.
pub const MAX_INDEPENDENCE_VERTICES: usize = 20;
/// Cap for `Q_H` scans (vertex side).
pub const MAX_QH_VERTICES: usize = 10;
/// Cap for `Q_H` scans (edge side); the scan visits `2^e` edge subsets.
pub const MAX_QH_EDGES: usize = 24;

/// An exact multiple of one half, stored as twice its value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Half(i64);

impl Half {
    pub const ZERO: Half = Half(0);
    pub const HALF: Half = Half(1);
    pub const ONE: Half = Half(2);

    pub fn from_int(n: i64) -> Self {
        Half(2 * n)
    }

    pub fn from_halves(twice: i64) -> Self {
        Half(twice)
    }

    /// Twice the value.
    pub fn halves(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn scale(self, k: i64) -> Half {
        Half(self.0 * k)
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, o: Half) -> Half {
        Half(self.0 + o.0)
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, o: Half) -> Half {
        Half(self.0 - o.0)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl Serialize for Half {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_integer() {
            s.serialize_i64(self.0 / 2)
        } else {
            s.serialize_f64(self.to_f64())
        }
    }
}

/// A fractional independent set with values in `{0, 1/2, 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalAssignment {
    values: Vec<Half>,
}

impl FractionalAssignment {
    pub fn values(&self) -> &[Half] {
        &self.values
    }

    pub fn total(&self) -> Half {
        self.values.iter().fold(Half::ZERO, |a, &b| a + b)
    }

    /// `α(u) + α(v) <= 1` on every edge and values in `[0, 1]`.
    pub fn is_valid_for(&self, g: &PatternGraph) -> bool {
        self.values.len() == g.vertex_count()
            && self.values.iter().all(|&x| x >= Half::ZERO && x <= Half::ONE)
            && g.edges()
                .iter()
                .all(|&(u, v)| self.values[u] + self.values[v] <= Half::ONE)
    }
}

/// Fractional independence number `α*` with a witness.
///
/// Isolated vertices are unconstrained and contribute 1 each.
pub fn fractional_independence_number(g: &PatternGraph) -> Result<(Half, FractionalAssignment)> {
    let n = g.vertex_count();
    if n > MAX_ALPHA_VERTICES {
        return Err(Error::PatternTooLarge {
            what: "vertex count for fractional independence",
            actual: n,
            limit: MAX_ALPHA_VERTICES,
        });
    }
    let (best, witness) = alpha_search(g);
    Ok((
        Half(best),
        FractionalAssignment {
            values: witness.into_iter().map(Half).collect(),
        },
    ))
}

/// `α*` in halves without the size check; used by the scans below, which
/// enforce their own caps.
pub(crate) fn alpha_star_halves(g: &PatternGraph) -> i64 {
    alpha_search(g).0
}

fn alpha_search(g: &PatternGraph) -> (i64, Vec<i64>) {
    struct Search<'a> {
        g: &'a PatternGraph,
        order: Vec<usize>,
        current: Vec<i64>,
        best: i64,
        best_assign: Vec<i64>,
    }
    impl Search<'_> {
        fn run(&mut self, i: usize, sum: i64) {
            let remaining = (self.order.len() - i) as i64;
            if sum + 2 * remaining <= self.best {
                return;
            }
            if i == self.order.len() {
                self.best = sum;
                self.best_assign = self.current.clone();
                return;
            }
            let v = self.order[i];
            // Largest value allowed by already-assigned neighbours.
            let cap = self
                .g
                .neighbors(v)
                .filter(|&w| self.current[w] >= 0)
                .map(|w| 2 - self.current[w])
                .min()
                .unwrap_or(2);
            for val in (0..=cap).rev() {
                self.current[v] = val;
                self.run(i + 1, sum + val);
            }
            self.current[v] = -1;
        }
    }
    let n = g.vertex_count();
    // Low-degree vertices first: they tend to take value 1 early, which
    // tightens the bound sooner.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (g.degree(v), v));
    // Start from the all-halves assignment, which is always feasible.
    let mut s = Search {
        g,
        order,
        current: vec![-1; n],
        best: n as i64,
        best_assign: vec![1; n],
    };
    s.run(0, 0);
    (s.best, s.best_assign)
}

/// `H*`: the subgraph induced on the vertices of maximum degree, with the
/// mapping back to `H`.
pub fn h_star(h: &PatternGraph) -> Result<(PatternGraph, Vec<usize>)> {
    let delta = h.max_degree()?;
    let top: Vec<usize> = (0..h.vertex_count()).filter(|&v| h.degree(v) == delta).collect();
    h.induced_subgraph(&VertexSet::new(top, h.vertex_count())?)
}

/// Coefficients `(i_0, i_1, …)` where `i_k` counts independent `k`-sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct IndependencePolynomial {
    coefficients: Vec<u64>,
}

impl IndependencePolynomial {
    /// Builds from raw coefficients; requires `i_0 = 1`, no trailing zeros.
    pub fn from_coefficients(coefficients: Vec<u64>) -> Result<Self> {
        if coefficients.first() != Some(&1) {
            return Err(Error::invalid("independence polynomial needs i_0 = 1"));
        }
        if coefficients.len() > 1 && coefficients.last() == Some(&0) {
            return Err(Error::invalid("trailing zero coefficient"));
        }
        Ok(IndependencePolynomial { coefficients })
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    /// Size of the largest independent set.
    pub fn independence_number(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Horner evaluation.
    pub fn eval(&self, theta: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * theta + c as f64)
    }

    pub fn derivative_at(&self, theta: f64) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (k, &c)| acc * theta + (k as f64) * c as f64)
    }

    /// Coefficient-wise product, the polynomial of a disjoint union.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = vec![0u64; self.coefficients.len() + other.coefficients.len() - 1];
        for (i, &a) in self.coefficients.iter().enumerate() {
            for (j, &b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IndependencePolynomial { coefficients: out }
    }
}

/// Independence polynomial by the deletion/contraction branching
/// `P(G) = P(G - v) + θ·P(G - N[v])` over vertex bitmasks.
pub fn independence_polynomial(g: &PatternGraph) -> Result<IndependencePolynomial> {
    let n = g.vertex_count();
    if n > MAX_INDEPENDENCE_VERTICES {
        return Err(Error::PatternTooLarge {
            what: "vertex count for independence polynomial",
            actual: n,
            limit: MAX_INDEPENDENCE_VERTICES,
        });
    }
    let mut coefficients = vec![0u64; n + 1];
    fn branch(g: &PatternGraph, avail: u32, size: usize, out: &mut [u64]) {
        if avail == 0 {
            out[size] += 1;
            return;
        }
        let v = avail.trailing_zeros() as usize;
        let rest = avail & !(1 << v);
        branch(g, rest, size, out);
        branch(g, rest & !g.row(v), size + 1, out);
    }
    branch(g, g.full_mask(), 0, &mut coefficients);
    while coefficients.len() > 1 && *coefficients.last().unwrap() == 0 {
        coefficients.pop();
    }
    Ok(IndependencePolynomial { coefficients })
}

/// A member `(J, A, B)` of `Q_H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QhMember {
    /// Edges of `J`, as pairs of `H`-vertices.
    pub edges: Vec<(usize, usize)>,
    pub a: VertexSet,
    pub b: VertexSet,
}

impl QhMember {
    /// `J` as a stand-alone pattern, relabelled to `0..v_J`, together with
    /// the relabelled `A`-side indicator.
    pub fn pattern(&self) -> (PatternGraph, Vec<bool>) {
        let mut verts: Vec<usize> = self.a.iter().chain(self.b.iter()).collect();
        verts.sort_unstable();
        let idx = |x: usize| verts.binary_search(&x).expect("vertex of J");
        let edges: Vec<_> = self.edges.iter().map(|&(u, v)| (idx(u), idx(v))).collect();
        let j = PatternGraph::new(verts.len(), &edges).expect("valid member");
        let a_side = verts.iter().map(|&v| self.a.contains(v)).collect();
        (j, a_side)
    }
}

fn qh_caps(h: &PatternGraph) -> Result<()> {
    if h.vertex_count() > MAX_QH_VERTICES {
        return Err(Error::PatternTooLarge {
            what: "vertex count for Q_H scan",
            actual: h.vertex_count(),
            limit: MAX_QH_VERTICES,
        });
    }
    if h.edge_count() > MAX_QH_EDGES {
        return Err(Error::PatternTooLarge {
            what: "edge count for Q_H scan",
            actual: h.edge_count(),
            limit: MAX_QH_EDGES,
        });
    }
    Ok(())
}

/// All proper `(A, B)` splits of the edge subgraph `j` (on `H`'s vertex set)
/// where every edge crosses and every `A` vertex has `j`-degree `delta`.
/// `A` and `B` partition the non-isolated vertices of `j`.
fn qh_splits(j: &PatternGraph, delta: usize) -> Vec<(u32, u32)> {
    let support: u32 = (0..j.vertex_count())
        .filter(|&v| j.degree(v) > 0)
        .fold(0, |m, v| m | 1 << v);
    let candidates: Vec<usize> = (0..j.vertex_count())
        .filter(|&v| j.degree(v) == delta)
        .collect();
    let mut out = Vec::new();
    for pick in 1u32..(1 << candidates.len()) {
        let a = candidates
            .iter()
            .enumerate()
            .filter(|(i, _)| pick >> i & 1 == 1)
            .fold(0u32, |m, (_, &v)| m | 1 << v);
        let b = support & !a;
        if j.edges_within(a) == 0 && j.edges_within(b) == 0 {
            out.push((a, b));
        }
    }
    out
}

fn edge_mask_edges(h: &PatternGraph, mask: u64) -> Vec<(usize, usize)> {
    h.edges()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e)
        .collect()
}

/// Exhaustive scan of `Q_H` over all nonempty edge subsets of `H`.
pub fn enumerate_qh(h: &PatternGraph) -> Result<Vec<QhMember>> {
    qh_caps(h)?;
    let delta = h.max_degree()?;
    let mut out = Vec::new();
    for mask in 1u64..(1 << h.edge_count()) {
        let j = h.edge_subgraph(mask);
        for (a, b) in qh_splits(&j, delta) {
            out.push(QhMember {
                edges: edge_mask_edges(h, mask),
                a: VertexSet::from_mask(a as u64),
                b: VertexSet::from_mask(b as u64),
            });
        }
    }
    Ok(out)
}

fn require_connected_irregular(h: &PatternGraph) -> Result<()> {
    if !h.is_connected() {
        return Err(Error::precondition("pattern must be connected"));
    }
    if h.is_regular() {
        return Err(Error::precondition("pattern must be irregular"));
    }
    Ok(())
}

/// Compares the number of `Q_H` members with `|A| = k` against the number
/// of independent `k`-sets of `H*`, for every `k >= 1`.
pub fn qh_independent_set_bijection_check(h: &PatternGraph) -> Result<bool> {
    require_connected_irregular(h)?;
    let members = enumerate_qh(h)?;
    let (core, _) = h_star(h)?;
    let poly = independence_polynomial(&core)?;
    let mut by_size = vec![0u64; h.vertex_count() + 1];
    for m in &members {
        by_size[m.a.len()] += 1;
    }
    Ok((1..by_size.len()).all(|k| {
        let expected = poly.coefficients().get(k).copied().unwrap_or(0);
        by_size[k] == expected
    }))
}

/// `σ`: the smallest slack `Δ(v_J − α*_J) − e_J` over nonempty,
/// isolated-vertex-free subgraphs `J ∉ Q_H`, with a minimising `J`.
pub fn deficiency_sigma(h: &PatternGraph) -> Result<(Half, Vec<(usize, usize)>)> {
    if !h.is_connected() {
        return Err(Error::precondition("pattern must be connected"));
    }
    qh_caps(h)?;
    let delta = h.max_degree()? as i64;
    let mut best: Option<(Half, u64)> = None;
    for mask in 1u64..(1 << h.edge_count()) {
        let j = h.edge_subgraph(mask);
        if !qh_splits(&j, delta as usize).is_empty() {
            continue;
        }
        let (core, _) = j.without_isolated();
        let slack = Half(delta * (2 * core.vertex_count() as i64 - alpha_star_halves(&core)))
            - Half::from_int(core.edge_count() as i64);
        if best.is_none_or(|(b, _)| slack.cmp(&b) == Ordering::Less) {
            best = Some((slack, mask));
        }
    }
    let (value, mask) =
        best.ok_or_else(|| Error::precondition("every subgraph of the pattern lies in Q_H"))?;
    Ok((value, edge_mask_edges(h, mask)))
}

/// Outcome of [`lemma23_check`], with the first failing subgraph if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma23Report {
    pub holds: bool,
    pub subgraphs_checked: usize,
    pub qh_members: usize,
    pub first_failure: Option<String>,
}

/// Checks, over every nonempty isolated-vertex-free subgraph `J`:
/// `Δ(v_J − α*_J) ≥ e_J` with equality exactly on `Q_H`; and for each
/// member and crossing edge `(a, b)`, deleting `a` and `b` leaves
/// `α* = |B| − 1` on the remaining vertices, isolated ones included.
pub fn lemma23_check(h: &PatternGraph) -> Result<Lemma23Report> {
    require_connected_irregular(h)?;
    qh_caps(h)?;
    let delta = h.max_degree()? as i64;
    let mut checked = 0;
    let mut members = 0;
    let mut failure: Option<String> = None;
    for mask in 1u64..(1 << h.edge_count()) {
        checked += 1;
        let j = h.edge_subgraph(mask);
        let (core, _) = j.without_isolated();
        let slack = delta * (2 * core.vertex_count() as i64 - alpha_star_halves(&core))
            - 2 * core.edge_count() as i64;
        let splits = qh_splits(&j, delta as usize);
        members += splits.len();
        if slack < 0 || (slack == 0) != !splits.is_empty() {
            failure.get_or_insert_with(|| {
                format!(
                    "part (i) fails on J = {:?}: slack {} with {} Q_H splits",
                    edge_mask_edges(h, mask),
                    Half(slack),
                    splits.len()
                )
            });
            continue;
        }
        for &(a_mask, b_mask) in &splits {
            let b_size = b_mask.count_ones() as i64;
            let support = a_mask | b_mask;
            for &(u, v) in core_edges(&j).iter() {
                let (a, b) = if a_mask >> u & 1 == 1 { (u, v) } else { (v, u) };
                debug_assert!(b_mask >> b & 1 == 1);
                let alpha = match support.count_ones() {
                    2 => 0,
                    _ => alpha_star_halves(&reduced_on_support(&j, support, a, b)),
                };
                if alpha != 2 * (b_size - 1) {
                    failure.get_or_insert_with(|| {
                        format!(
                            "part (ii) fails on J = {:?}, A = {}, edge ({a},{b})",
                            edge_mask_edges(h, mask),
                            VertexSet::from_mask(a_mask as u64)
                        )
                    });
                }
            }
        }
    }
    Ok(Lemma23Report {
        holds: failure.is_none(),
        subgraphs_checked: checked,
        qh_members: members,
        first_failure: failure,
    })
}

fn core_edges(j: &PatternGraph) -> Vec<(usize, usize)> {
    j.edges().to_vec()
}

/// `J` restricted to `support \ {a, b}`; every remaining vertex is kept,
/// isolated or not.
fn reduced_on_support(j: &PatternGraph, support: u32, a: usize, b: usize) -> PatternGraph {
    let verts: Vec<usize> = (0..j.vertex_count())
        .filter(|&v| support >> v & 1 == 1 && v != a && v != b)
        .collect();
    let idx = |x: usize| verts.binary_search(&x).expect("in support");
    let edges: Vec<_> = j
        .edges()
        .iter()
        .filter(|&&(u, v)| u != a && u != b && v != a && v != b)
        .map(|&(u, v)| (idx(u), idx(v)))
        .collect();
    PatternGraph::new(verts.len(), &edges).expect("valid")
}
