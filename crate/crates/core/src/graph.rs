//! Graph types shared by every other module.
//!
//! Two representations are used. [`PatternGraph`] is a small motif (at most
//! [`MAX_PATTERN_VERTICES`] vertices) stored as adjacency bitmasks so that
//! exhaustive enumeration over vertex and edge subsets is cheap.
//! [`HostGraph`] is the graph being counted over; it keeps sorted adjacency
//! lists and, up to [`BITSET_LIMIT`] vertices, bitset rows for O(1)
//! adjacency tests.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest pattern the bitmask representation can hold.
pub const MAX_PATTERN_VERTICES: usize = 32;

/// Automorphism enumeration cap.
pub const MAX_AUT_VERTICES: usize = 12;

/// Hosts up to this many vertices carry bitset adjacency rows.
pub const BITSET_LIMIT: usize = 10_000;

/// A sorted, duplicate-free set of vertex indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    /// Builds a set, rejecting indices `>= n` and duplicates.
    pub fn new(mut vertices: Vec<usize>, n: usize) -> Result<Self> {
        vertices.sort_unstable();
        for w in vertices.windows(2) {
            if w[0] == w[1] {
                return Err(Error::invalid(format!("duplicate vertex {}", w[0])));
            }
        }
        if let Some(&v) = vertices.last() {
            if v >= n {
                return Err(Error::invalid(format!(
                    "vertex {v} out of range for graph on {n} vertices"
                )));
            }
        }
        Ok(VertexSet(vertices))
    }

    /// Set from a bitmask over at most 64 vertices.
    pub fn from_mask(mask: u64) -> Self {
        VertexSet((0..64).filter(|&i| mask >> i & 1 == 1).collect())
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }

    /// Membership table of length `n`.
    pub fn indicator(&self, n: usize) -> Vec<bool> {
        let mut out = vec![false; n];
        for v in self.iter() {
            out[v] = true;
        }
        out
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A small fixed motif on vertices `0..v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PatternGraph {
    rows: Vec<u32>,
    edges: Vec<(usize, usize)>,
    degrees: Vec<usize>,
}

impl PatternGraph {
    /// Builds a pattern from an edge list. Self-loops and repeated edges are
    /// rejected.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::invalid("pattern needs at least one vertex"));
        }
        if vertex_count > MAX_PATTERN_VERTICES {
            return Err(Error::PatternTooLarge {
                what: "vertex count",
                actual: vertex_count,
                limit: MAX_PATTERN_VERTICES,
            });
        }
        let mut rows = vec![0u32; vertex_count];
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::invalid(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at {u}")));
            }
            if rows[u] >> v & 1 == 1 {
                return Err(Error::invalid(format!("duplicate edge ({u},{v})")));
            }
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
        Ok(Self::from_rows(rows))
    }

    fn from_rows(rows: Vec<u32>) -> Self {
        let mut edges = Vec::new();
        for (u, &row) in rows.iter().enumerate() {
            for v in (u + 1)..rows.len() {
                if row >> v & 1 == 1 {
                    edges.push((u, v));
                }
            }
        }
        let degrees = rows.iter().map(|r| r.count_ones() as usize).collect();
        PatternGraph {
            rows,
            edges,
            degrees,
        }
    }

    /// `K_{1,r}` with center 0.
    pub fn star(r: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=r).map(|l| (0, l)).collect();
        Self::new(r + 1, &edges)
    }

    /// Path on `k` vertices.
    pub fn path(k: usize) -> Result<Self> {
        let edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        Self::new(k, &edges)
    }

    /// Cycle on `k >= 3` vertices.
    pub fn cycle(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::invalid("cycle needs at least 3 vertices"));
        }
        let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        Self::new(k, &edges)
    }

    pub fn clique(k: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for u in 0..k {
            for v in (u + 1)..k {
                edges.push((u, v));
            }
        }
        Self::new(k, &edges)
    }

    /// `K_{a,b}`; side `a` is `0..a`.
    pub fn biclique(a: usize, b: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..(a + b) {
                edges.push((u, v));
            }
        }
        Self::new(a + b, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.rows.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    /// Neighbourhood bitmask of `v`.
    pub fn row(&self, v: usize) -> u32 {
        self.rows[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.rows[v];
        (0..self.rows.len()).filter(move |&u| row >> u & 1 == 1)
    }

    /// Bitmask with one bit per vertex.
    pub fn full_mask(&self) -> u32 {
        if self.rows.len() == 32 {
            u32::MAX
        } else {
            (1u32 << self.rows.len()) - 1
        }
    }

    /// Maximum degree Δ.
    pub fn max_degree(&self) -> Result<usize> {
        if self.edges.is_empty() {
            return Err(Error::invalid("no edges"));
        }
        Ok(*self.degrees.iter().max().expect("nonempty"))
    }

    pub fn is_regular(&self) -> bool {
        self.degrees.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(0, self.full_mask()) == self.full_mask()
    }

    /// Vertices reachable from `start` while staying inside `within`.
    pub(crate) fn component_of(&self, start: usize, within: u32) -> u32 {
        let mut seen = 1u32 << start;
        let mut frontier = seen;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let fresh = self.rows[v] & within & !seen;
            seen |= fresh;
            frontier |= fresh;
        }
        seen
    }

    /// `K_{1,r}` test; returns `r` for stars with at least one leaf.
    pub fn star_arms(&self) -> Option<usize> {
        let v = self.vertex_count();
        if v < 2 || self.edge_count() != v - 1 {
            return None;
        }
        let center = (0..v).find(|&u| self.degrees[u] == v - 1)?;
        let leaves_ok = (0..v).all(|u| u == center || self.degrees[u] == 1);
        leaves_ok.then_some(v - 1)
    }

    /// BFS 2-colouring. Returns the two colour classes, the class containing
    /// the lowest vertex of each component first.
    pub fn bipartite_parts(&self) -> Option<(VertexSet, VertexSet)> {
        let n = self.vertex_count();
        let mut color: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].expect("colored");
                for w in self.neighbors(u) {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let left = (0..n).filter(|&v| color[v] == Some(false)).collect();
        let right = (0..n).filter(|&v| color[v] == Some(true)).collect();
        Some((VertexSet(left), VertexSet(right)))
    }

    /// `|Aut(H)|` by backtracking over degree-compatible bijections.
    pub fn automorphism_count(&self) -> Result<u64> {
        let n = self.vertex_count();
        if n > MAX_AUT_VERTICES {
            return Err(Error::PatternTooLarge {
                what: "vertex count for automorphism enumeration",
                actual: n,
                limit: MAX_AUT_VERTICES,
            });
        }
        let mut image = vec![usize::MAX; n];
        let mut used = 0u32;
        Ok(self.extend_automorphism(0, &mut image, &mut used))
    }

    fn extend_automorphism(&self, i: usize, image: &mut [usize], used: &mut u32) -> u64 {
        let n = self.vertex_count();
        if i == n {
            return 1;
        }
        let mut total = 0;
        for c in 0..n {
            if *used >> c & 1 == 1 || self.degrees[c] != self.degrees[i] {
                continue;
            }
            let consistent = (0..i).all(|j| self.has_edge(i, j) == self.has_edge(c, image[j]));
            if !consistent {
                continue;
            }
            image[i] = c;
            *used |= 1 << c;
            total += self.extend_automorphism(i + 1, image, used);
            *used &= !(1 << c);
        }
        image[i] = usize::MAX;
        total
    }

    /// Number of edges with both ends in `mask`.
    pub fn edges_within(&self, mask: u32) -> usize {
        let mut total = 0;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            total += (self.rows[v] & mask).count_ones() as usize;
        }
        total / 2
    }

    /// Strict balancedness: every proper induced subgraph with an edge is
    /// strictly sparser than `H` in edges per vertex.
    pub fn is_strictly_balanced(&self) -> Result<bool> {
        if self.edges.is_empty() {
            return Err(Error::invalid("no edges"));
        }
        if !self.is_connected() {
            return Err(Error::precondition("strict balance requires a connected pattern"));
        }
        let v = self.vertex_count();
        if v > 24 {
            return Err(Error::PatternTooLarge {
                what: "vertex count for subset scan",
                actual: v,
                limit: 24,
            });
        }
        let e = self.edge_count();
        let full = self.full_mask();
        for mask in 1..full {
            let size = mask.count_ones() as usize;
            if size < 2 {
                continue;
            }
            let inner = self.edges_within(mask);
            // inner/size < e/v
            if inner >= 1 && inner * v >= e * size {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Subgraph induced by `s`, relabelled `0..|s|` in increasing order; the
    /// returned mapping sends new labels to old ones.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(PatternGraph, Vec<usize>)> {
        let map: Vec<usize> = s.iter().collect();
        if let Some(&v) = map.last() {
            if v >= self.vertex_count() {
                return Err(Error::invalid(format!("vertex {v} out of range")));
            }
        }
        if map.is_empty() {
            return Err(Error::invalid("induced subgraph on an empty vertex set"));
        }
        let mut edges = Vec::new();
        for (i, &a) in map.iter().enumerate() {
            for (j, &b) in map.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    edges.push((i, j));
                }
            }
        }
        Ok((PatternGraph::new(map.len(), &edges)?, map))
    }

    /// Subgraph on the same vertex set keeping the edges selected by `mask`
    /// (bit `i` refers to `edges()[i]`).
    pub fn edge_subgraph(&self, mask: u64) -> PatternGraph {
        let mut rows = vec![0u32; self.vertex_count()];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            if mask >> i & 1 == 1 {
                rows[u] |= 1 << v;
                rows[v] |= 1 << u;
            }
        }
        Self::from_rows(rows)
    }

    /// Removes isolated vertices, returning the relabelled graph and mapping.
    pub fn without_isolated(&self) -> (PatternGraph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.vertex_count())
            .filter(|&v| self.degrees[v] > 0)
            .collect();
        if keep.is_empty() {
            return (self.clone(), (0..self.vertex_count()).collect());
        }
        let set = VertexSet(keep);
        self.induced_subgraph(&set).expect("valid subset")
    }

    pub fn to_host(&self) -> HostGraph {
        HostGraph::from_edges(self.vertex_count(), self.edges.iter().copied())
            .expect("pattern edges are valid host edges")
    }
}

impl fmt::Display for PatternGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v={} E=[", self.vertex_count())?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{u}-{v}")?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitRows {
    words: usize,
    data: Vec<u64>,
}

impl BitRows {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitRows {
            words,
            data: vec![0; words * n],
        }
    }

    #[inline]
    fn get(&self, u: usize, v: usize) -> bool {
        self.data[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize, on: bool) {
        let w = &mut self.data[u * self.words + v / 64];
        if on {
            *w |= 1 << (v % 64);
        } else {
            *w &= !(1 << (v % 64));
        }
    }
}

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HostGraph {
    adj: Vec<Vec<u32>>,
    bits: Option<BitRows>,
    edge_count: usize,
}

impl HostGraph {
    pub fn empty(n: usize) -> Self {
        HostGraph {
            adj: vec![Vec::new(); n],
            bits: (n <= BITSET_LIMIT).then(|| BitRows::new(n)),
            edge_count: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        Self::from_edges(n, edges).expect("valid")
    }

    /// Builds a graph; repeated edges are merged, self-loops rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n > u32::MAX as usize {
            return Err(Error::invalid("vertex count exceeds u32"));
        }
        let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::invalid(format!(
                    "edge ({u},{v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::invalid(format!("self-loop at {u}")));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        let mut edge_count = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        let mut g = HostGraph {
            adj,
            bits: None,
            edge_count: edge_count / 2,
        };
        g.rebuild_bits();
        Ok(g)
    }

    fn rebuild_bits(&mut self) {
        let n = self.adj.len();
        self.bits = (n <= BITSET_LIMIT).then(|| {
            let mut b = BitRows::new(n);
            for (u, list) in self.adj.iter().enumerate() {
                for &v in list {
                    b.set(u, v as usize, true);
                }
            }
            b
        });
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Sorted neighbour list.
    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        match &self.bits {
            Some(b) => b.get(u, v),
            None => self.adj[u].binary_search(&(v as u32)).is_ok(),
        }
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let start = list.partition_point(|&w| (w as usize) <= u);
            list[start..].iter().map(move |&w| (u, w as usize))
        })
    }

    pub(crate) fn remove_edge_mut(&mut self, u: usize, v: usize) -> bool {
        let Ok(i) = self.adj[u].binary_search(&(v as u32)) else {
            return false;
        };
        self.adj[u].remove(i);
        let j = self.adj[v].binary_search(&(u as u32)).expect("symmetric");
        self.adj[v].remove(j);
        if let Some(b) = self.bits.as_mut() {
            b.set(u, v, false);
            b.set(v, u, false);
        }
        self.edge_count -= 1;
        true
    }

    pub(crate) fn add_edge_mut(&mut self, u: usize, v: usize) -> bool {
        let Err(i) = self.adj[u].binary_search(&(v as u32)) else {
            return false;
        };
        self.adj[u].insert(i, v as u32);
        let j = self.adj[v].binary_search(&(u as u32)).unwrap_err();
        self.adj[v].insert(j, u as u32);
        if let Some(b) = self.bits.as_mut() {
            b.set(u, v, true);
            b.set(v, u, true);
        }
        self.edge_count += 1;
        true
    }

    /// Returns a copy with edge `(u, v)` added.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<HostGraph> {
        if u >= self.vertex_count() || v >= self.vertex_count() || u == v {
            return Err(Error::invalid(format!("invalid edge ({u},{v})")));
        }
        let mut g = self.clone();
        g.add_edge_mut(u, v);
        Ok(g)
    }

    /// Same vertex set, keeping the edges accepted by `keep`.
    pub fn filter_edges(&self, mut keep: impl FnMut(usize, usize) -> bool) -> HostGraph {
        let kept: Vec<_> = self.edges().filter(|&(u, v)| keep(u, v)).collect();
        HostGraph::from_edges(self.vertex_count(), kept).expect("subset of valid edges")
    }

    /// Subgraph induced by `s`, relabelled `0..|s|`; returns the mapping from
    /// new to old labels.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(HostGraph, Vec<usize>)> {
        let map: Vec<usize> = s.iter().collect();
        if let Some(&v) = map.last() {
            if v >= self.vertex_count() {
                return Err(Error::invalid(format!("vertex {v} out of range")));
            }
        }
        let mut new_label = vec![usize::MAX; self.vertex_count()];
        for (i, &v) in map.iter().enumerate() {
            new_label[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in map.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = new_label[w as usize];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        Ok((HostGraph::from_edges(map.len(), edges)?, map))
    }

    /// Graph on the same vertices keeping exactly the edges between `u` and
    /// `v`, with `e(G[U, V])`.
    pub fn cross_subgraph(&self, u: &VertexSet, v: &VertexSet) -> Result<(HostGraph, usize)> {
        let n = self.vertex_count();
        for set in [u, v] {
            if let Some(&x) = set.as_slice().last() {
                if x >= n {
                    return Err(Error::invalid(format!("vertex {x} out of range")));
                }
            }
        }
        if !u.is_disjoint(v) {
            return Err(Error::invalid("cross subgraph needs disjoint vertex sets"));
        }
        let in_u = u.indicator(n);
        let in_v = v.indicator(n);
        let g = self.filter_edges(|a, b| (in_u[a] && in_v[b]) || (in_v[a] && in_u[b]));
        let e = g.edge_count();
        Ok((g, e))
    }

    /// Edges with both endpoints in `s`.
    pub fn edges_within(&self, s: &VertexSet) -> usize {
        let member = s.indicator(self.vertex_count());
        s.iter()
            .map(|v| {
                self.adj[v]
                    .iter()
                    .filter(|&&w| member[w as usize] && (w as usize) > v)
                    .count()
            })
            .sum()
    }

    pub fn is_bipartite(&self) -> bool {
        let n = self.vertex_count();
        let mut color = vec![u8::MAX; n];
        for s in 0..n {
            if color[s] != u8::MAX || self.adj[s].is_empty() {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &w in &self.adj[x] {
                    let w = w as usize;
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[x];
                        queue.push_back(w);
                    } else if color[w] == color[x] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_subgraph_of(&self, other: &HostGraph) -> bool {
        self.vertex_count() == other.vertex_count()
            && self.edges().all(|(u, v)| other.has_edge(u, v))
    }
}

impl fmt::Display for HostGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {}", self.vertex_count())?;
        for (u, v) in self.edges() {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_edges() -> PatternGraph {
        PatternGraph::new(4, &[(0, 1), (2, 3)]).unwrap()
    }

    #[test]
    fn max_degree_examples() {
        assert_eq!(PatternGraph::star(3).unwrap().max_degree().unwrap(), 3);
        assert_eq!(PatternGraph::path(4).unwrap().max_degree().unwrap(), 2);
        assert_eq!(PatternGraph::cycle(5).unwrap().max_degree().unwrap(), 2);
        let lone = PatternGraph::new(1, &[]).unwrap();
        assert_eq!(lone.max_degree(), Err(Error::invalid("no edges")));
    }

    #[test]
    fn regularity() {
        assert!(PatternGraph::cycle(4).unwrap().is_regular());
        assert!(!PatternGraph::star(2).unwrap().is_regular());
        assert!(PatternGraph::clique(4).unwrap().is_regular());
    }

    #[test]
    fn connectivity() {
        assert!(PatternGraph::path(4).unwrap().is_connected());
        assert!(!two_edges().is_connected());
        assert!(PatternGraph::new(1, &[]).unwrap().is_connected());
    }

    #[test]
    fn bipartite_parts() {
        let (a, b) = PatternGraph::cycle(4).unwrap().bipartite_parts().unwrap();
        assert_eq!(a.as_slice(), &[0, 2]);
        assert_eq!(b.as_slice(), &[1, 3]);
        assert!(PatternGraph::clique(3).unwrap().bipartite_parts().is_none());
        let (a, b) = PatternGraph::star(3).unwrap().bipartite_parts().unwrap();
        assert_eq!(a.as_slice(), &[0]);
        assert_eq!(b.as_slice(), &[1, 2, 3]);
    }

    #[test]
    fn automorphisms() {
        assert_eq!(PatternGraph::clique(3).unwrap().automorphism_count().unwrap(), 6);
        assert_eq!(PatternGraph::star(3).unwrap().automorphism_count().unwrap(), 6);
        assert_eq!(PatternGraph::path(4).unwrap().automorphism_count().unwrap(), 2);
        for m in 1..=5 {
            let fact: u64 = (1..=m as u64).product();
            assert_eq!(PatternGraph::clique(m).unwrap().automorphism_count().unwrap(), fact);
        }
        assert!(matches!(
            PatternGraph::path(13).unwrap().automorphism_count(),
            Err(Error::PatternTooLarge { .. })
        ));
    }

    #[test]
    fn strict_balance() {
        assert!(PatternGraph::clique(3).unwrap().is_strictly_balanced().unwrap());
        assert!(PatternGraph::cycle(4).unwrap().is_strictly_balanced().unwrap());
        let paw = PatternGraph::new(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert!(!paw.is_strictly_balanced().unwrap());
        assert!(two_edges().is_strictly_balanced().is_err());
    }

    #[test]
    fn induced_pattern() {
        let k4 = PatternGraph::clique(4).unwrap();
        let (g, map) = k4.induced_subgraph(&VertexSet::new(vec![0, 2, 3], 4).unwrap()).unwrap();
        assert_eq!(g, PatternGraph::clique(3).unwrap());
        assert_eq!(map, vec![0, 2, 3]);
        let p4 = PatternGraph::path(4).unwrap();
        let (g, _) = p4.induced_subgraph(&VertexSet::new(vec![0, 3], 4).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 0);
        let c5 = PatternGraph::cycle(5).unwrap();
        let (g, _) = c5.induced_subgraph(&VertexSet::new(vec![1, 2, 3, 4], 5).unwrap()).unwrap();
        assert_eq!(g, PatternGraph::path(4).unwrap());
        assert!(VertexSet::new(vec![7], 5).is_err());
    }

    #[test]
    fn cross_edges() {
        let k4 = HostGraph::complete(4);
        let set = |v: Vec<usize>| VertexSet::new(v, 4).unwrap();
        let (g, e) = k4.cross_subgraph(&set(vec![0]), &set(vec![1, 2, 3])).unwrap();
        assert_eq!(e, 3);
        assert_eq!(g.degree(0), 3);
        let (_, e) = k4.cross_subgraph(&set(vec![0, 1]), &set(vec![2, 3])).unwrap();
        assert_eq!(e, 4);
        let (_, e) = HostGraph::empty(4).cross_subgraph(&set(vec![0]), &set(vec![1])).unwrap();
        assert_eq!(e, 0);
        assert!(k4.cross_subgraph(&set(vec![0, 1]), &set(vec![1, 2])).is_err());
    }

    #[test]
    fn large_host_uses_lists() {
        let n = BITSET_LIMIT + 5;
        let g = HostGraph::from_edges(n, [(0, n - 1), (3, 4)]).unwrap();
        assert!(g.has_edge(n - 1, 0));
        assert!(!g.has_edge(0, 3));
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn edge_mutation_keeps_degrees() {
        let mut g = HostGraph::complete(5);
        assert!(g.remove_edge_mut(1, 3));
        assert!(!g.remove_edge_mut(1, 3));
        assert_eq!(g.edge_count(), 9);
        assert!(!g.has_edge(3, 1));
        assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
        assert!(g.add_edge_mut(3, 1));
        assert_eq!(g, HostGraph::complete(5));
    }
}
