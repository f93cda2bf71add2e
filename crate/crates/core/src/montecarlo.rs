//! Random graph sampling, exact small-n tails, direct and importance-sampled
//! tail estimates, conditioned-structure experiments and the Poisson fit.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::counting::{count_labelled_with, star_count_u128, CountBudget, CopyCount};
use crate::error::{Error, Result};
use crate::graph::{HostGraph, PatternGraph};
use crate::meanfield::{mean_and_sd, pairwise_sum, EdgeProbabilityMatrix};
use crate::rng::{bernoulli_pairs, stream, StreamRng};
use crate::structures::StructureEvent;

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!("p = {p} is not a probability")));
    }
    Ok(())
}

/// `G(n, p)` from stream 0 of `seed`.
pub fn sample_gnp(n: usize, p: f64, seed: u64) -> Result<HostGraph> {
    check_p(p)?;
    Ok(sample_gnp_with(n, p, &mut stream(seed, 0)))
}

pub fn sample_gnp_with(n: usize, p: f64, rng: &mut impl Rng) -> HostGraph {
    let mut edges = Vec::new();
    bernoulli_pairs(n, p, rng, |i, j| edges.push((i, j)));
    HostGraph::from_edges(n, edges).expect("valid pairs")
}

/// `G(n, ξ)` from stream 0 of `seed`.
pub fn sample_inhom(xi: &EdgeProbabilityMatrix, seed: u64) -> HostGraph {
    sample_inhom_with(xi, &mut stream(seed, 0))
}

pub fn sample_inhom_with(xi: &EdgeProbabilityMatrix, rng: &mut impl Rng) -> HostGraph {
    let n = xi.n();
    let mut edges = Vec::new();
    match *xi {
        EdgeProbabilityMatrix::Dense { .. } => {
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen::<f64>() < xi.entry(i, j) {
                        edges.push((i, j));
                    }
                }
            }
        }
        EdgeProbabilityMatrix::Planted { background, hubs, .. } => {
            // Background on the plain block, then the special rows.
            let offset = hubs + 1;
            bernoulli_pairs(n - offset, background, rng, |i, j| edges.push((i + offset, j + offset)));
            for i in 0..offset {
                for j in i + 1..n {
                    let x = xi.entry(i, j);
                    if x >= 1.0 || (x > 0.0 && rng.gen::<f64>() < x) {
                        edges.push((i, j));
                    }
                }
            }
        }
    }
    HostGraph::from_edges(n, edges).expect("valid pairs")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TailMethod {
    Exact,
    Direct,
    Importance,
}

#[derive(Clone, Debug, Serialize)]
pub struct TailEstimate {
    pub point: f64,
    pub stderr: f64,
    pub method: TailMethod,
    pub samples: usize,
    pub seed: u64,
    pub threshold: CopyCount,
    /// Effective sample size of the weighted hits (importance only).
    pub effective_samples: Option<f64>,
}

/// `⌈(1+δ)n^{v}p^{e}⌉`.
pub fn tail_threshold(h: &PatternGraph, n: usize, p: f64, delta: f64) -> Result<u128> {
    check_p(p)?;
    if !(delta >= 0.0) {
        return Err(Error::invalid("delta must be nonnegative"));
    }
    let t = (1.0 + delta) * (n as f64).powi(h.vertex_count() as i32) * p.powi(h.edge_count() as i32);
    // Guard against 6.000000000001 from rounding of an integral product.
    let r = t.round();
    Ok(if (t - r).abs() <= 1e-9 * r.max(1.0) { r as u128 } else { t.ceil() as u128 })
}

/// Labelled copies, through the star identity where possible.
fn copies(h: &PatternGraph, g: &HostGraph) -> Result<u128> {
    if let Some(r) = h.star_arms() {
        return Ok(star_count_u128(r, g));
    }
    Ok(count_labelled_with(h, g, CountBudget::default())?
        .to_u128()
        .unwrap_or(u128::MAX))
}

pub const MAX_EXACT_N: usize = 6;

/// `P(N(H, G(n,p)) >= threshold)` by summing over all graphs on `n <= 6`
/// vertices.
pub fn exact_tail(h: &PatternGraph, n: usize, p: f64, threshold: u128) -> Result<TailEstimate> {
    check_p(p)?;
    if n > MAX_EXACT_N {
        return Err(Error::PatternTooLarge {
            what: "vertex count for exact tail",
            actual: n,
            limit: MAX_EXACT_N,
        });
    }
    let exact = |point: f64| TailEstimate {
        point,
        stderr: 0.0,
        method: TailMethod::Exact,
        samples: 0,
        seed: 0,
        threshold: CopyCount::from(threshold),
        effective_samples: None,
    };
    if threshold == 0 {
        return Ok(exact(1.0));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let m = pairs.len();
    let terms: Vec<f64> = (0u32..1 << m)
        .into_par_iter()
        .map(|mask| -> Result<f64> {
            let g = HostGraph::from_edges(n, (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]))?;
            if copies(h, &g)? < threshold {
                return Ok(0.0);
            }
            let e = mask.count_ones() as i32;
            Ok(p.powi(e) * (1.0 - p).powi(m as i32 - e))
        })
        .collect::<Result<_>>()?;
    Ok(exact(pairwise_sum(&terms).min(1.0)))
}

/// Empirical frequency of `N >= threshold` over independent samples.
pub fn estimate_tail_direct(
    h: &PatternGraph,
    n: usize,
    p: f64,
    threshold: u128,
    samples: usize,
    seed: u64,
) -> Result<TailEstimate> {
    check_p(p)?;
    if samples == 0 {
        return Err(Error::invalid("need at least one sample"));
    }
    let hits: u64 = (0..samples as u64)
        .into_par_iter()
        .map(|i| -> Result<u64> {
            let g = sample_gnp_with(n, p, &mut stream(seed, i));
            Ok(u64::from(copies(h, &g)? >= threshold))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    let point = hits as f64 / samples as f64;
    Ok(TailEstimate {
        point,
        stderr: (point * (1.0 - point) / samples as f64).sqrt(),
        method: TailMethod::Direct,
        samples,
        seed,
        threshold: CopyCount::from(threshold),
        effective_samples: None,
    })
}

/// Proposal family for importance sampling. Planted pairs get probability
/// `q`, the rest keep `p`; each sample first picks one of the `n` cyclic
/// shifts of the planted vertex set uniformly.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Planting {
    /// No planting: `q = p` everywhere.
    Background,
    /// All pairs touching `k` vertices.
    Hub { k: usize, q: f64 },
    /// All pairs inside `m` vertices.
    Clique { m: usize, q: f64 },
    /// All pairs touching one vertex.
    HighDegree { q: f64 },
    /// Every pair gets probability `q`.
    Tilted { q: f64 },
    /// With probability `1 - defensive`, one uniform vertex gets a degree
    /// drawn from `Bin(n-1, p)` conditioned on being at least `min_degree`
    /// and a uniform neighbourhood of that size; otherwise plain `G(n,p)`.
    Degree { min_degree: usize, defensive: f64 },
}

impl Planting {
    fn parts(self) -> (usize, bool, f64) {
        match self {
            Planting::Background => (0, true, 0.0),
            Planting::Hub { k, q } => (k, true, q),
            Planting::Clique { m, q } => (m, false, q),
            Planting::HighDegree { q } => (1, true, q),
            Planting::Degree { .. } | Planting::Tilted { .. } => unreachable!("handled separately"),
        }
    }
}

enum Proposal {
    Rows(RowProposal),
    Degree(DegreeProposal),
}

impl Proposal {
    fn new(planting: Planting, n: usize, p: f64) -> Result<Option<Proposal>> {
        match planting {
            Planting::Degree { min_degree, defensive } => {
                Ok(Some(Proposal::Degree(DegreeProposal::new(n, p, min_degree, defensive)?)))
            }
            Planting::Tilted { q } => Ok(RowProposal::new(Planting::Hub { k: n, q }, n, p)?.map(Proposal::Rows)),
            other => Ok(RowProposal::new(other, n, p)?.map(Proposal::Rows)),
        }
    }

    fn sample(&self, rng: &mut StreamRng) -> HostGraph {
        match self {
            Proposal::Rows(r) => {
                let shift = rng.gen_range(0..r.n);
                r.sample(shift, rng)
            }
            Proposal::Degree(d) => d.sample(rng),
        }
    }

    fn weight(&self, g: &HostGraph) -> f64 {
        match self {
            Proposal::Rows(r) => r.weight(g),
            Proposal::Degree(d) => d.weight(g),
        }
    }
}

struct DegreeProposal {
    n: usize,
    p: f64,
    min_degree: usize,
    defensive: f64,
    /// Cumulative conditional law of the planted degree on `min_degree..n`.
    cdf: Vec<f64>,
    /// `ln P(Bin(n-1, p) >= min_degree)`.
    log_tail: f64,
}

impl DegreeProposal {
    fn new(n: usize, p: f64, min_degree: usize, defensive: f64) -> Result<DegreeProposal> {
        if n < 2 || min_degree == 0 || min_degree > n - 1 {
            return Err(Error::invalid(format!("min_degree must lie in 1..={}", n.saturating_sub(1))));
        }
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::invalid("degree planting needs 0 < p < 1"));
        }
        if !(defensive > 0.0 && defensive <= 1.0) {
            return Err(Error::invalid("defensive fraction must lie in (0, 1]"));
        }
        let trials = n - 1;
        let mut log_pmf = Vec::with_capacity(trials + 1);
        let mut cur = trials as f64 * (-p).ln_1p();
        let odds = (p / (1.0 - p)).ln();
        for k in 0..=trials {
            log_pmf.push(cur);
            cur += ((trials - k) as f64 / (k + 1) as f64).ln() + odds;
        }
        let upper = &log_pmf[min_degree..];
        let top = upper.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let sum: f64 = upper.iter().map(|l| (l - top).exp()).sum();
        let log_tail = top + sum.ln();
        let mut acc = 0.0;
        let cdf = upper
            .iter()
            .map(|l| {
                acc += (l - log_tail).exp();
                acc
            })
            .collect();
        Ok(DegreeProposal {
            n,
            p,
            min_degree,
            defensive,
            cdf,
            log_tail,
        })
    }

    fn sample(&self, rng: &mut StreamRng) -> HostGraph {
        if rng.gen::<f64>() < self.defensive {
            return sample_gnp_with(self.n, self.p, rng);
        }
        let centre = rng.gen_range(0..self.n);
        let u = rng.gen::<f64>() * self.cdf.last().copied().unwrap_or(1.0);
        let pos = self.cdf.partition_point(|&c| c < u).min(self.cdf.len() - 1);
        let degree = self.min_degree + pos;
        let mut edges = Vec::new();
        bernoulli_pairs(self.n, self.p, rng, |i, j| {
            if i != centre && j != centre {
                edges.push((i, j));
            }
        });
        for idx in rand::seq::index::sample(rng, self.n - 1, degree) {
            let b = if idx < centre { idx } else { idx + 1 };
            edges.push((centre.min(b), centre.max(b)));
        }
        HostGraph::from_edges(self.n, edges).expect("valid pairs")
    }

    /// `dP/dQ`; each planted component has density ratio
    /// `1{deg(c) >= d0} / P(Bin >= d0)` at its centre `c`.
    fn weight(&self, g: &HostGraph) -> f64 {
        let heavy = (0..self.n).filter(|&v| g.degree(v) >= self.min_degree).count();
        let planted = if heavy == 0 {
            0.0
        } else {
            ((heavy as f64 / self.n as f64).ln() - self.log_tail).exp()
        };
        1.0 / (self.defensive + (1.0 - self.defensive) * planted)
    }
}

struct RowProposal {
    n: usize,
    size: usize,
    hub: bool,
    p: f64,
    q: f64,
    log_present: f64,
    log_absent: f64,
}

impl RowProposal {
    fn new(planting: Planting, n: usize, p: f64) -> Result<Option<RowProposal>> {
        let (size, hub, q) = planting.parts();
        if size == 0 {
            return Ok(None);
        }
        if size > n {
            return Err(Error::invalid(format!("planting of {size} vertices does not fit in {n}")));
        }
        if !(q >= p) || q > 1.0 {
            return Err(Error::invalid(format!("planted probability q = {q} must lie in [p, 1]")));
        }
        if p > 0.0 && p < 1.0 && q >= 1.0 {
            return Err(Error::invalid("q = 1 leaves graphs without the planted pairs uncovered"));
        }
        if p <= 0.0 && q > 0.0 {
            return Err(Error::invalid("q > 0 where p = 0 has no density ratio"));
        }
        let (log_present, log_absent) = if q == p {
            (0.0, 0.0)
        } else {
            ((q / p).ln(), ((1.0 - q) / (1.0 - p)).ln())
        };
        Ok(Some(RowProposal {
            n,
            size,
            hub,
            p,
            q,
            log_present,
            log_absent,
        }))
    }

    fn in_shift(&self, shift: usize, v: usize) -> bool {
        (v + self.n - shift) % self.n < self.size
    }

    fn planted(&self, shift: usize, u: usize, v: usize) -> bool {
        let (a, b) = (self.in_shift(shift, u), self.in_shift(shift, v));
        if self.hub {
            a || b
        } else {
            a && b
        }
    }

    fn sample(&self, shift: usize, rng: &mut impl Rng) -> HostGraph {
        let mut edges = Vec::new();
        bernoulli_pairs(self.n, self.p, rng, |i, j| {
            if !self.planted(shift, i, j) {
                edges.push((i, j));
            }
        });
        let members: Vec<usize> = (0..self.size).map(|i| (i + shift) % self.n).collect();
        for &a in &members {
            for b in 0..self.n {
                if b == a || (!self.hub && !self.in_shift(shift, b)) {
                    continue;
                }
                // Each planted pair once: skip when b also plants and b < a.
                if self.in_shift(shift, b) && b < a {
                    continue;
                }
                if rng.gen::<f64>() < self.q {
                    edges.push((a.min(b), a.max(b)));
                }
            }
        }
        HostGraph::from_edges(self.n, edges).expect("valid pairs")
    }

    /// `log(dQ_shift/dP)` at `g`.
    fn log_ratio(&self, shift: usize, g: &HostGraph) -> f64 {
        let members: Vec<usize> = (0..self.size).map(|i| (i + shift) % self.n).collect();
        let mut present = 0usize;
        for &a in &members {
            present += g
                .neighbors(a)
                .iter()
                .filter(|&&b| {
                    let b = b as usize;
                    let other = self.in_shift(shift, b);
                    (self.hub || other) && !(other && b < a)
                })
                .count();
        }
        let total = if self.hub {
            self.size * (self.n - self.size) + self.size * (self.size - 1) / 2
        } else {
            self.size * (self.size - 1) / 2
        };
        present as f64 * self.log_present + (total - present) as f64 * self.log_absent
    }

    /// `dP/dQ` for the uniform mixture over shifts.
    fn weight(&self, g: &HostGraph) -> f64 {
        let shifts = if self.size == self.n { 1 } else { self.n };
        let logs: Vec<f64> = (0..shifts).map(|s| self.log_ratio(s, g)).collect();
        let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let mean = logs.iter().map(|l| (l - top).exp()).sum::<f64>() / shifts as f64;
        (-top - mean.ln()).exp()
    }
}

/// Weighted samples from the planted proposal: `(weight, graph)` per index.
fn weighted_sample(prop: Option<&Proposal>, n: usize, p: f64, seed: u64, i: u64) -> (f64, HostGraph) {
    let mut rng = stream(seed, i);
    match prop {
        None => (1.0, sample_gnp_with(n, p, &mut rng)),
        Some(prop) => {
            let g = prop.sample(&mut rng);
            (prop.weight(&g), g)
        }
    }
}

/// Unbiased importance-sampling estimate of `P(N >= threshold)`.
pub fn estimate_tail_importance(
    h: &PatternGraph,
    n: usize,
    p: f64,
    threshold: u128,
    planting: Planting,
    samples: usize,
    seed: u64,
) -> Result<TailEstimate> {
    check_p(p)?;
    if samples < 2 {
        return Err(Error::invalid("need at least two samples"));
    }
    let prop = Proposal::new(planting, n, p)?;
    let values: Vec<f64> = (0..samples as u64)
        .into_par_iter()
        .map(|i| -> Result<f64> {
            let (w, g) = weighted_sample(prop.as_ref(), n, p, seed, i);
            Ok(if copies(h, &g)? >= threshold { w } else { 0.0 })
        })
        .collect::<Result<_>>()?;
    let (point, sd) = mean_and_sd(&values);
    let sq: Vec<f64> = values.iter().map(|w| w * w).collect();
    let total = pairwise_sum(&values);
    let ess = if total > 0.0 { total * total / pairwise_sum(&sq) } else { 0.0 };
    Ok(TailEstimate {
        point,
        stderr: sd / (samples as f64).sqrt(),
        method: TailMethod::Importance,
        samples,
        seed,
        threshold: CopyCount::from(threshold),
        effective_samples: Some(ess),
    })
}

/// Minimum acceptance probability for rejection sampling.
pub const MIN_ACCEPTANCE: f64 = 1e-5;

#[derive(Clone, Debug, Serialize)]
pub struct ConditionedFrequency {
    pub freq_conditioned: f64,
    pub freq_unconditioned: f64,
    pub accepted: usize,
    pub samples: usize,
    pub threshold: CopyCount,
    /// Effective number of accepted samples (importance variant only).
    pub effective_accepted: Option<f64>,
}

fn pilot_size(samples: usize) -> usize {
    samples.clamp(1000, 200_000)
}

/// Rejection-samples `G(n,p)` on `N >= threshold` and compares the event's
/// frequency there with its frequency among all samples.
pub fn conditioned_structure_frequency(
    h: &PatternGraph,
    n: usize,
    p: f64,
    threshold: u128,
    event: &StructureEvent,
    samples: usize,
    seed: u64,
) -> Result<ConditionedFrequency> {
    check_p(p)?;
    if samples == 0 {
        return Err(Error::invalid("need at least one sample"));
    }
    // Pilot on a separate stream range.
    let pilot = pilot_size(samples);
    let pilot_seed = seed ^ 0x9e37_79b9_7f4a_7c15;
    let pilot_hits = estimate_tail_direct(h, n, p, threshold, pilot, pilot_seed)?.point;
    if pilot_hits < MIN_ACCEPTANCE {
        return Err(Error::TooRare {
            rate: pilot_hits,
            min: MIN_ACCEPTANCE,
        });
    }
    let rows: Vec<(bool, bool)> = (0..samples as u64)
        .into_par_iter()
        .map(|i| -> Result<(bool, bool)> {
            let g = sample_gnp_with(n, p, &mut stream(seed, i));
            Ok((copies(h, &g)? >= threshold, event.holds(&g)))
        })
        .collect::<Result<_>>()?;
    let accepted = rows.iter().filter(|r| r.0).count();
    let both = rows.iter().filter(|r| r.0 && r.1).count();
    let plain = rows.iter().filter(|r| r.1).count();
    Ok(ConditionedFrequency {
        freq_conditioned: if accepted > 0 { both as f64 / accepted as f64 } else { f64::NAN },
        freq_unconditioned: plain as f64 / samples as f64,
        accepted,
        samples,
        threshold: CopyCount::from(threshold),
        effective_accepted: None,
    })
}

/// Self-normalised importance-sampling version for rare conditioning
/// events: the conditioned frequency is `Σ w·1{UT}·1{D} / Σ w·1{UT}` under
/// the planted proposal; the unconditioned frequency uses plain samples.
pub fn conditioned_structure_frequency_importance(
    h: &PatternGraph,
    n: usize,
    p: f64,
    threshold: u128,
    event: &StructureEvent,
    planting: Planting,
    samples: usize,
    seed: u64,
) -> Result<ConditionedFrequency> {
    check_p(p)?;
    if samples == 0 {
        return Err(Error::invalid("need at least one sample"));
    }
    let prop = Proposal::new(planting, n, p)?;
    let rows: Vec<(f64, bool, bool)> = (0..samples as u64)
        .into_par_iter()
        .map(|i| -> Result<(f64, bool, bool)> {
            let (w, g) = weighted_sample(prop.as_ref(), n, p, seed, i);
            let hit = copies(h, &g)? >= threshold;
            Ok((w, hit, hit && event.holds(&g)))
        })
        .collect::<Result<_>>()?;
    let hit_w: Vec<f64> = rows.iter().map(|r| if r.1 { r.0 } else { 0.0 }).collect();
    let both_w: Vec<f64> = rows.iter().map(|r| if r.2 { r.0 } else { 0.0 }).collect();
    let sq: Vec<f64> = hit_w.iter().map(|w| w * w).collect();
    let total = pairwise_sum(&hit_w);
    let plain_seed = seed ^ 0x5851_f42d_4c95_7f2d;
    let plain: usize = (0..samples as u64)
        .into_par_iter()
        .map(|i| usize::from(event.holds(&sample_gnp_with(n, p, &mut stream(plain_seed, i)))))
        .sum();
    Ok(ConditionedFrequency {
        freq_conditioned: if total > 0.0 { pairwise_sum(&both_w) / total } else { f64::NAN },
        freq_unconditioned: plain as f64 / samples as f64,
        accepted: rows.iter().filter(|r| r.1).count(),
        samples,
        threshold: CopyCount::from(threshold),
        effective_accepted: Some(if total > 0.0 { total * total / pairwise_sum(&sq) } else { 0.0 }),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PoissonFit {
    pub tv_distance: f64,
    pub mean: f64,
    /// `n^{v}p^{e}/Aut(H)`.
    pub mu: f64,
    pub samples: usize,
    /// Empirical frequency of each count `0..=max`.
    pub histogram: Vec<f64>,
}

pub const POISSON_MU_RANGE: (f64, f64) = (0.5, 20.0);

/// Total variation distance between the empirical law of the unlabelled
/// count and Poisson with the empirical mean, including the Poisson mass
/// beyond the largest observed count.
pub fn poisson_fit_experiment(h: &PatternGraph, n: usize, p: f64, samples: usize, seed: u64) -> Result<PoissonFit> {
    check_p(p)?;
    if samples == 0 {
        return Err(Error::invalid("need at least one sample"));
    }
    if p == 0.0 {
        return Ok(PoissonFit {
            tv_distance: 0.0,
            mean: 0.0,
            mu: 0.0,
            samples,
            histogram: vec![1.0],
        });
    }
    if !h.is_connected() || !h.is_strictly_balanced()? {
        return Err(Error::precondition("pattern must be connected and strictly balanced"));
    }
    let aut = h.automorphism_count()?;
    let mu = ((h.vertex_count() as f64) * (n as f64).ln() + h.edge_count() as f64 * p.ln()).exp() / aut as f64;
    if !(POISSON_MU_RANGE.0..=POISSON_MU_RANGE.1).contains(&mu) {
        return Err(Error::precondition(format!(
            "mean {mu:.4} outside [{}, {}]",
            POISSON_MU_RANGE.0, POISSON_MU_RANGE.1
        )));
    }
    let counts: Vec<u64> = (0..samples as u64)
        .into_par_iter()
        .map(|i| -> Result<u64> {
            let g = sample_gnp_with(n, p, &mut stream(seed, i));
            Ok((copies(h, &g)? / aut as u128) as u64)
        })
        .collect::<Result<_>>()?;
    let max = counts.iter().copied().max().unwrap_or(0) as usize;
    let mut hist = vec![0u64; max + 1];
    for &c in &counts {
        hist[c as usize] += 1;
    }
    let total: u64 = counts.iter().sum();
    let mean = total as f64 / samples as f64;
    let freqs: Vec<f64> = hist.iter().map(|&c| c as f64 / samples as f64).collect();
    let mut pmf = (-mean).exp();
    let mut covered = 0.0;
    let mut diff = 0.0;
    for (k, &f) in freqs.iter().enumerate() {
        if k > 0 {
            pmf *= mean / k as f64;
        }
        covered += pmf;
        diff += (f - pmf).abs();
    }
    diff += (1.0 - covered).max(0.0);
    Ok(PoissonFit {
        tv_distance: 0.5 * diff,
        mean,
        mu,
        samples,
        histogram: freqs,
    })
}
