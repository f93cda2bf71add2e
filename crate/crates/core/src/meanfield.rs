//! Mean-field objects for star counts: Bernoulli relative entropies,
//! inhomogeneous expected counts, planted optimisers and the variational
//! upper bound.

use rayon::prelude::*;
use serde::Serialize;

use crate::counting::star_count_u128;
use crate::error::{Error, Result};
use crate::montecarlo::sample_inhom_with;
use crate::rng::stream;

/// Symmetric edge probabilities with zero diagonal.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EdgeProbabilityMatrix {
    /// Upper triangle in row-major order.
    Dense { n: usize, entries: Vec<f64> },
    /// Vertex 0 has value `boost` towards everyone; vertices `1..=hubs`
    /// have value 1 towards every vertex above `hubs`; all other pairs,
    /// hub pairs included, have `background`.
    Planted {
        n: usize,
        background: f64,
        hubs: usize,
        boost: f64,
    },
}

fn check_unit(x: f64, what: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::invalid(format!("{what} = {x} is not in [0,1]")));
    }
    Ok(())
}

fn tri_index(n: usize, i: usize, j: usize) -> usize {
    // Row i holds pairs (i, i+1..n).
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

impl EdgeProbabilityMatrix {
    pub fn constant(n: usize, value: f64) -> Result<Self> {
        Self::planted(n, value, 0, value)
    }

    pub fn planted(n: usize, background: f64, hubs: usize, boost: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("need at least 2 vertices"));
        }
        check_unit(background, "background")?;
        check_unit(boost, "boosted value")?;
        if hubs + 1 > n {
            return Err(Error::invalid(format!("{hubs} hubs do not fit in {n} vertices")));
        }
        Ok(EdgeProbabilityMatrix::Planted {
            n,
            background,
            hubs,
            boost,
        })
    }

    /// Builds a dense matrix from `f(i, j)` for `i < j`.
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::invalid("need at least 2 vertices"));
        }
        let mut entries = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                let x = f(i, j);
                check_unit(x, "entry")?;
                entries.push(x);
            }
        }
        Ok(EdgeProbabilityMatrix::Dense { n, entries })
    }

    pub fn n(&self) -> usize {
        match *self {
            EdgeProbabilityMatrix::Dense { n, .. } | EdgeProbabilityMatrix::Planted { n, .. } => n,
        }
    }

    /// `ξ_{i,j}`, zero on the diagonal.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return 0.0;
        }
        let (i, j) = (i.min(j), i.max(j));
        match *self {
            EdgeProbabilityMatrix::Dense { n, ref entries } => entries[tri_index(n, i, j)],
            EdgeProbabilityMatrix::Planted {
                background,
                hubs,
                boost,
                ..
            } => {
                if i == 0 {
                    boost
                } else if i <= hubs && j > hubs {
                    1.0
                } else {
                    background
                }
            }
        }
    }

    pub fn to_dense(&self) -> Self {
        let n = self.n();
        EdgeProbabilityMatrix::from_fn(n, |i, j| self.entry(i, j)).expect("entries already validated")
    }
}

/// `I_p(x) = x log(x/p) + (1−x) log((1−x)/(1−p))` with `0 log 0 = 0`.
pub fn bernoulli_relative_entropy(x: f64, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::invalid(format!("p = {p} must lie in (0,1)")));
    }
    check_unit(x, "x")?;
    Ok(entropy_term(x, p))
}

fn entropy_term(x: f64, p: f64) -> f64 {
    let a = if x > 0.0 { x * (x / p).ln() } else { 0.0 };
    let b = if x < 1.0 { (1.0 - x) * ((1.0 - x) / (1.0 - p)).ln() } else { 0.0 };
    (a + b).max(0.0)
}

/// `Σ_{i<j} I_p(ξ_{i,j})`.
pub fn total_cost(xi: &EdgeProbabilityMatrix, p: f64) -> Result<f64> {
    bernoulli_relative_entropy(p, p)?;
    Ok(match *xi {
        EdgeProbabilityMatrix::Dense { ref entries, .. } => entries.iter().map(|&x| entropy_term(x, p)).sum(),
        EdgeProbabilityMatrix::Planted {
            n,
            background,
            hubs,
            boost,
        } => {
            let pairs = |m: usize| (m * m.saturating_sub(1) / 2) as f64;
            let rest = n - hubs - 1;
            (n - 1) as f64 * entropy_term(boost, p)
                + (hubs * rest) as f64 * entropy_term(1.0, p)
                + (pairs(hubs) + pairs(rest)) * entropy_term(background, p)
        }
    })
}

pub const MAX_STAR_ARMS: usize = 8;

/// `e_r` of a multiset given as `(multiplicity, value)` groups.
fn elementary_grouped(groups: &[(usize, f64)], r: usize) -> f64 {
    let mut e = vec![0.0f64; r + 1];
    e[0] = 1.0;
    for &(count, value) in groups {
        if count == 0 {
            continue;
        }
        // Coefficients of (1 + value·x)^count up to x^r.
        let mut factor = vec![0.0f64; r + 1];
        factor[0] = 1.0;
        for j in 1..=r.min(count) {
            factor[j] = factor[j - 1] * (count - j + 1) as f64 / j as f64 * value;
        }
        let mut next = vec![0.0f64; r + 1];
        for (a, &ea) in e.iter().enumerate() {
            if ea == 0.0 {
                continue;
            }
            for b in 0..=(r - a) {
                next[a + b] += ea * factor[b];
            }
        }
        e = next;
    }
    e[r]
}

fn elementary_row(values: impl Iterator<Item = f64>, r: usize) -> f64 {
    let mut e = vec![0.0f64; r + 1];
    e[0] = 1.0;
    for x in values {
        for j in (1..=r).rev() {
            e[j] += x * e[j - 1];
        }
    }
    e[r]
}

fn factorial(r: usize) -> f64 {
    (1..=r).map(|i| i as f64).product()
}

/// `E_ξ[N(K_{1,r}, G)] = Σ_i r!·e_r(ξ_{i,·})`.
pub fn expected_star_count_inhom(xi: &EdgeProbabilityMatrix, r: usize) -> Result<f64> {
    if r == 0 || r > MAX_STAR_ARMS {
        return Err(Error::PatternTooLarge {
            what: "star arms",
            actual: r,
            limit: MAX_STAR_ARMS,
        });
    }
    let sum = match *xi {
        EdgeProbabilityMatrix::Dense { n, .. } => (0..n)
            .into_par_iter()
            .map(|i| elementary_row((0..n).filter(|&j| j != i).map(|j| xi.entry(i, j)), r))
            .collect::<Vec<_>>()
            .into_iter()
            .sum(),
        EdgeProbabilityMatrix::Planted {
            n,
            background,
            hubs,
            boost,
        } => {
            let rest = n - hubs - 1;
            let centre = elementary_grouped(&[(n - 1, boost)], r);
            let hub = elementary_grouped(&[(1, boost), (hubs.saturating_sub(1), background), (rest, 1.0)], r);
            let plain = elementary_grouped(&[(1, boost), (hubs, 1.0), (rest.saturating_sub(1), background)], r);
            centre + hubs as f64 * hub + rest as f64 * plain
        }
    };
    Ok(factorial(r) * sum)
}

/// `n^{r+1} p^r`, the leading order of the star count mean.
pub fn star_scale(n: usize, p: f64, r: usize) -> f64 {
    ((r as f64 + 1.0) * (n as f64).ln() + r as f64 * p.ln()).exp()
}

/// How the boosted row of the planted optimiser is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoostReading {
    /// `p + {t}^{1/r}` with `t = δ(1−ε/2)np^r`, so hubs and boost together
    /// supply `t·n^r` extra stars.
    #[default]
    FractionalCount,
    /// `p + {t^{1/r}}`, the fractional part of the r-th root.
    FractionalRoot,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlantedOptimizer {
    pub matrix: EdgeProbabilityMatrix,
    pub hubs: usize,
    pub boost: f64,
    /// `E_ξ[N] / (n^{r+1} p^r)`.
    pub ratio: f64,
    /// Whether the ratio reaches `1 + δ(1−ε)`.
    pub meets_target: bool,
}

/// The planted matrix with `⌊t⌋` hubs and one boosted row, where
/// `t = δ(1−ε/2)np^r`.
pub fn planted_star_optimizer(
    n: usize,
    p: f64,
    r: usize,
    delta: f64,
    epsilon: f64,
    reading: BoostReading,
) -> Result<PlantedOptimizer> {
    validate(n, p, r, delta)?;
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::invalid("epsilon must lie in (0,1)"));
    }
    let rf = r as f64;
    let t = delta * (1.0 - epsilon / 2.0) * n as f64 * p.powi(r as i32);
    let hubs = (t.floor() as usize).min(n - 2);
    let frac = t - t.floor();
    let extra = match reading {
        BoostReading::FractionalCount => frac.powf(1.0 / rf),
        BoostReading::FractionalRoot => {
            let root = t.powf(1.0 / rf);
            root - root.floor()
        }
    };
    let boost = (p + extra).min(1.0);
    let matrix = EdgeProbabilityMatrix::planted(n, p, hubs, boost)?;
    let ratio = expected_star_count_inhom(&matrix, r)? / star_scale(n, p, r);
    Ok(PlantedOptimizer {
        matrix,
        hubs,
        boost,
        ratio,
        meets_target: ratio >= 1.0 + delta * (1.0 - epsilon),
    })
}

fn validate(n: usize, p: f64, r: usize, delta: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::invalid(format!("p = {p} must lie in (0,1)")));
    }
    if r < 2 || r > MAX_STAR_ARMS {
        return Err(Error::invalid(format!("r = {r} must lie in 2..={MAX_STAR_ARMS}")));
    }
    if n < r + 2 {
        return Err(Error::invalid("n must exceed r + 1"));
    }
    if !(delta >= 0.0) || !delta.is_finite() {
        return Err(Error::invalid("delta must be nonnegative"));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct VariationalBound {
    pub value: f64,
    pub hubs: usize,
    pub boost: f64,
    #[serde(skip)]
    pub witness: EdgeProbabilityMatrix,
}

/// Minimum of `I_p(ξ)` over planted matrices (hub count, boosted row) with
/// `E_ξ[N(K_{1,r})] >= (1+δ)n^{r+1}p^r`. An upper bound on the mean-field
/// value.
pub fn variational_upper_bound(n: usize, p: f64, r: usize, delta: f64) -> Result<VariationalBound> {
    validate(n, p, r, delta)?;
    let target = (1.0 + delta) * star_scale(n, p, r);
    let k_max = ((2.0 * delta * n as f64 * p.powi(r as i32)).ceil() as usize + 2).min(n - 2);
    let mut best: Option<VariationalBound> = None;
    for k in 0..=k_max {
        let count = |boost: f64| -> Result<f64> {
            expected_star_count_inhom(&EdgeProbabilityMatrix::planted(n, p, k, boost)?, r)
        };
        let boost = if count(p)? >= target {
            p
        } else if count(1.0)? < target {
            continue;
        } else {
            let (mut lo, mut hi) = (p, 1.0f64);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if count(mid)? >= target {
                    hi = mid;
                } else {
                    lo = mid;
                }
                if hi - lo <= 1e-15 * hi {
                    break;
                }
            }
            hi
        };
        let witness = EdgeProbabilityMatrix::planted(n, p, k, boost)?;
        let value = total_cost(&witness, p)?;
        if best.as_ref().map_or(true, |b| value < b.value) {
            best = Some(VariationalBound {
                value,
                hubs: k,
                boost,
                witness,
            });
        }
    }
    best.ok_or_else(|| Error::invalid("no planted matrix meets the constraint"))
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct VarianceRatio {
    pub ratio: f64,
    pub stderr: f64,
    pub mean: f64,
    pub samples: usize,
}

/// Monte Carlo `Var_ξ(N)/E_ξ[N]²` for `N = N(K_{1,r}, G(n, ξ))`, with the
/// exact mean.
pub fn variance_ratio_estimate(
    xi: &EdgeProbabilityMatrix,
    r: usize,
    samples: usize,
    seed: u64,
) -> Result<VarianceRatio> {
    let mean = expected_star_count_inhom(xi, r)?;
    if !(mean > 0.0) {
        return Err(Error::invalid("expected star count is zero"));
    }
    if samples < 2 {
        return Err(Error::invalid("need at least 2 samples"));
    }
    let squares: Vec<f64> = (0..samples as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream(seed, i);
            let g = sample_inhom_with(xi, &mut rng);
            let d = star_count_u128(r, &g) as f64 - mean;
            d * d
        })
        .collect();
    let (m, sd) = mean_and_sd(&squares);
    let scale = mean * mean;
    Ok(VarianceRatio {
        ratio: m / scale,
        stderr: sd / (samples as f64).sqrt() / scale,
        mean,
        samples,
    })
}

pub(crate) fn mean_and_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = pairwise_sum(xs) / n;
    let dev: Vec<f64> = xs.iter().map(|x| (x - m) * (x - m)).collect();
    let var = if xs.len() > 1 { pairwise_sum(&dev) / (n - 1.0) } else { 0.0 };
    (m, var.sqrt())
}

pub(crate) fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 32 {
        return xs.iter().sum();
    }
    let (a, b) = xs.split_at(xs.len() / 2);
    pairwise_sum(a) + pairwise_sum(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(bernoulli_relative_entropy(0.3, 0.3).unwrap(), 0.0);
        assert!(close(bernoulli_relative_entropy(1.0, 0.2).unwrap(), 5f64.ln(), 1e-14));
        let expect = 0.25 * 0.5f64.ln() + 0.75 * 1.5f64.ln();
        assert!(close(bernoulli_relative_entropy(0.25, 0.5).unwrap(), expect, 1e-14));
        assert!(bernoulli_relative_entropy(0.5, 1.0).is_err());
    }

    #[test]
    fn cost_examples() {
        let p = 0.3;
        assert_eq!(total_cost(&EdgeProbabilityMatrix::constant(5, p).unwrap(), p).unwrap(), 0.0);
        let one = EdgeProbabilityMatrix::from_fn(3, |i, j| if (i, j) == (0, 1) { 1.0 } else { p }).unwrap();
        assert!(close(total_cost(&one, p).unwrap(), (1.0 / p).ln(), 1e-14));
        let zeros = EdgeProbabilityMatrix::constant(4, 0.0).unwrap();
        assert!(close(total_cost(&zeros, 0.5).unwrap(), 6.0 * 2f64.ln(), 1e-14));
    }

    #[test]
    fn planted_cost_matches_dense() {
        let m = EdgeProbabilityMatrix::planted(40, 0.1, 3, 0.45).unwrap();
        let dense = m.to_dense();
        assert!(close(total_cost(&m, 0.07).unwrap(), total_cost(&dense, 0.07).unwrap(), 1e-12));
        for r in 2..=4 {
            let a = expected_star_count_inhom(&m, r).unwrap();
            let b = expected_star_count_inhom(&dense, r).unwrap();
            assert!(close(a, b, 1e-12), "r = {r}: {a} vs {b}");
        }
    }

    #[test]
    fn star_mean_examples() {
        let p = 0.2f64;
        let (n, r) = (9usize, 3usize);
        let expect = n as f64 * (1..=r).map(|i| (n - i) as f64).product::<f64>() * p.powi(r as i32);
        let dense = EdgeProbabilityMatrix::constant(n, p).unwrap().to_dense();
        assert!(close(expected_star_count_inhom(&dense, r).unwrap(), expect, 1e-12));
        let ones = EdgeProbabilityMatrix::constant(3, 1.0).unwrap().to_dense();
        assert!(close(expected_star_count_inhom(&ones, 2).unwrap(), 6.0, 1e-14));
        let (a, b) = (0.3, 0.7);
        let m = EdgeProbabilityMatrix::from_fn(3, |i, j| match (i, j) {
            (0, 1) => a,
            (0, 2) => b,
            _ => 0.0,
        })
        .unwrap();
        assert!(close(expected_star_count_inhom(&m, 2).unwrap(), 2.0 * a * b, 1e-14));
    }

    #[test]
    fn planted_optimizer_examples() {
        let n = 1_000_000usize;
        let p = (n as f64).powf(-0.7);
        let opt = planted_star_optimizer(n, p, 2, 1.0, 0.1, BoostReading::FractionalCount).unwrap();
        assert_eq!(opt.hubs, 0);
        let t = 0.95 * n as f64 * p * p;
        assert!(close(opt.boost, p + t.sqrt(), 1e-12));
        // Integral t: the boost vanishes.
        let n = 100usize;
        let p = 0.2f64;
        let delta = 1.0 / (0.95 * n as f64 * p * p);
        let opt = planted_star_optimizer(n, p, 2, delta, 0.1, BoostReading::FractionalCount).unwrap();
        assert_eq!(opt.hubs, 1);
        assert!((opt.boost - p).abs() < 1e-6);
    }

    #[test]
    fn variational_examples() {
        let n = 10_000usize;
        let p = (2.0 / n as f64).sqrt();
        let vb = variational_upper_bound(n, p, 2, 1.6).unwrap();
        assert_eq!(vb.hubs, 3);
        // Hub rows also raise every other row's count, so the boost needed
        // sits below p + √0.2 at this n.
        assert!(vb.boost > p && vb.boost < p + 0.2f64.sqrt(), "boost {}", vb.boost);
        let tiny = variational_upper_bound(n, p, 2, 1e-9).unwrap();
        let speed = (n as f64).powf(1.5) * p * (n as f64).ln();
        assert!(tiny.value / speed < 1e-2);
    }

    #[test]
    fn variance_ratio_of_deterministic_graph_is_zero() {
        let ones = EdgeProbabilityMatrix::constant(6, 1.0).unwrap();
        let v = variance_ratio_estimate(&ones, 2, 20, 1).unwrap();
        assert_eq!(v.ratio, 0.0);
    }
}
