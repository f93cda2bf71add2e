//! Speeds, rate functions and regime classification.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::PatternGraph;
use crate::pattern::{alpha_star_halves, h_star, independence_polynomial, IndependencePolynomial};

/// Which limit theorem a `(H, n, p)` triple falls under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeTag {
    LocalizedI,
    Poisson,
    LocalizedIiStar,
    RegularLocalized,
    Unclassified,
}

impl RegimeTag {
    pub fn name(self) -> &'static str {
        match self {
            RegimeTag::LocalizedI => "localized_i",
            RegimeTag::Poisson => "poisson",
            RegimeTag::LocalizedIiStar => "localized_ii_star",
            RegimeTag::RegularLocalized => "regular_localized",
            RegimeTag::Unclassified => "unclassified",
        }
    }
}

/// Classification with the log-scale slack of every hypothesis checked.
/// A positive margin means the inequality holds.
#[derive(Clone, Debug, Serialize)]
pub struct Regime {
    pub tag: RegimeTag,
    pub margins: BTreeMap<String, f64>,
    /// Every regime whose hypotheses all hold.
    pub satisfied: Vec<RegimeTag>,
}

/// Which term attains the minimum in the regular rate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RegularBranch {
    Hub,
    Clique,
}

#[derive(Clone, Debug, Serialize)]
pub struct RateResult {
    pub rate: f64,
    pub theorem: RegimeTag,
    pub delta: f64,
    /// Normalising sequence at `(n, p)` when those were supplied.
    pub speed: Option<f64>,
    pub branch: Option<RegularBranch>,
    pub crossover: Option<f64>,
}

impl RateResult {
    fn new(rate: f64, theorem: RegimeTag, delta: f64) -> Self {
        RateResult {
            rate,
            theorem,
            delta,
            speed: None,
            branch: None,
            crossover: None,
        }
    }

    /// Fills in the speed for `H` at `(n, p)`.
    pub fn at(mut self, h: &PatternGraph, n: usize, p: f64) -> Result<Self> {
        self.speed = Some(speed(self.theorem, h, n, p)?);
        Ok(self)
    }
}

const ROOT_TOL: f64 = 1e-12;

/// The unique `θ > 0` with `P(θ) = 1 + δ`.
pub fn theta_star_root(poly: &IndependencePolynomial, delta: f64) -> Result<f64> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::invalid(format!("delta = {delta} must be positive")));
    }
    let c = poly.coefficients();
    let i1 = c.get(1).copied().unwrap_or(0);
    if c.first() != Some(&1) || i1 == 0 {
        return Err(Error::invalid("polynomial must have constant term 1 and i_1 >= 1"));
    }
    let target = 1.0 + delta;
    let f = |t: f64| poly.eval(t) - target;
    // P(θ) >= 1 + i_1 θ, so the root lies in [0, δ/i_1].
    let (mut lo, mut hi) = (0.0f64, delta / i1 as f64);
    let mut t = hi;
    for _ in 0..200 {
        let ft = f(t);
        if ft == 0.0 {
            return Ok(t);
        }
        if ft < 0.0 {
            lo = t;
        } else {
            hi = t;
        }
        if hi - lo <= ROOT_TOL * hi {
            break;
        }
        let newton = t - ft / poly.derivative_at(t);
        t = if newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    Ok(0.5 * (lo + hi))
}

fn require_connected(h: &PatternGraph) -> Result<()> {
    if h.edge_count() == 0 {
        return Err(Error::invalid("pattern has no edges"));
    }
    if !h.is_connected() {
        return Err(Error::invalid("pattern must be connected"));
    }
    Ok(())
}

/// `θ_{H*}(δ)` for connected irregular `H`.
pub fn rate_localized_i(h: &PatternGraph, delta: f64) -> Result<RateResult> {
    require_connected(h)?;
    if h.is_regular() {
        return Err(Error::invalid("pattern is regular; use the regular rate"));
    }
    let (core, _) = h_star(h)?;
    let poly = independence_polynomial(&core)?;
    let theta = theta_star_root(&poly, delta)?;
    Ok(RateResult::new(theta, RegimeTag::LocalizedI, delta))
}

fn regular_branches(poly: &IndependencePolynomial, v: usize, delta: f64) -> Result<(f64, f64)> {
    let hub = theta_star_root(poly, delta)?;
    let clique = delta.powf(2.0 / v as f64) / 2.0;
    Ok((hub, clique))
}

/// `min{θ_H(δ), δ^{2/v_H}/2}` for connected regular `H`, with the attaining
/// branch and the first crossover `δ_0`.
pub fn rate_regular(h: &PatternGraph, delta: f64) -> Result<RateResult> {
    require_connected(h)?;
    if !h.is_regular() {
        return Err(Error::invalid("pattern is irregular; use the localized rate"));
    }
    let poly = independence_polynomial(h)?;
    let v = h.vertex_count();
    let (hub, clique) = regular_branches(&poly, v, delta)?;
    let mut out = RateResult::new(hub.min(clique), RegimeTag::RegularLocalized, delta);
    out.branch = Some(if hub <= clique {
        RegularBranch::Hub
    } else {
        RegularBranch::Clique
    });
    out.crossover = regular_crossover(&poly, v)?;
    Ok(out)
}

/// Smallest `δ` where `θ_H(δ) − δ^{2/v}/2` changes sign, searched on
/// `[1e-8, 1e12]`.
fn regular_crossover(poly: &IndependencePolynomial, v: usize) -> Result<Option<f64>> {
    let gap = |d: f64| -> Result<f64> {
        let (hub, clique) = regular_branches(poly, v, d)?;
        Ok(hub - clique)
    };
    let mut prev = 1e-8f64;
    let mut g_prev = gap(prev)?;
    let factor = 1.25f64;
    while prev < 1e12 {
        let next = prev * factor;
        let g_next = gap(next)?;
        if g_prev.signum() != g_next.signum() {
            let (mut lo, mut hi) = (prev.ln(), next.ln());
            let lo_sign = g_prev.signum();
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if gap(mid.exp())?.signum() == lo_sign {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo < 1e-14 {
                    break;
                }
            }
            return Ok(Some((0.5 * (lo + hi)).exp()));
        }
        prev = next;
        g_prev = g_next;
    }
    Ok(None)
}

/// `(1+δ)log(1+δ) − δ`.
pub fn rate_poisson(delta: f64) -> Result<f64> {
    if !(delta >= 0.0) || !delta.is_finite() {
        return Err(Error::invalid(format!("delta = {delta} must be nonnegative")));
    }
    Ok((1.0 + delta) * delta.ln_1p() - delta)
}

/// Star rate when `np^r → ρ`.
pub fn rate_star_localized_ii(r: usize, delta: f64, rho: f64) -> Result<f64> {
    if r < 2 {
        return Err(Error::invalid("star needs r >= 2"));
    }
    if !(delta > 0.0) || !(rho >= 0.0) || !rho.is_finite() {
        return Err(Error::invalid("need delta > 0 and rho >= 0"));
    }
    let rf = r as f64;
    if rho == 0.0 {
        return Ok(delta.powf(1.0 / rf) / rf);
    }
    let x = delta * rho;
    let whole = x.floor();
    Ok((whole + (x - whole).powf(1.0 / rf)) / (rf * rho.powf(1.0 / rf)))
}

/// Finite-`n` proxy `ρ̂ = np^r` with a flag for `δρ̂` near an integer.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct RhoEstimate {
    pub rho: f64,
    pub near_jump: bool,
}

pub const JUMP_WINDOW: f64 = 0.05;

pub fn rho_hat(n: usize, p: f64, r: usize, delta: f64) -> RhoEstimate {
    let rho = n as f64 * p.powi(r as i32);
    let x = delta * rho;
    let near_jump = x >= 1.0 - JUMP_WINDOW && (x - x.round()).abs() < JUMP_WINDOW;
    RhoEstimate { rho, near_jump }
}

/// Checks every applicable hypothesis at finite `(n, p)`, reading `a ≪ b`
/// as `slack·a < b`.
pub fn regime_classify(h: &PatternGraph, n: usize, p: f64, slack: f64) -> Result<Regime> {
    if n < 3 {
        return Err(Error::invalid("need n >= 3"));
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::invalid(format!("p = {p} must lie in (0,1)")));
    }
    if !(slack >= 1.0) {
        return Err(Error::invalid("slack must be at least 1"));
    }
    require_connected(h)?;
    let ls = slack.ln();
    let ln_n = (n as f64).ln();
    let ln_p = p.ln();
    let lnln = ln_n.ln();
    let v = h.vertex_count() as f64;
    let e = h.edge_count() as f64;
    let delta = h.max_degree()? as f64;

    let mut margins = BTreeMap::new();
    let mut satisfied = Vec::new();
    let mut check = |tag: RegimeTag, conds: Vec<(&str, f64)>| {
        let mut all = true;
        for (name, m) in conds {
            all &= m > 0.0;
            margins.insert(format!("{}.{}", tag.name(), name), m);
        }
        if all {
            satisfied.push(tag);
        }
    };

    let below_one = -ln_p - ls;
    if !h.is_regular() {
        check(
            RegimeTag::LocalizedI,
            vec![("p_above_n_pow_minus_1_over_delta", ln_p + ln_n / delta - ls), ("p_below_1", below_one)],
        );
    }
    if h.is_strictly_balanced()? {
        let ln_mu = v * ln_n + e * ln_p;
        let alpha = alpha_star_halves(h) as f64 / 2.0;
        let upper = if alpha > 1.0 {
            alpha / (alpha - 1.0) * lnln - ln_mu - ls
        } else {
            f64::INFINITY
        };
        check(
            RegimeTag::Poisson,
            vec![("mean_above_1", ln_mu - ls), ("mean_below_log_power", upper)],
        );
    }
    if let Some(r) = h.star_arms().filter(|&r| r >= 2) {
        let rf = r as f64;
        check(
            RegimeTag::LocalizedIiStar,
            vec![
                ("p_at_most_n_pow_minus_1_over_r", -ln_p - ln_n / rf),
                ("star_mean_above_log_power", (rf + 1.0) * ln_n + rf * ln_p - rf / (rf - 1.0) * lnln - ls),
            ],
        );
    }
    if h.is_regular() && v > 2.0 {
        check(
            RegimeTag::RegularLocalized,
            vec![
                ("p_below_1", below_one),
                ("np_half_delta_above_log_power", ln_n + delta / 2.0 * ln_p - lnln / (v - 2.0) - ls),
            ],
        );
    }
    let tag = match satisfied.as_slice() {
        [one] => *one,
        _ => RegimeTag::Unclassified,
    };
    Ok(Regime {
        tag,
        margins,
        satisfied,
    })
}

/// The normalising sequence of a regime.
pub fn speed(tag: RegimeTag, h: &PatternGraph, n: usize, p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::invalid(format!("p = {p} must lie in (0,1)")));
    }
    let nf = n as f64;
    match tag {
        RegimeTag::LocalizedI | RegimeTag::RegularLocalized => {
            let delta = h.max_degree()? as i32;
            Ok(nf * nf * p.powi(delta) * (1.0 / p).ln())
        }
        RegimeTag::Poisson => {
            let aut = h.automorphism_count()? as f64;
            let ln = h.vertex_count() as f64 * nf.ln() + h.edge_count() as f64 * p.ln();
            Ok(ln.exp() / aut)
        }
        RegimeTag::LocalizedIiStar => {
            let r = h
                .star_arms()
                .ok_or_else(|| Error::invalid("star speed needs a star pattern"))?;
            Ok(nf.powf(1.0 + 1.0 / r as f64) * p * nf.ln())
        }
        RegimeTag::Unclassified => Err(Error::invalid("no speed for an unclassified regime")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[u64]) -> IndependencePolynomial {
        IndependencePolynomial::from_coefficients(c.to_vec()).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn root_examples() {
        assert!(close(theta_star_root(&poly(&[1, 1]), 0.5).unwrap(), 0.5, 1e-12));
        assert!(close(theta_star_root(&poly(&[1, 2]), 1.0).unwrap(), 0.5, 1e-12));
        assert!(close(theta_star_root(&poly(&[1, 3, 1]), 4.0).unwrap(), 1.0, 1e-12));
        assert!(theta_star_root(&poly(&[1, 1]), 0.0).is_err());
    }

    #[test]
    fn localized_examples() {
        let r = rate_localized_i(&PatternGraph::star(3).unwrap(), 0.7).unwrap();
        assert!(close(r.rate, 0.7, 1e-12));
        let p4 = PatternGraph::path(4).unwrap();
        assert!(close(rate_localized_i(&p4, 1.0).unwrap().rate, 0.5, 1e-12));
        let p5 = PatternGraph::path(5).unwrap();
        assert!(close(rate_localized_i(&p5, 4.0).unwrap().rate, 1.0, 1e-12));
        assert!(rate_localized_i(&PatternGraph::cycle(4).unwrap(), 1.0).is_err());
    }

    #[test]
    fn regular_examples() {
        let k3 = PatternGraph::clique(3).unwrap();
        let r = rate_regular(&k3, 8.0).unwrap();
        assert!(close(r.rate, 2.0, 1e-12));
        assert_eq!(r.branch, Some(RegularBranch::Clique));
        let small = rate_regular(&k3, 0.1).unwrap();
        assert!(close(small.rate, 0.1 / 3.0, 1e-12));
        assert_eq!(small.branch, Some(RegularBranch::Hub));
        let c4 = PatternGraph::cycle(4).unwrap();
        assert!(rate_regular(&c4, 1e-9).unwrap().rate < 1e-4);
        assert!(rate_regular(&PatternGraph::path(3).unwrap(), 1.0).is_err());
    }

    #[test]
    fn branch_switches_at_crossover() {
        for h in [PatternGraph::clique(3).unwrap(), PatternGraph::cycle(4).unwrap(), PatternGraph::clique(4).unwrap()] {
            let d0 = rate_regular(&h, 1.0).unwrap().crossover.unwrap();
            let below = rate_regular(&h, d0 * 0.99).unwrap().branch.unwrap();
            let above = rate_regular(&h, d0 * 1.01).unwrap().branch.unwrap();
            assert_ne!(below, above);
        }
    }

    #[test]
    fn poisson_examples() {
        assert_eq!(rate_poisson(0.0).unwrap(), 0.0);
        assert!(close(rate_poisson(std::f64::consts::E - 1.0).unwrap(), 1.0, 1e-12));
        assert!(close(rate_poisson(1.0).unwrap(), 0.386294361, 1e-8));
    }

    #[test]
    fn star_examples() {
        assert!(close(rate_star_localized_ii(2, 1.0, 0.0).unwrap(), 0.5, 1e-12));
        assert!(close(rate_star_localized_ii(2, 1.5, 1.0).unwrap(), 0.853553390593, 1e-10));
        assert!(close(rate_star_localized_ii(3, 2.0, 1.0).unwrap(), 2.0 / 3.0, 1e-12));
        assert!(rho_hat(100, 0.1, 2, 1.0).near_jump);
        assert!(!rho_hat(100, 0.15, 2, 1.0).near_jump);
    }

    #[test]
    fn classify_examples() {
        let cherry = PatternGraph::star(2).unwrap();
        let n = 1_000_000usize;
        let nf = n as f64;
        let r = regime_classify(&cherry, n, nf.powf(-0.4), 1.0).unwrap();
        assert_eq!(r.tag, RegimeTag::LocalizedI);
        let r = regime_classify(&cherry, n, nf.powf(-0.9), 1.0).unwrap();
        assert_eq!(r.tag, RegimeTag::LocalizedIiStar);
        let k3 = PatternGraph::clique(3).unwrap();
        let p = nf.ln().powf(1.2).powf(1.0 / 3.0) / nf;
        let r = regime_classify(&k3, n, p, 1.0).unwrap();
        assert_eq!(r.tag, RegimeTag::Poisson, "{:?}", r.margins);
        assert!(regime_classify(&k3, n, 1.5, 1.0).is_err());
    }

    #[test]
    fn speed_examples() {
        let cherry = PatternGraph::star(2).unwrap();
        assert!(close(speed(RegimeTag::LocalizedI, &cherry, 100, 0.2).unwrap(), 400.0 * 5f64.ln(), 1e-12));
        let k3 = PatternGraph::clique(3).unwrap();
        assert!(close(speed(RegimeTag::Poisson, &k3, 100, 0.01).unwrap(), 1.0 / 6.0, 1e-10));
        let s = speed(RegimeTag::LocalizedIiStar, &cherry, 10_000, 1e-3).unwrap();
        assert!(close(s, 1e6 * 1e-3 * 1e4f64.ln(), 1e-10));
        assert!(speed(RegimeTag::Unclassified, &cherry, 10, 0.1).is_err());
    }
}
