use std::path::Path;

use serde_json::{json, Value};

use uppertail::counting::{count_labelled_using_edge_with, count_labelled_with, count_unlabelled, CountBudget};
use uppertail::io::{parse_pattern, read_host_graph};
use uppertail::meanfield::{planted_star_optimizer, variational_upper_bound, BoostReading};
use uppertail::montecarlo::{
    conditioned_structure_frequency, conditioned_structure_frequency_importance, estimate_tail_direct,
    estimate_tail_importance, exact_tail, poisson_fit_experiment, tail_threshold, Planting,
};
use uppertail::pattern::{
    deficiency_sigma, enumerate_qh, fractional_independence_number, h_star, independence_polynomial, Half,
};
use uppertail::rates::{
    rate_localized_i, rate_poisson, rate_regular, rate_star_localized_ii, regime_classify, rho_hat, speed,
    RateResult, RegimeTag,
};
use uppertail::structures::{
    extract_core, extract_strong_core, high_degree_threshold, CoreConfig, HighDegreeScale, StructureEvent,
    StructureVerdict,
};
use uppertail::{CopyCount, Error, HostGraph, PatternGraph, VertexSet};

use crate::config::{self, FileConfig};
use crate::{Command, EventArgs, EventKind, Experiment, Failure, Method, Reading, Report, Sampling, Scale, TailModel};

pub struct Ctx {
    pub seed: u64,
    pub file: FileConfig,
}

impl Ctx {
    fn chi(&self, flag: Option<f64>) -> f64 {
        flag.or(self.file.chi).unwrap_or(config::DEFAULT_CHI)
    }

    fn epsilon(&self, flag: Option<f64>) -> f64 {
        flag.or(self.file.epsilon).unwrap_or(config::DEFAULT_EPSILON)
    }

    fn samples(&self, flag: Option<usize>) -> usize {
        flag.or(self.file.samples).unwrap_or(config::DEFAULT_SAMPLES)
    }

    fn budget(&self, max_nodes: Option<u64>, max_seconds: Option<f64>) -> CountBudget {
        let mut budget = CountBudget::default();
        if let Some(n) = max_nodes.or(self.file.max_nodes) {
            budget.max_nodes = n;
        }
        budget.max_seconds = max_seconds.or(self.file.max_seconds);
        budget
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn check_p(p: f64) -> Result<(), Failure> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(usage(format!("p = {p} must lie in (0,1)")))
    }
}

fn check_delta(delta: f64) -> Result<(), Failure> {
    if delta > 0.0 && delta.is_finite() {
        Ok(())
    } else {
        Err(usage(format!("delta = {delta} must be positive")))
    }
}

fn check_n(n: usize) -> Result<(), Failure> {
    if n >= 2 {
        Ok(())
    } else {
        Err(usage(format!("n = {n} must be at least 2")))
    }
}

fn check_unit(name: &str, x: f64) -> Result<(), Failure> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(usage(format!("{name} = {x} must lie in (0,1)")))
    }
}

fn half(h: Half) -> Value {
    if h.is_integer() {
        json!(h.halves() / 2)
    } else {
        json!(h.to_f64())
    }
}

/// `None` when the operation does not apply to this pattern.
fn optional<T>(r: uppertail::Result<T>) -> Result<Option<T>, Failure> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Precondition(_)) | Err(Error::InvalidInput(_)) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

fn load_graph(path: &Path) -> Result<(HostGraph, Vec<String>), Failure> {
    read_host_graph(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn labelled(set: &VertexSet, labels: &[String]) -> Vec<String> {
    set.iter().map(|v| labels[v].clone()).collect()
}

fn verdict_json(v: &StructureVerdict, labels: &[String]) -> Value {
    json!({
        "found": v.found,
        "witness": v.witness.as_ref().map(|w| labelled(w, labels)),
        "extra": v.extra.map(|x| labels[x].clone()),
        "certificate": v.certificate,
    })
}

pub fn dispatch(ctx: &Ctx, command: Command) -> Result<Report, Failure> {
    match command {
        Command::AnalyzePattern { pattern } => analyze_pattern(&pattern),
        Command::Rate {
            pattern,
            delta,
            n,
            p,
            rho,
            slack,
        } => rate(ctx, &pattern, delta, n.zip(p), rho, slack),
        Command::Count {
            pattern,
            graph,
            edge,
            unlabelled,
            max_nodes,
            max_seconds,
        } => count(ctx, &pattern, &graph, edge.as_deref(), unlabelled, max_nodes, max_seconds),
        Command::Detect {
            graph,
            event,
            p,
            delta,
            r,
        } => detect(ctx, &graph, &event, p, delta, r),
        Command::Core {
            graph,
            pattern,
            delta,
            epsilon,
            n,
            p,
            strong,
            c_bar,
        } => core(ctx, &graph, &pattern, delta, epsilon, n, p, strong, c_bar),
        Command::Meanfield {
            r,
            n,
            p,
            delta,
            epsilon,
            boost_reading,
        } => meanfield(ctx, r, n, p, delta, epsilon, boost_reading),
        Command::Tail { model, method, sampling } => tail(ctx, &model, method, &sampling),
        Command::Experiment(Experiment::PoissonFit { pattern, n, p, samples }) => poisson_fit(ctx, &pattern, n, p, samples),
        Command::Experiment(Experiment::Conditioned { model, event, sampling }) => conditioned(ctx, &model, &event, &sampling),
    }
}

fn analyze_pattern(spec: &str) -> Result<Report, Failure> {
    let h = parse_pattern(spec)?;
    let (alpha, _) = fractional_independence_number(&h)?;
    let star = optional(h_star(&h))?;
    let star_poly = match &star {
        Some((hs, _)) => Some(independence_polynomial(hs)?),
        None => None,
    };
    let qh = if h.is_connected() && !h.is_regular() {
        optional(enumerate_qh(&h))?.map(|m| m.len())
    } else {
        None
    };
    let sigma = optional(deficiency_sigma(&h))?;
    Ok(Report {
        inputs: json!({ "pattern": spec }),
        result: json!({
            "v": h.vertex_count(),
            "e": h.edge_count(),
            "max_degree": optional(h.max_degree())?,
            "regular": h.is_regular(),
            "connected": h.is_connected(),
            "bipartite": h.bipartite_parts().is_some(),
            "strictly_balanced": optional(h.is_strictly_balanced())?,
            "aut": h.automorphism_count()?,
            "alpha_star": half(alpha),
            "h_star": star.as_ref().map(|(hs, verts)| json!({ "vertices": verts, "edges": hs.edges() })),
            "h_star_independence_polynomial": star_poly,
            "qh_size": qh,
            "sigma": sigma.map(|(s, edges)| json!({ "value": half(s), "edges": edges })),
        }),
    })
}

fn rate_json(r: &RateResult) -> Value {
    json!({
        "rate": r.rate,
        "theorem": r.theorem.name(),
        "speed": r.speed,
        "branch": r.branch,
        "crossover": r.crossover,
    })
}

fn theorem_rate(h: &PatternGraph, delta: f64) -> Result<RateResult, Failure> {
    if !h.is_connected() {
        return Err(usage("rates need a connected pattern"));
    }
    Ok(if h.is_regular() { rate_regular(h, delta)? } else { rate_localized_i(h, delta)? })
}

fn rate(
    ctx: &Ctx,
    spec: &str,
    delta: f64,
    np: Option<(usize, f64)>,
    rho: Option<f64>,
    slack: Option<f64>,
) -> Result<Report, Failure> {
    check_delta(delta)?;
    let h = parse_pattern(spec)?;
    let slack = slack.or(ctx.file.slack).unwrap_or(config::DEFAULT_SLACK);
    let mut inputs = json!({ "pattern": spec, "delta": delta, "slack": slack });
    if let Some(rho) = rho {
        let r = h.star_arms().ok_or_else(|| usage("--rho applies to star patterns only"))?;
        inputs["rho"] = json!(rho);
        let value = rate_star_localized_ii(r, delta, rho)?;
        return Ok(Report {
            inputs,
            result: json!({
                "regime": RegimeTag::LocalizedIiStar.name(),
                "rate": value,
                "theorem": RegimeTag::LocalizedIiStar.name(),
                "speed": null,
                "margins": {},
            }),
        });
    }
    let Some((n, p)) = np else {
        let r = theorem_rate(&h, delta)?;
        let mut out = rate_json(&r);
        out["regime"] = json!(r.theorem.name());
        out["margins"] = json!({});
        return Ok(Report { inputs, result: out });
    };
    check_n(n)?;
    check_p(p)?;
    inputs["n"] = json!(n);
    inputs["p"] = json!(p);
    let regime = regime_classify(&h, n, p, slack)?;
    let mut out = match regime.tag {
        RegimeTag::LocalizedI => rate_json(&rate_localized_i(&h, delta)?.at(&h, n, p)?),
        RegimeTag::RegularLocalized => rate_json(&rate_regular(&h, delta)?.at(&h, n, p)?),
        RegimeTag::Poisson => json!({
            "rate": rate_poisson(delta)?,
            "theorem": RegimeTag::Poisson.name(),
            "speed": speed(RegimeTag::Poisson, &h, n, p)?,
        }),
        RegimeTag::LocalizedIiStar => {
            let r = h.star_arms().expect("star regime");
            let est = rho_hat(n, p, r, delta);
            if est.near_jump {
                eprintln!("warning: δ·ρ̂ = {:.4} is close to an integer; the rate jumps there", delta * est.rho);
            }
            json!({
                "rate": rate_star_localized_ii(r, delta, est.rho)?,
                "theorem": RegimeTag::LocalizedIiStar.name(),
                "speed": speed(RegimeTag::LocalizedIiStar, &h, n, p)?,
                "rho_hat": est.rho,
                "near_jump": est.near_jump,
            })
        }
        RegimeTag::Unclassified => json!({ "rate": null, "theorem": null, "speed": null }),
    };
    out["regime"] = json!(regime.tag.name());
    out["margins"] = json!(regime.margins);
    out["satisfied"] = json!(regime.satisfied.iter().map(|t| t.name()).collect::<Vec<_>>());
    Ok(Report { inputs, result: out })
}

#[allow(clippy::too_many_arguments)]
fn count(
    ctx: &Ctx,
    spec: &str,
    path: &Path,
    edge: Option<&str>,
    unlabelled: bool,
    max_nodes: Option<u64>,
    max_seconds: Option<f64>,
) -> Result<Report, Failure> {
    let h = parse_pattern(spec)?;
    let (g, labels) = load_graph(path)?;
    let budget = ctx.budget(max_nodes, max_seconds);
    if budget.max_seconds.is_some_and(|s| !(s > 0.0)) {
        return Err(usage("max-seconds must be positive"));
    }
    let inputs = json!({
        "pattern": spec,
        "graph": path.display().to_string(),
        "edge": edge,
        "unlabelled": unlabelled,
        "max_nodes": budget.max_nodes,
        "max_seconds": budget.max_seconds,
    });
    let value = match edge {
        Some(e) => {
            let (a, b) = e.split_once(',').ok_or_else(|| usage(format!("edge `{e}` is not `u,v`")))?;
            let find = |x: &str| {
                labels
                    .iter()
                    .position(|l| l == x.trim())
                    .ok_or_else(|| usage(format!("no vertex labelled `{}`", x.trim())))
            };
            let (u, v) = (find(a)?, find(b)?);
            if !g.has_edge(u, v) {
                return Err(usage(format!("`{e}` is not an edge of the graph")));
            }
            count_labelled_using_edge_with(&h, &g, (u.min(v), u.max(v)), budget)?
        }
        None if unlabelled => {
            // Budgeted labelled count first, then the exact division.
            count_labelled_with(&h, &g, budget)?;
            count_unlabelled(&h, &g)?
        }
        None => count_labelled_with(&h, &g, budget)?,
    };
    Ok(Report {
        inputs,
        result: json!({
            "count": value,
            "labelled": !unlabelled,
            "aut": h.automorphism_count()?,
        }),
    })
}

fn scale(s: Scale) -> HighDegreeScale {
    match s {
        Scale::RootDelta => HighDegreeScale::RootDelta,
        Scale::Delta => HighDegreeScale::Delta,
        Scale::Unit => HighDegreeScale::Unit,
    }
}

/// Model parameters for automatic thresholds.
struct Model {
    n: usize,
    p: f64,
    delta: f64,
    r: usize,
}

fn build_event(ctx: &Ctx, args: &EventArgs, model: Option<Model>) -> Result<(StructureEvent, Value), Failure> {
    let chi = ctx.chi(args.chi);
    let need = |x: Option<f64>, flag: &str| x.ok_or_else(|| usage(format!("event needs --{flag}")));
    let event = match args.event {
        EventKind::Always => StructureEvent::Always,
        EventKind::Highdeg => {
            let threshold = match (args.threshold_degree, model) {
                (Some(t), _) => t,
                (None, Some(m)) => high_degree_threshold(scale(args.scale), chi, m.delta, m.n, m.p, m.r),
                (None, None) => {
                    return Err(usage("highdeg needs --threshold-degree, or --p, --delta and --r"));
                }
            };
            StructureEvent::HighDegree { threshold }
        }
        EventKind::Hub => StructureEvent::Hub {
            chi,
            edge_threshold: need(args.edge_threshold, "edge-threshold")?,
            degree_threshold: need(args.degree_threshold, "degree-threshold")?,
        },
        EventKind::Clique => StructureEvent::Clique {
            chi,
            size_threshold: need(args.size, "size")?,
        },
        EventKind::Tildehub => StructureEvent::TildeHub {
            u_size: args.u_size.ok_or_else(|| usage("event needs --u-size"))?,
            u_degree_threshold: need(args.u_degree, "u-degree")?,
            extra_degree_threshold: need(args.extra_degree, "extra-degree")?,
        },
    };
    if !(0.0..1.0).contains(&chi) {
        return Err(usage(format!("chi = {chi} must lie in [0,1)")));
    }
    let inputs = json!({ "chi": chi, "scale": format!("{:?}", args.scale), "event": event });
    Ok((event, inputs))
}

fn detect(
    ctx: &Ctx,
    path: &Path,
    args: &EventArgs,
    p: Option<f64>,
    delta: Option<f64>,
    r: Option<usize>,
) -> Result<Report, Failure> {
    let (g, labels) = load_graph(path)?;
    let model = match (p, delta, r) {
        (Some(p), Some(delta), Some(r)) => {
            check_p(p)?;
            check_delta(delta)?;
            Some(Model {
                n: g.vertex_count(),
                p,
                delta,
                r,
            })
        }
        (None, None, None) => None,
        _ => return Err(usage("--p, --delta and --r go together")),
    };
    let (event, mut inputs) = build_event(ctx, args, model)?;
    inputs["graph"] = json!(path.display().to_string());
    inputs["p"] = json!(p);
    inputs["delta"] = json!(delta);
    inputs["r"] = json!(r);
    let verdict = event.detect(&g);
    Ok(Report {
        inputs,
        result: verdict_json(&verdict, &labels),
    })
}

#[allow(clippy::too_many_arguments)]
fn core(
    ctx: &Ctx,
    path: &Path,
    spec: &str,
    delta: f64,
    epsilon: Option<f64>,
    n: Option<usize>,
    p: f64,
    strong: bool,
    c_bar: Option<f64>,
) -> Result<Report, Failure> {
    check_delta(delta)?;
    check_p(p)?;
    let epsilon = ctx.epsilon(epsilon);
    check_unit("epsilon", epsilon)?;
    let h = parse_pattern(spec)?;
    let (g, labels) = load_graph(path)?;
    let n = n.unwrap_or(g.vertex_count());
    check_n(n)?;
    let mut cfg = match h.star_arms() {
        Some(r) => CoreConfig::star(r, delta, epsilon)?,
        None => CoreConfig::general(delta, epsilon)?,
    };
    if let Some(c) = c_bar {
        if !(c > 0.0) {
            return Err(usage("c-bar must be positive"));
        }
        cfg.c_bar = c;
    }
    let result = if strong {
        let r = h.star_arms().ok_or_else(|| usage("--strong applies to star patterns only"))?;
        extract_strong_core(&g, r, &cfg, n, p)?
    } else {
        extract_core(&g, &h, &cfg, n, p)?
    };
    let edges: Vec<(String, String)> = result
        .graph
        .edges()
        .map(|(u, v)| (labels[u].clone(), labels[v].clone()))
        .collect();
    let mut out = json!(result);
    out["remaining_edges"] = json!(edges);
    Ok(Report {
        inputs: json!({
            "graph": path.display().to_string(),
            "pattern": spec,
            "delta": delta,
            "epsilon": epsilon,
            "n": n,
            "p": p,
            "strong": strong,
            "config": cfg,
        }),
        result: out,
    })
}

fn meanfield(
    ctx: &Ctx,
    r: usize,
    n: usize,
    p: f64,
    delta: f64,
    epsilon: Option<f64>,
    reading: Reading,
) -> Result<Report, Failure> {
    check_n(n)?;
    check_p(p)?;
    check_delta(delta)?;
    let epsilon = ctx.epsilon(epsilon);
    check_unit("epsilon", epsilon)?;
    let reading = match reading {
        Reading::FractionalCount => BoostReading::FractionalCount,
        Reading::FractionalRoot => BoostReading::FractionalRoot,
    };
    let bound = variational_upper_bound(n, p, r, delta)?;
    let planted = planted_star_optimizer(n, p, r, delta, epsilon, reading)?;
    let rho = rho_hat(n, p, r, delta);
    let nf = n as f64;
    let theory = rate_star_localized_ii(r, delta, rho.rho)? * nf.powf(1.0 + 1.0 / r as f64) * p * nf.ln();
    Ok(Report {
        inputs: json!({
            "r": r, "n": n, "p": p, "delta": delta, "epsilon": epsilon,
            "boost_reading": format!("{reading:?}"),
        }),
        result: json!({
            "psi_upper": bound.value,
            "witness_summary": { "k": bound.hubs, "boosted_value": bound.boost },
            "theory_rate": theory,
            "ratio": bound.value / theory,
            "rho_hat": rho.rho,
            "near_jump": rho.near_jump,
            "planted": {
                "k": planted.hubs,
                "boosted_value": planted.boost,
                "count_ratio": planted.ratio,
                "meets_target": planted.meets_target,
            },
        }),
    })
}

fn resolve_threshold(h: &PatternGraph, model: &TailModel) -> Result<u128, Failure> {
    check_n(model.n)?;
    check_p(model.p)?;
    match (model.threshold, model.delta) {
        (Some(t), _) => Ok(t),
        (None, Some(delta)) => {
            check_delta(delta)?;
            Ok(tail_threshold(h, model.n, model.p, delta)?)
        }
        (None, None) => Err(usage("give --delta or --threshold")),
    }
}

fn planting(ctx: &Ctx, s: &Sampling) -> Result<(Planting, Value), Failure> {
    let q = s.q.or(ctx.file.q).unwrap_or(config::DEFAULT_Q);
    let defensive = s.defensive.or(ctx.file.defensive).unwrap_or(config::DEFAULT_DEFENSIVE);
    let spec = s.planting.as_deref().unwrap_or("highdeg");
    let (kind, arg) = match spec.split_once(':') {
        Some((k, a)) => (k, Some(a)),
        None => (spec, None),
    };
    let int = |a: Option<&str>| -> Result<usize, Failure> {
        a.and_then(|x| x.trim().parse().ok())
            .ok_or_else(|| usage(format!("planting `{spec}` needs an integer argument")))
    };
    let planting = match kind {
        "background" => Planting::Background,
        "hub" => Planting::Hub { k: int(arg)?, q },
        "clique" => Planting::Clique { m: int(arg)?, q },
        "highdeg" => Planting::HighDegree { q },
        "tilted" => Planting::Tilted { q },
        "degree" => Planting::Degree {
            min_degree: int(arg)?,
            defensive,
        },
        _ => return Err(usage(format!("unknown planting `{spec}`"))),
    };
    Ok((planting, json!(planting)))
}

fn tail(ctx: &Ctx, model: &TailModel, method: Method, s: &Sampling) -> Result<Report, Failure> {
    let h = parse_pattern(&model.pattern)?;
    let threshold = resolve_threshold(&h, model)?;
    let samples = ctx.samples(s.samples);
    let mut inputs = json!({
        "pattern": model.pattern, "n": model.n, "p": model.p, "delta": model.delta,
        "threshold": CopyCount::from(threshold), "method": format!("{method:?}").to_lowercase(),
    });
    let est = match method {
        Method::Exact => exact_tail(&h, model.n, model.p, threshold)?,
        Method::Direct => {
            inputs["samples"] = json!(samples);
            estimate_tail_direct(&h, model.n, model.p, threshold, samples, ctx.seed)?
        }
        Method::Importance => {
            let (pl, pl_json) = planting(ctx, s)?;
            inputs["samples"] = json!(samples);
            inputs["planting"] = pl_json;
            estimate_tail_importance(&h, model.n, model.p, threshold, pl, samples, ctx.seed)?
        }
    };
    Ok(Report {
        inputs,
        result: json!(est),
    })
}

fn poisson_fit(ctx: &Ctx, spec: &str, n: usize, p: f64, samples: Option<usize>) -> Result<Report, Failure> {
    check_n(n)?;
    check_p(p)?;
    let h = parse_pattern(spec)?;
    let samples = ctx.samples(samples);
    let fit = poisson_fit_experiment(&h, n, p, samples, ctx.seed)?;
    Ok(Report {
        inputs: json!({ "pattern": spec, "n": n, "p": p, "samples": samples }),
        result: json!(fit),
    })
}

fn conditioned(ctx: &Ctx, model: &TailModel, args: &EventArgs, s: &Sampling) -> Result<Report, Failure> {
    let h = parse_pattern(&model.pattern)?;
    let threshold = resolve_threshold(&h, model)?;
    let auto = match (model.delta, h.star_arms()) {
        (Some(delta), Some(r)) => Some(Model {
            n: model.n,
            p: model.p,
            delta,
            r,
        }),
        _ => None,
    };
    let (event, mut inputs) = build_event(ctx, args, auto)?;
    let samples = ctx.samples(s.samples);
    inputs["pattern"] = json!(model.pattern);
    inputs["n"] = json!(model.n);
    inputs["p"] = json!(model.p);
    inputs["delta"] = json!(model.delta);
    inputs["threshold"] = json!(CopyCount::from(threshold));
    inputs["samples"] = json!(samples);
    let freq = if s.planting.is_some() {
        let (pl, pl_json) = planting(ctx, s)?;
        inputs["planting"] = pl_json;
        conditioned_structure_frequency_importance(&h, model.n, model.p, threshold, &event, pl, samples, ctx.seed)?
    } else {
        conditioned_structure_frequency(&h, model.n, model.p, threshold, &event, samples, ctx.seed)?
    };
    Ok(Report {
        inputs,
        result: json!(freq),
    })
}
