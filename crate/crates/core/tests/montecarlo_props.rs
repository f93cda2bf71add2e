use uppertail::counting::count_labelled;
use uppertail::montecarlo::{estimate_tail_direct, estimate_tail_importance, exact_tail, Planting};
use uppertail::{HostGraph, PatternGraph};

fn battery() -> Vec<(PatternGraph, usize, f64, u128)> {
    vec![
        (PatternGraph::clique(3).unwrap(), 4, 0.5, 6),
        (PatternGraph::clique(3).unwrap(), 5, 0.3, 12),
        (PatternGraph::clique(3).unwrap(), 6, 0.5, 24),
        (PatternGraph::star(2).unwrap(), 5, 0.2, 10),
        (PatternGraph::star(2).unwrap(), 6, 0.4, 40),
        (PatternGraph::path(4).unwrap(), 5, 0.3, 20),
        (PatternGraph::cycle(4).unwrap(), 5, 0.5, 16),
        (PatternGraph::star(3).unwrap(), 6, 0.3, 24),
        (PatternGraph::clique(4).unwrap(), 5, 0.7, 48),
        (PatternGraph::star(2).unwrap(), 4, 0.5, 6),
    ]
}

#[test]
fn importance_mean_over_runs_matches_exact() {
    for (i, (h, n, p, thr)) in battery().into_iter().enumerate() {
        let exact = exact_tail(&h, n, p, thr).unwrap().point;
        let q = (p + 0.3).min(0.9);
        let runs: Vec<f64> = (0..30)
            .map(|k| estimate_tail_importance(&h, n, p, thr, Planting::Hub { k: 1, q }, 2000, 1000 * i as u64 + k).unwrap().point)
            .collect();
        let mean = runs.iter().sum::<f64>() / 30.0;
        let sd = (runs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / 29.0).sqrt();
        let sem = sd / 30f64.sqrt();
        assert!((mean - exact).abs() <= 3.0 * sem, "case {i}: mean {mean} exact {exact} sem {sem}");
    }
}

#[test]
fn estimates_do_not_depend_on_thread_count() {
    let h = PatternGraph::clique(3).unwrap();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let d = estimate_tail_direct(&h, 12, 0.4, 60, 5000, 3).unwrap();
            let s = estimate_tail_importance(&h, 12, 0.4, 60, Planting::Hub { k: 2, q: 0.7 }, 3000, 3).unwrap();
            (d.point.to_bits(), d.stderr.to_bits(), s.point.to_bits(), s.stderr.to_bits())
        })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn exact_tail_extremes() {
    for (h, n) in [(PatternGraph::clique(3).unwrap(), 5), (PatternGraph::star(2).unwrap(), 6), (PatternGraph::cycle(4).unwrap(), 5)] {
        let max = count_labelled(&h, &HostGraph::complete(n)).unwrap().to_u128().unwrap();
        assert_eq!(exact_tail(&h, n, 0.3, 0).unwrap().point, 1.0);
        assert_eq!(exact_tail(&h, n, 0.3, max + 1).unwrap().point, 0.0);
    }
}
