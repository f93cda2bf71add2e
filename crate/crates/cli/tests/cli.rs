use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::NamedTempFile;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_uppertail"));
    c.env_remove("UPPERTAIL_CONFIG").env_remove("UPPERTAIL_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn file(text: &str) -> NamedTempFile {
    let mut f = NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn without_wall(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("wall_seconds");
    v
}

const K4_PLUS_PENDANT: &str = "n 5\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n3 4\n";

#[test]
fn rate_path() {
    let v = json(&["rate", "--pattern", "path:4", "--delta", "1"]);
    assert_eq!(v["rate"].as_f64().unwrap(), 0.5);
    assert_eq!(v["inputs"]["pattern"], "path:4");
    assert_eq!(v["seed"], 0);
    assert!(v["version"].is_string());
    assert!(v["wall_seconds"].is_number());
}

#[test]
fn rate_star_with_model_parameters() {
    let v = json(&["rate", "--pattern", "star:2", "--delta", "1", "--n", "100", "--p", "0.2"]);
    assert!(v["regime"].is_string());
    assert!(v["margins"].is_object());
    assert!((v["speed"].as_f64().unwrap() - 643.775).abs() < 1e-2);
}

#[test]
fn analyze_star() {
    let v = json(&["analyze-pattern", "star:3"]);
    assert_eq!(v["alpha_star"], 3);
    assert_eq!(v["aut"], 6);
    assert_eq!(v["v"], 4);
    assert_eq!(v["e"], 3);
}

#[test]
fn analyze_cycle_has_half_integral_alpha() {
    let v = json(&["analyze-pattern", "cycle:5"]);
    assert_eq!(v["alpha_star"].as_f64().unwrap(), 2.5);
    assert_eq!(v["regular"], true);
}

#[test]
fn exact_tail() {
    let v = json(&["tail", "--pattern", "star:2", "--n", "3", "--p", "0.5", "--method", "exact", "--threshold", "2"]);
    assert_eq!(v["point"].as_f64().unwrap(), 0.5);
    assert_eq!(v["threshold"], 2);
}

#[test]
fn sampled_tails_are_deterministic() {
    for extra in [
        &["--method", "direct"][..],
        &["--method", "importance", "--planting", "hub:1", "--q", "0.6"][..],
    ] {
        let mut args = vec!["--seed", "11", "tail", "--pattern", "star:2", "--n", "8", "--p", "0.3", "--delta", "0.5"];
        args.extend_from_slice(extra);
        args.extend_from_slice(&["--samples", "4000"]);
        let a = without_wall(json(&args));
        let b = without_wall(json(&args));
        assert_eq!(a, b);
        let mut threads = vec!["--threads", "1"];
        threads.extend_from_slice(&args);
        assert_eq!(a, without_wall(json(&threads)));
    }
}

#[test]
fn count_and_edge_count() {
    let g = file(K4_PLUS_PENDANT);
    let path = g.path().to_str().unwrap();
    let v = json(&["count", "--pattern", "clique:3", "--graph", path]);
    assert_eq!(v["count"], 24);
    let v = json(&["count", "--pattern", "clique:3", "--graph", path, "--unlabelled"]);
    assert_eq!(v["count"], 4);
    let v = json(&["count", "--pattern", "clique:3", "--graph", path, "--edge", "0,1"]);
    assert_eq!(v["count"], 12);
}

#[test]
fn budget_exhaustion_exits_3() {
    let g = file(K4_PLUS_PENDANT);
    assert_eq!(
        code(&["count", "--pattern", "clique:3", "--graph", g.path().to_str().unwrap(), "--max-nodes", "1"]),
        3
    );
}

#[test]
fn detect_clique_and_defaults() {
    let g = file(K4_PLUS_PENDANT);
    let v = json(&["detect", "--graph", g.path().to_str().unwrap(), "--event", "clique", "--size", "4"]);
    assert_eq!(v["found"], "yes");
    assert_eq!(v["inputs"]["chi"].as_f64().unwrap(), 0.1);
    let mut w: Vec<String> = v["witness"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap().to_string())
        .collect();
    w.sort();
    assert_eq!(w, ["0", "1", "2", "3"]);
}

#[test]
fn core_reports_default_epsilon() {
    let g = file(K4_PLUS_PENDANT);
    let v = json(&[
        "core", "--graph", g.path().to_str().unwrap(), "--pattern", "clique:3", "--delta", "1", "--p", "0.3",
    ]);
    assert_eq!(v["inputs"]["epsilon"].as_f64().unwrap(), 0.05);
    assert!(v["remaining_edges"].is_array());
}

#[test]
fn meanfield_reports_ratio() {
    let v = json(&["meanfield", "--r", "2", "--n", "200", "--p", "0.05", "--delta", "0.5"]);
    assert!(v["psi_upper"].as_f64().unwrap() > 0.0);
    assert!(v["ratio"].as_f64().unwrap() > 0.0);
    assert!(v["planted"]["k"].is_number());
}

#[test]
fn poisson_fit_runs() {
    let v = json(&[
        "--seed", "3", "experiment", "poisson-fit", "--pattern", "clique:3", "--n", "30", "--p", "0.05", "--samples",
        "2000",
    ]);
    let tv = v.to_string();
    assert!(tv.contains("tv"), "{tv}");
}

#[test]
fn config_file_overrides_defaults_and_flags_win() {
    let cfg = file("chi = 0.25\nseed = 9\n");
    let g = file(K4_PLUS_PENDANT);
    let path = g.path().to_str().unwrap();
    let v = json(&["--config", cfg.path().to_str().unwrap(), "detect", "--graph", path, "--event", "clique", "--size", "4"]);
    assert_eq!(v["inputs"]["chi"].as_f64().unwrap(), 0.25);
    assert_eq!(v["seed"], 9);
    let v = json(&[
        "--config", cfg.path().to_str().unwrap(), "--seed", "1", "detect", "--graph", path, "--event", "clique", "--size",
        "4", "--chi", "0.2",
    ]);
    assert_eq!(v["inputs"]["chi"].as_f64().unwrap(), 0.2);
    assert_eq!(v["seed"], 1);
}

#[test]
fn config_from_environment() {
    let cfg = file("epsilon = 0.2\n");
    let out = bin()
        .env("UPPERTAIL_CONFIG", cfg.path())
        .args(["meanfield", "--r", "2", "--n", "100", "--p", "0.05", "--delta", "0.5"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["inputs"]["epsilon"].as_f64().unwrap(), 0.2);
}

#[test]
fn bad_config_exits_2() {
    let cfg = file("colour = 3\n");
    assert_eq!(code(&["--config", cfg.path().to_str().unwrap(), "analyze-pattern", "star:2"]), 2);
}

#[test]
fn invalid_inputs_exit_2() {
    assert_eq!(code(&["rate", "--pattern", "path:4", "--delta", "1", "--n", "10", "--p", "1.5"]), 2);
    assert_eq!(code(&["rate", "--pattern", "path:4", "--delta", "-1"]), 2);
    assert_eq!(code(&["rate", "--pattern", "path:4", "--delta", "0"]), 2);
    assert_eq!(code(&["analyze-pattern", "blob:3"]), 2);
    assert_eq!(code(&["tail", "--pattern", "star:2", "--n", "5", "--p", "0.2"]), 2);
    assert_eq!(code(&["nonsense"]), 2);
}

#[test]
fn malformed_graph_exits_2() {
    let g = file("n 3\n0 1\n1\n");
    assert_eq!(code(&["count", "--pattern", "path:2", "--graph", g.path().to_str().unwrap()]), 2);
    let g = file("0 1\n");
    assert_eq!(code(&["count", "--pattern", "path:2", "--graph", g.path().to_str().unwrap()]), 2);
    assert_eq!(code(&["count", "--pattern", "path:2", "--graph", "/nonexistent/graph.txt"]), 2);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("out.json");
    let out = run(&["--output", target.to_str().unwrap(), "analyze-pattern", "star:2"]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(target).unwrap()).unwrap();
    assert_eq!(v["aut"], 2);
}

#[test]
fn time_cap_exits_3() {
    let mut text = String::from("n 30\n");
    for u in 0..30 {
        for v in u + 1..30 {
            text += &format!("{u} {v}\n");
        }
    }
    let g = file(&text);
    let path = g.path().to_str().unwrap();
    assert_eq!(code(&["count", "--pattern", "path:6", "--graph", path, "--max-seconds", "0.001"]), 3);
    assert_eq!(code(&["count", "--pattern", "path:6", "--graph", path, "--max-seconds", "0"]), 2);
}
