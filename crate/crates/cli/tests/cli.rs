use std::path::Path;
use std::process::{Command, Output};

use lcx_core::io::parse_matching_sequence;
use lcx_core::parallel_greedy::verify_parallel_greedy;

fn lcx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcx"))
        .args(args)
        .env_remove("LCX_BUDGET_CYCLES")
        .env_remove("LCX_BUDGET_EXHAUSTIVE")
        .env_remove("LCX_BUDGET_ITERATIONS")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn generate_writes_verifiable_reproducible_files() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for target in [&a, &b] {
        let out = lcx(&["generate", "--n", "50", "--s", "8", "--rounds", "20", "--seed", "7", "--out", target.to_str().unwrap()]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    }
    let text = std::fs::read_to_string(a.join("seq-0000.txt")).unwrap();
    let seq = parse_matching_sequence(&text).unwrap();
    assert_eq!(verify_parallel_greedy(&seq, 8).unwrap(), None);
    for file in ["seq-0000.txt", "manifest.json"] {
        assert_eq!(std::fs::read(a.join(file)).unwrap(), std::fs::read(b.join(file)).unwrap());
    }
    let manifest: serde_json::Value = serde_json::from_slice(&std::fs::read(a.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["master_seed"], 7);
    assert_eq!(manifest["instances"][0]["n"], 50);
}

#[test]
fn generate_rejects_s_below_two() {
    let out = lcx(&["generate", "--n", "10", "--s", "1"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&lcx(&["check", "nonsense"])), 1);
    assert_eq!(code(&lcx(&["check", "dispersion", "--s", "1"])), 1);
    assert_eq!(code(&lcx(&["frobnicate"])), 1);
    assert_eq!(code(&lcx(&["--help"])), 0);
}

fn write_fixtures(dir: &Path) {
    let out = lcx(&["fixtures", "--out", dir.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn decompose_dumbbell_gives_one_cut() {
    let dir = tempfile::tempdir().unwrap();
    write_fixtures(dir.path());
    let graph = dir.path().join("dumbbell.graph");
    let weights = dir.path().join("dumbbell.weights");
    let out = lcx(&[
        "decompose", "--graph", graph.to_str().unwrap(), "--weights", weights.to_str().unwrap(),
        "--h", "1", "--s", "2", "--phi", "1/5", "--family", "singletons", "--check",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["complete"], true);
    assert_eq!(v["cuts"].as_array().unwrap().len(), 1);
    assert_eq!(v["slack"], "5/13");
    assert_eq!(v["checks"]["sequence"]["valid"], true);
    assert_eq!(v["checks"]["union"]["pass"], true);
}

#[test]
fn decompose_expander_gives_no_cuts() {
    let dir = tempfile::tempdir().unwrap();
    write_fixtures(dir.path());
    let graph = dir.path().join("expander.graph");
    let out = lcx(&["decompose", "--graph", graph.to_str().unwrap(), "--weights", "deg", "--h", "1", "--s", "2", "--phi", "1/3"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["cuts"].as_array().unwrap().len(), 0);
    assert_eq!(v["slack"], "0/1");
}

#[test]
fn decompose_malformed_graph_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("bad.graph");
    std::fs::write(&graph, "3 1\n0 7 1 1\n").unwrap();
    let out = lcx(&["decompose", "--graph", graph.to_str().unwrap(), "--h", "1", "--s", "2", "--phi", "1"]);
    assert_eq!(code(&out), 2);
    let missing = lcx(&["decompose", "--graph", "/nonexistent/g", "--h", "1", "--s", "2", "--phi", "1"]);
    assert_eq!(code(&missing), 2);
}

#[test]
fn decompose_budget_exits_three_with_partial_log() {
    let dir = tempfile::tempdir().unwrap();
    write_fixtures(dir.path());
    let graph = dir.path().join("dumbbell.graph");
    let args = ["decompose", "--graph", graph.to_str().unwrap(), "--h", "1", "--s", "2", "--phi", "1/5", "--family", "exhaustive:3"];
    let mut with_budget = args.to_vec();
    with_budget.extend(["--budget-exhaustive", "10"]);
    let out = lcx(&with_budget);
    assert_eq!(code(&out), 3);
    let v = json(&out);
    assert_eq!(v["complete"], false);
    assert!(v["stopped"].as_str().unwrap().contains("budget"));
}

#[test]
fn budget_env_var_applies_and_flag_wins() {
    let base = ["check", "cycles", "--instances", "3", "--n", "40", "--s", "10"];
    let env_only = Command::new(env!("CARGO_BIN_EXE_lcx"))
        .args(base)
        .env("LCX_BUDGET_CYCLES", "5")
        .output()
        .unwrap();
    assert_eq!(code(&env_only), 3);
    let mut with_flag = base.to_vec();
    with_flag.extend(["--budget-cycles", "100000000"]);
    let flag_wins = Command::new(env!("CARGO_BIN_EXE_lcx"))
        .args(&with_flag)
        .env("LCX_BUDGET_CYCLES", "5")
        .output()
        .unwrap();
    assert_eq!(code(&flag_wins), 0);
}

#[test]
fn check_output_is_independent_of_thread_count() {
    let run = |threads: &str| lcx(&["check", "hiker", "--instances", "12", "--threads", threads]);
    let (one, two) = (run("1"), run("3"));
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, two.stdout);
}

#[test]
fn check_out_writes_tables_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let out = lcx(&["check", "arboricity", "--instances", "5", "--report-ratio", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let table = std::fs::read_to_string(dir.path().join("arboricity.csv")).unwrap();
    assert!(table.lines().next().unwrap().contains("alpha_ratio"));
    assert_eq!(table.lines().count(), 6);
    assert!(dir.path().join("summary.csv").exists());
}
