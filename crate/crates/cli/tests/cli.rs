use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn covenc(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_covenc"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("failed to spawn covenc")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Value of `key` in a `key=value` stats line.
fn field(line: &str, key: &str) -> Option<u64> {
    line.split_whitespace()
        .find_map(|kv| kv.strip_prefix(key)?.strip_prefix('='))
        .and_then(|v| v.parse().ok())
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = covenc(dir, args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

#[test]
fn interval_graph_direct_encoding_has_forty_clauses() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(d, &["gen-graph", "interval", "--n", "5", "--variant", "I", "--out", "g.txt"]);
    let line = ok(d, &["encode", "--graph", "g.txt", "--strategy", "direct", "--out", "f.cnf"]);
    assert_eq!(field(&line, "clauses"), Some(40));
    let cnf = fs::read_to_string(d.join("f.cnf")).unwrap();
    assert!(cnf.starts_with("p cnf 10 40\n"));
    assert!(d.join("f.cnf.map").exists());
}

#[test]
fn recursive_encoding_of_forty_points_is_within_bound() {
    let tmp = TempDir::new().unwrap();
    let line = ok(tmp.path(), &["encode", "--strategy", "recursiveBlocks", "--n", "40", "--out", "r.cnf"]);
    let clauses = field(&line, "clauses").unwrap();
    assert!(clauses <= 221_392, "{clauses}");
    assert_eq!(line.lines().count(), 1);
}

#[test]
fn verify_isp_passes_for_each_strategy_on_small_interval_graph() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(d, &["gen-graph", "interval", "--n", "6", "--variant", "I0", "--out", "g.txt"]);
    for strategy in ["direct", "cliqueCover", "bicliqueCover"] {
        ok(d, &["encode", "--graph", "g.txt", "--strategy", strategy, "--out", "f.cnf"]);
        let out = ok(d, &["verify", "isp", "--graph", "g.txt", "--cnf", "f.cnf", "--map", "f.cnf.map"]);
        assert!(out.starts_with("result=pass"), "{strategy}: {out}");
    }
    ok(d, &[
        "encode", "--graph", "g.txt", "--strategy", "recursiveBlocks", "--blocks", "3", "--recursion-base", "2",
        "--out", "f.cnf",
    ]);
    let out = ok(d, &["verify", "isp", "--graph", "g.txt", "--cnf", "f.cnf", "--map", "f.cnf.map"]);
    assert!(out.starts_with("result=pass"));
}

#[test]
fn verify_isp_fails_with_exit_two_on_a_wrong_formula() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(d, &["gen-graph", "complete", "--n", "4", "--out", "k4.txt"]);
    ok(d, &["gen-graph", "cycle", "--n", "4", "--out", "c4.txt"]);
    ok(d, &["encode", "--graph", "c4.txt", "--strategy", "direct", "--out", "f.cnf"]);
    let out = covenc(d, &["verify", "isp", "--graph", "k4.txt", "--cnf", "f.cnf", "--map", "f.cnf.map"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).starts_with("result=fail"));
}

#[test]
fn verify_refuses_without_a_map() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(d, &["gen-graph", "complete", "--n", "3", "--out", "g.txt"]);
    ok(d, &["encode", "--graph", "g.txt", "--strategy", "direct", "--out", "f.cnf"]);
    let out = covenc(d, &["verify", "isp", "--graph", "g.txt", "--cnf", "f.cnf"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sampled_verification_requires_a_seed() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(d, &["gen-graph", "complete", "--n", "3", "--out", "g.txt"]);
    ok(d, &["encode", "--graph", "g.txt", "--strategy", "direct", "--out", "f.cnf"]);
    let args = ["verify", "isp", "--graph", "g.txt", "--cnf", "f.cnf", "--map", "f.cnf.map", "--mode", "sampled"];
    assert_eq!(covenc(d, &args).status.code(), Some(1));
    let mut seeded = args.to_vec();
    seeded.extend(["--seed", "5", "--samples", "100"]);
    assert!(ok(d, &seeded).starts_with("result=pass"));
}

#[test]
fn random_graphs_need_a_seed_and_are_reproducible() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    assert_eq!(covenc(d, &["gen-graph", "random", "--n", "10", "--p", "0.5"]).status.code(), Some(1));
    let a = ok(d, &["gen-graph", "random", "--n", "10", "--p", "0.5", "--seed", "9"]);
    let b = ok(d, &["gen-graph", "random", "--n", "10", "--p", "0.5", "--seed", "9"]);
    assert_eq!(a, b);
    assert!(a.starts_with("p graph 10 "));
}

#[test]
fn encode_output_is_byte_reproducible() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(d, &["gen-graph", "random", "--n", "12", "--p", "0.4", "--seed", "2", "--out", "g.txt"]);
    for out in ["a.cnf", "b.cnf"] {
        ok(d, &["encode", "--graph", "g.txt", "--strategy", "bicliqueCover", "--out", out]);
    }
    assert_eq!(fs::read(d.join("a.cnf")).unwrap(), fs::read(d.join("b.cnf")).unwrap());
    assert_eq!(fs::read(d.join("a.cnf.map")).unwrap(), fs::read(d.join("b.cnf.map")).unwrap());
}

#[test]
fn missing_input_is_an_io_error() {
    let tmp = TempDir::new().unwrap();
    let out = covenc(tmp.path(), &["encode", "--graph", "nope.txt", "--strategy", "direct", "--out", "f.cnf"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn unknown_strategy_and_subcommand_are_usage_errors() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    assert_eq!(covenc(d, &["frobnicate"]).status.code(), Some(1));
    let out = covenc(d, &["encode", "--n", "5", "--strategy", "magic", "--out", "f.cnf"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn interval_strategy_on_a_non_interval_graph_is_rejected() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(d, &["gen-graph", "petersen", "--out", "p.txt"]);
    let out = covenc(d, &["encode", "--graph", "p.txt", "--strategy", "block83", "--out", "f.cnf"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bva_preserves_projection_and_logs_steps() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(d, &["gen-graph", "complete", "--n", "8", "--out", "k8.txt"]);
    ok(d, &["encode", "--graph", "k8.txt", "--strategy", "direct", "--out", "f.cnf"]);
    let line = ok(d, &[
        "bva", "--cnf", "f.cnf", "--map", "f.cnf.map", "--out", "g.cnf", "--log", "steps.txt",
    ]);
    assert_eq!(field(&line, "clauses_before"), Some(28));
    assert!(field(&line, "clauses").unwrap() < 28);
    let log = fs::read_to_string(d.join("steps.txt")).unwrap();
    assert_eq!(log.lines().count() as u64, field(&line, "steps").unwrap());
    assert!(log.lines().all(|l| l.starts_with("step ") && l.contains("gain=")));
    let out = ok(d, &[
        "verify", "equisat", "--cnf", "f.cnf", "--map", "f.cnf.map", "--cnf2", "g.cnf", "--map2", "g.cnf.map",
    ]);
    assert!(out.starts_with("result=pass"));
}

#[test]
fn bva_without_map_names_input_variables() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    fs::write(d.join("f.cnf"), "p cnf 5 6\n-1 3 0\n-1 4 0\n-1 5 0\n-2 3 0\n-2 4 0\n-2 5 0\n").unwrap();
    let line = ok(d, &["bva", "--cnf", "f.cnf", "--out", "g.cnf", "--log", "log.txt"]);
    assert_eq!(field(&line, "clauses"), Some(5));
    assert_eq!(field(&line, "vars"), Some(6));
    let map = fs::read_to_string(d.join("g.cnf.map")).unwrap();
    assert!(map.contains("v(5)"));
}

#[test]
fn covers_round_trip_through_encode() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(d, &["gen-graph", "bipartite", "--a", "3", "--b", "4", "--out", "g.txt"]);
    let line = ok(d, &["cover", "--kind", "biclique", "--graph", "g.txt", "--out", "b.cov"]);
    assert_eq!(field(&line, "parts"), Some(1));
    let line = ok(d, &[
        "encode", "--graph", "g.txt", "--strategy", "bicliqueCover", "--cover", "b.cov", "--out", "f.cnf",
    ]);
    assert_eq!(field(&line, "clauses"), Some(7));
    let out = ok(d, &["verify", "isp", "--graph", "g.txt", "--cnf", "f.cnf", "--map", "f.cnf.map"]);
    assert!(out.starts_with("result=pass"));
    let out = covenc(d, &["encode", "--graph", "g.txt", "--strategy", "cliqueCover", "--cover", "b.cov", "--out", "f.cnf"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn kn_cover_weight_and_interval_cover() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let line = ok(d, &["cover", "--kind", "biclique", "--method", "kn", "--n", "16", "--out", "k.cov"]);
    assert!(field(&line, "weight").unwrap() <= 64);
    let line = ok(d, &["cover", "--kind", "clique", "--method", "interval", "--n", "4", "--out", "i.cov"]);
    assert_eq!(field(&line, "parts"), Some(2));
}

#[test]
fn problem_encodings_with_cardinality() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(d, &["gen-graph", "petersen", "--out", "p.txt"]);
    for (problem, k) in [("coloring", "3"), ("vertex-cover", "6"), ("clique", "2"), ("independent-set", "4")] {
        let line = ok(d, &[
            "encode", "--graph", "p.txt", "--strategy", "direct", "--problem", problem, "--k", k, "--out", "f.cnf",
        ]);
        assert!(line.contains(&format!("problem={problem}")));
        assert!(field(&line, "clauses").unwrap() > 0);
    }
    let out = covenc(d, &["encode", "--graph", "p.txt", "--strategy", "direct", "--problem", "coloring", "--out", "f.cnf"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn stats_compares_strategies() {
    let tmp = TempDir::new().unwrap();
    let out = ok(tmp.path(), &["stats", "--n", "12", "--variant", "I"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(field(lines[0], "clauses"), Some(1650));
    assert!(lines.iter().all(|l| l.starts_with("strategy=")));

    let d = tmp.path();
    ok(d, &["gen-graph", "cycle", "--n", "6", "--out", "c.txt"]);
    let out = ok(d, &["stats", "--graph", "c.txt", "--strategies", "direct,block83"]);
    assert!(out.contains("strategy=block83 blocks=auto status=not-applicable"));
}

#[test]
fn schedule_encode_solve_and_verify() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    fs::write(
        d.join("s.json"),
        r#"{"N": 3, "M": 2, "T": 5, "tasks": [{"d": 2, "r": 1, "e": 5}, {"d": 2, "r": 1, "e": 5}, {"d": 1, "r": 2, "e": 4}]}"#,
    )
    .unwrap();
    let out = ok(d, &["schedule", "--instance", "s.json", "--out", "s.cnf", "--solve"]);
    assert!(out.contains("result=sat"));
    assert_eq!(out.lines().filter(|l| l.starts_with("task=")).count(), 3);
    assert!(d.join("s.cnf.map").exists());
    assert!(ok(d, &["verify", "schedule", "--instance", "s.json"]).starts_with("result=pass"));
    assert!(ok(d, &["verify", "schedule", "--instance", "s.json", "--per-time"]).starts_with("result=pass"));

    fs::write(d.join("bad.json"), r#"{"N": 1, "M": 1}"#).unwrap();
    let out = covenc(d, &["schedule", "--instance", "bad.json", "--out", "b.cnf"]);
    assert_eq!(out.status.code(), Some(3));
}
