use std::path::Path;
use std::process::{Command, Output};

fn gvm(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gvm"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str], dir: &Path) -> String {
    let out = gvm(args, dir);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn generate_hrg(dir: &Path) {
    ok(&["generate", "--family", "hrg", "--n", "40", "--seed", "3", "--out-prefix", "h"], dir);
}

#[test]
fn maximize_is_byte_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    generate_hrg(d);
    for out in ["a.csv", "b.csv"] {
        ok(
            &[
                "maximize", "--graph", "h.edges", "--colours", "h.colours.csv", "--budget", "4",
                "--rounds", "6", "--method", "all", "--evaluator", "montecarlo:200", "--seed",
                "9", "--out", out,
            ],
            d,
        );
    }
    let a = std::fs::read(d.join("a.csv")).unwrap();
    assert_eq!(a, std::fs::read(d.join("b.csv")).unwrap());
    assert_eq!(
        std::fs::read(d.join("a.seeds.csv")).unwrap(),
        std::fs::read(d.join("b.seeds.csv")).unwrap()
    );

    let rows = gvm::io::read_results(&d.join("a.csv")).unwrap();
    assert_eq!(rows.len(), 11 * 5);
    for r in &rows {
        assert!((r.expected_blue / 40.0 - r.expected_blue_fraction).abs() < 1e-12);
    }
}

#[test]
fn simulate_is_byte_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    generate_hrg(d);
    for out in ["a.csv", "b.csv"] {
        ok(
            &[
                "simulate", "--graph", "h.edges", "--colours", "h.colours.csv", "--rounds", "10",
                "--runs", "300", "--seed", "1", "--out", out,
            ],
            d,
        );
    }
    let a = std::fs::read_to_string(d.join("a.csv")).unwrap();
    assert_eq!(a, std::fs::read_to_string(d.join("b.csv")).unwrap());
    assert!(a.starts_with("round,mean_blue,stderr\n"));
    assert_eq!(a.lines().count(), 12);
}

#[test]
fn analyze_exp_period() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    ok(&["generate", "--family", "exp-period", "--n", "5", "--seed", "0", "--out-prefix", "p"], d);
    let report = ok(&["analyze", "--graph", "p.edges"], d);
    assert!(report.contains("strongly_connected: false"), "{report}");
    assert!(report.contains("scc_count: 5"), "{report}");

    let leaves = ok(&["enumerate", "--graph", "p.edges", "--colours", "p.colours.csv"], d);
    assert!(leaves.contains("leaves: 1"), "{leaves}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let missing = gvm(&["analyze", "--graph", "nope.edges"], d);
    assert_eq!(missing.status.code(), Some(2));

    let usage = gvm(&["simulate", "--graph", "x"], d);
    assert_eq!(usage.status.code(), Some(1));

    std::fs::write(d.join("neg.edges"), "a b -1\n").unwrap();
    let invalid = gvm(&["analyze", "--graph", "neg.edges"], d);
    assert_eq!(invalid.status.code(), Some(1));
    assert!(!invalid.stderr.is_empty());
}

#[test]
fn bench_runs_a_budget_config() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    generate_hrg(d);
    let config = "graph = h.edges\nred_count = 4\nbudget_max = 3\nrounds = 5\nmethods = greedy,indeg-red\nseed = 2\n";
    std::fs::write(d.join("exp.conf"), config).unwrap();
    ok(&["bench", "--config", "exp.conf", "--out", "res.csv"], d);
    let rows = gvm::io::read_results(&d.join("res.csv")).unwrap();
    assert_eq!(rows.len(), 2 * 4);
}
