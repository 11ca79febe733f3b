//! End-to-end tests of the `tising` binary: routing, determinism, file
//! format errors, and sentinel reporting.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn tising(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tising"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn threshold_er_p3_matches_known_value() {
    let dir = tempfile::tempdir().unwrap();
    let out = tising(dir.path(), &["threshold", "--er", "--p", "3"]);
    let v = json_of(&out);
    let beta_star = v["beta_star"].as_f64().unwrap();
    assert!((beta_star - 0.672).abs() < 0.002, "beta* = {beta_star}");
}

#[test]
fn mle_beta_sentinel_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = tising(
        dir.path(),
        &[
            "estimate", "--method", "mle-beta", "--h", "0", "--p", "4", "--n", "32", "--xbar",
            "0",
        ],
    );
    let v = json_of(&out);
    assert!(v["report"]["estimate"].is_null());
    assert_eq!(v["report"]["sentinel"], "-inf");
}

#[test]
fn sample_is_byte_identical_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "sample", "--model", "sk", "--p", "2", "--n", "30", "--beta", "0.5", "--count", "10",
        "--sweeps", "50", "--seed", "7", "--out",
    ];
    let mut a = args.to_vec();
    a.push("a.txt");
    tising(dir.path(), &a);
    let mut b = args.to_vec();
    b.push("b.txt");
    tising(dir.path(), &b);
    let fa = fs::read(dir.path().join("a.txt")).unwrap();
    let fb = fs::read(dir.path().join("b.txt")).unwrap();
    assert!(!fa.is_empty());
    assert_eq!(fa, fb);
}

#[test]
fn cw_magnetizations_use_exact_path() {
    let dir = tempfile::tempdir().unwrap();
    let out = tising(
        dir.path(),
        &[
            "sample", "--model", "cw", "--p", "2", "--n", "100", "--beta", "0.3", "--count",
            "25", "--seed", "3", "--magnetizations", "--out", "m.txt",
        ],
    );
    assert!(out.status.success());
    let meta: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("m.json")).unwrap()).unwrap();
    assert_eq!(meta["method"], "exact-pmf");
    let rows = fs::read_to_string(dir.path().join("m.txt")).unwrap();
    assert_eq!(rows.lines().count(), 25);
}

#[test]
fn malformed_edge_file_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.edges"), "2 4\n0 1 0.5\n0 oops 1.0\n").unwrap();
    fs::write(dir.path().join("x.txt"), "1 -1 1 -1\n").unwrap();
    let out = tising(
        dir.path(),
        &[
            "estimate", "--method", "mple", "--edge-file", "bad.edges", "--data", "x.txt",
        ],
    );
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "stderr: {err}");
}

#[test]
fn pmple_echoes_lambda_schedule() {
    let dir = tempfile::tempdir().unwrap();
    let n = 40;
    let d = 3;
    fs::write(dir.path().join("net.txt"), "0 1 0.5\n1 2 0.5\n").unwrap();
    let mut cov = String::new();
    let mut resp = String::new();
    for i in 0..n {
        cov.push_str(&format!("{}, {}, {}\n", (i % 2) * 2 - 1, ((i / 2) % 2) * 2 - 1, 1));
        resp.push_str(if i % 3 == 0 { "-1\n" } else { "1\n" });
    }
    fs::write(dir.path().join("z.csv"), cov).unwrap();
    fs::write(dir.path().join("y.txt"), resp).unwrap();
    let out = tising(
        dir.path(),
        &[
            "estimate", "--method", "pmple", "--network", "net.txt", "--covariates", "z.csv",
            "--responses", "y.txt",
        ],
    );
    let v = json_of(&out);
    let lambda = v["penalized"]["lambda"].as_f64().unwrap();
    let expect = ((d as f64 + 1.0).ln() / n as f64).sqrt();
    assert!((lambda - expect).abs() < 1e-12, "{lambda} vs {expect}");
}

#[test]
fn phasediagram_tsv_symmetric_in_h() {
    let dir = tempfile::tempdir().unwrap();
    let out = tising(
        dir.path(),
        &[
            "phasediagram", "--p", "4", "--beta-min", "0.05", "--beta-max", "0.8", "--h-min",
            "-0.4", "--h-max", "0.4", "--grid", "9", "--out", "pd.tsv",
        ],
    );
    assert!(out.status.success());
    let tsv = fs::read_to_string(dir.path().join("pd.tsv")).unwrap();
    // rows are beta-major over a 9x9 grid with h symmetric about zero
    let kinds: Vec<&str> = tsv
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split('\t').nth(2).unwrap())
        .collect();
    assert_eq!(kinds.len(), 81);
    for bi in 0..9 {
        for hi in 0..9 {
            assert_eq!(kinds[bi * 9 + hi], kinds[bi * 9 + (8 - hi)]);
        }
    }
}

#[test]
fn gof_emits_verdict_and_band() {
    let dir = tempfile::tempdir().unwrap();
    // small ring graph with p = 2
    let mut edges = String::from("2 16\n");
    for i in 0..16u32 {
        let j = (i + 1) % 16;
        let (a, b) = (i.min(j), i.max(j));
        edges.push_str(&format!("{a} {b} 1.0\n"));
    }
    fs::write(dir.path().join("g.edges"), edges).unwrap();
    let row: String = (0..16)
        .map(|i| if i % 2 == 0 { "1" } else { "-1" })
        .collect::<Vec<_>>()
        .join(" ");
    fs::write(dir.path().join("x.txt"), row + "\n").unwrap();
    let out = tising(
        dir.path(),
        &[
            "gof", "--graph", "g.edges", "--data", "x.txt", "--sims", "25", "--seed", "5",
            "--burn-in", "50",
        ],
    );
    let v = json_of(&out);
    assert!(v["report"]["verdict"].is_string());
    assert!(v["report"]["band"].is_array());
}

#[test]
fn mc_coverage_runs() {
    let dir = tempfile::tempdir().unwrap();
    let out = tising(
        dir.path(),
        &[
            "mc", "--kind", "coverage", "--target", "h", "--beta", "0.5", "--h", "0.2", "--p",
            "3", "--n", "400", "--reps", "40", "--seed", "2",
        ],
    );
    let v = json_of(&out);
    let cov = v["coverage"]["coverage"].as_f64().unwrap();
    assert!((0.5..=1.0).contains(&cov), "coverage {cov}");
}
