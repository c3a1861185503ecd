use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use linked_bandits::harness::{read_csv, CSV_HEADER};

const BIN: &str = env!("CARGO_BIN_EXE_linked-bandits");

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn cli(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn run_to(dir: &Path, name: &str, args: &[&str]) -> Vec<u8> {
    let out = dir.join(name);
    let mut full = vec!["run"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", out.to_str().unwrap()]);
    let res = cli(&full);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    std::fs::read(out).unwrap()
}

const ONE_SPARSE: &[&str] = &[
    "--scenario",
    "one-sparse",
    "--n-grid",
    "5,8",
    "--delta",
    "0.1",
    "--strategy",
    "all",
    "--trials",
    "4",
    "--seed",
    "42",
];

#[test]
fn one_sparse_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let a = run_to(dir.path(), "a.csv", ONE_SPARSE);
    let b = run_to(dir.path(), "b.csv", ONE_SPARSE);
    assert_eq!(a, b);
    assert_eq!(a, std::fs::read(golden("one_sparse.csv")).unwrap());
}

#[test]
fn file_scenario_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let means = golden("means.txt");
    let args = [
        "--scenario",
        "file",
        "--means",
        means.to_str().unwrap(),
        "--delta",
        "0.1",
        "--strategy",
        "all",
        "--trials",
        "3",
        "--seed",
        "5",
    ];
    let a = run_to(dir.path(), "a.csv", &args);
    assert_eq!(a, std::fs::read(golden("file_scenario.csv")).unwrap());
}

#[test]
fn csv_layout() {
    let text = std::fs::read_to_string(golden("one_sparse.csv")).unwrap();
    assert_eq!(text.lines().next().unwrap(), CSV_HEADER.join(","));
    assert!(!text.contains('\r'));
    let rows = read_csv(&golden("one_sparse.csv")).unwrap();
    assert_eq!(rows.len(), 2 * 3 * 4);
    assert!(rows
        .iter()
        .all(|r| r.fail_reason.is_none() && r.plays_line5 <= r.plays_total));
}

#[test]
fn single_strategy_row_count_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("plot.svg");
    let out = dir.path().join("u.csv");
    let res = cli(&[
        "run",
        "--scenario",
        "increasing",
        "--n",
        "5",
        "--delta",
        "0.1",
        "--strategy",
        "uniform",
        "--trials",
        "3",
        "--seed",
        "1",
        "--out",
        out.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(res.status.success());
    assert_eq!(read_csv(&out).unwrap().len(), 3);
    assert!(std::fs::read_to_string(svg).unwrap().starts_with("<svg"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let out = out.to_str().unwrap();

    assert_eq!(cli(&["--help"]).status.code(), Some(0));
    assert_eq!(cli(&["run", "--scenario", "one-sparse"]).status.code(), Some(1));
    let bad_scenario = cli(&[
        "run",
        "--scenario",
        "zigzag",
        "--n",
        "4",
        "--delta",
        "0.1",
        "--out",
        out,
    ]);
    assert_eq!(bad_scenario.status.code(), Some(1));
    let bad_delta = cli(&[
        "run",
        "--scenario",
        "increasing",
        "--n",
        "4",
        "--delta",
        "1.5",
        "--out",
        out,
    ]);
    assert_eq!(bad_delta.status.code(), Some(1));
    let missing = cli(&[
        "run",
        "--scenario",
        "file",
        "--means",
        "/nonexistent/means.txt",
        "--delta",
        "0.1",
        "--out",
        out,
    ]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(!Path::new(out).exists());

    let starved = dir.path().join("starved.txt");
    std::fs::write(&starved, "1.0\n0.5\n").unwrap();
    let capped = cli(&[
        "run",
        "--scenario",
        "file",
        "--means",
        starved.to_str().unwrap(),
        "--delta",
        "0.1",
        "--strategy",
        "maximal",
        "--trials",
        "2",
        "--play-cap",
        "1000",
        "--out",
        out,
    ]);
    assert_eq!(capped.status.code(), Some(2));
    let rows = read_csv(Path::new(out)).unwrap();
    assert!(rows
        .iter()
        .all(|r| r.fail_reason.as_deref() == Some("play cap") && !r.correct));
}

#[test]
fn bounds_and_play_subcommands() {
    let dir = tempfile::tempdir().unwrap();
    let means = dir.path().join("m.txt");
    std::fs::write(&means, "0.5\n0.25\n").unwrap();
    let m = means.to_str().unwrap();

    let res = cli(&["bounds", "--means", m, "--delta", "0.1"]);
    assert!(res.status.success());
    let text = String::from_utf8(res.stdout).unwrap();
    for needle in [
        "bound maximal: 324.81",
        "bound uniform: 83.88",
        "bound ege: 67.51",
        "bound lower: 41.44",
        "convention:",
    ] {
        assert!(text.contains(needle), "{needle} missing from\n{text}");
    }

    let a = cli(&["play", "--means", m, "--select", "1,2", "--seed", "3"]);
    let b = cli(&["play", "--means", m, "--select", "1,2", "--seed", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8(a.stdout).unwrap().starts_with("sampled: 1"));
    assert_eq!(
        cli(&["play", "--means", m, "--select", "2,1", "--seed", "3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        cli(&["play", "--means", m, "--select", "0", "--seed", "3"])
            .status
            .code(),
        Some(1)
    );
}
