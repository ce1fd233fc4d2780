//! Command-level behavior beyond the golden files.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pathrisk"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("pathrisk-beh-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn paths_on_header_only_input_emits_origin_row() {
    let input = temp_file("empty.csv", "date,return\n");
    let out = stdout_of(&["paths", "-i", input.to_str().unwrap()]);
    assert_eq!(
        out,
        "date,path,running_max,drawdown,peak_time,duration\n,0,0,0,0,0\n"
    );
}

#[test]
fn lst_reports_none_when_threshold_unreachable() {
    let input = fixture("episode_path.csv");
    let out = stdout_of(&["lst", "-i", input.to_str().unwrap(), "--threshold", "50"]);
    assert_eq!(out, "threshold,stopping_time\n50,NONE\n");

    let json = stdout_of(&[
        "lst",
        "-i",
        input.to_str().unwrap(),
        "--threshold",
        "50",
        "--format",
        "json",
    ]);
    assert_eq!(json, "{\"threshold\": 50, \"stopping_time\": null}\n");
}

#[test]
fn axioms_pass_for_duration_transforms_and_fail_for_max_drawdown() {
    for transform in ["max-duration", "episode-duration"] {
        let out = stdout_of(&["axioms", "--transform", transform]);
        let passes = out.matches(",PASS,").count();
        assert_eq!(passes, 3, "expected three PASS lines, got:\n{out}");
    }

    let out = stdout_of(&["axioms", "--transform", "max-drawdown"]);
    assert!(out.contains("scaling_invariance,FAIL"), "{out}");
    assert!(out.contains("normalization,PASS"), "{out}");
    assert!(out.contains("shift_invariance,PASS"), "{out}");

    // The capped stopping time misses normalization on constant paths.
    let out = stdout_of(&["axioms", "--transform", "lst", "--threshold", "5"]);
    assert!(out.contains("normalization,FAIL"), "{out}");
    assert!(out.contains("shift_invariance,PASS"), "{out}");
    assert!(out.contains("scaling_invariance,PASS"), "{out}");
}

#[test]
fn episode_percent_converts_magnitude() {
    let input = fixture("episode_path.csv");
    let out = stdout_of(&["episode", "-i", input.to_str().unwrap(), "--percent"]);
    // 1 - exp(-0.08) = 0.0768836536.
    assert!(
        out.lines().nth(1).unwrap().ends_with("0.07688365361"),
        "{out}"
    );
}

#[test]
fn kappa_corr_duration_tracks_serial_correlation_best() {
    let out = stdout_of(&["kappa-corr", "--seed", "42"]);
    let row = out.lines().nth(1).unwrap();
    let cells: Vec<f64> = row.split(',').skip(5).map(|c| c.parse().unwrap()).collect();
    let (vol, es, ced, ce_delta) = (cells[0], cells[1], cells[2], cells[3]);
    assert!(ced > vol && ced > es, "{row}");
    assert!(ce_delta > vol && ce_delta > es, "{row}");
}
