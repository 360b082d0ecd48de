//! End-to-end tests of the command-line interface, run against the compiled
//! binary.

use std::process::{Command, Output};

fn sscg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sscg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn generate_writes_the_seed_edge_list() {
    let out = sscg(&["generate", "--model", "nonfractal", "--n", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("2 1 nonfractal 0\n"), "got: {text}");
    assert!(text.contains("0 1 I"));
}

#[test]
fn solve_reports_optimum_count_and_witnesses_as_json() {
    let out = sscg(&[
        "solve",
        "--model",
        "fractal",
        "--n",
        "2",
        "--problem",
        "dominating-set",
        "--constraint",
        "k2",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["optimum"], 3);
    assert_eq!(v["count"], "2");
    assert_eq!(v["count_log2"], 1);
    assert_eq!(v["constraint"], "k2");
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 2);
}

#[test]
fn solve_reads_graphs_back_from_exported_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.edges");
    let out = sscg(&[
        "generate",
        "--model",
        "nonfractal",
        "--n",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = sscg(&[
        "solve",
        "--input",
        path.to_str().unwrap(),
        "--problem",
        "independent-set",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["optimum"], 8);
    assert_eq!(v["count"], "1");
    assert_eq!(v["model"], "nonfractal");
}

#[test]
fn predict_emits_csv_rows_per_level() {
    let out = sscg(&[
        "predict",
        "--model",
        "fractal",
        "--problem",
        "matching",
        "--n-range",
        "1..3",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,s0,s1,s2,headline,count_decimal,count_log2");
    assert_eq!(lines[1], "1,1,1,2,2,2,1");
    assert_eq!(lines[2], "2,5,5,6,6,8,3");
    assert_eq!(lines[3], "3,21,21,22,22,128,7");
}

#[test]
fn predict_closed_form_leaves_unverified_cells_empty() {
    let out = sscg(&[
        "predict",
        "--model",
        "fractal",
        "--problem",
        "dominating-set",
        "--n-range",
        "2..3",
        "--source",
        "closed-form",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[1], "2,3,3,3,3,2,1");
    // The k0 formula is only confirmed at the base level, so the level-3
    // cell stays empty.
    assert_eq!(lines[2], "3,,9,8,8,16,4");
}

#[test]
fn verify_passes_with_documented_divergences() {
    let out = sscg(&["verify", "--max-level", "3"]);
    assert!(out.status.success(), "verify exited nonzero");
    let text = stdout(&out);
    assert!(text.contains("2 known divergences"), "got: {text}");
    assert!(text.contains("0 mismatches"), "got: {text}");
}

#[test]
fn stats_reports_degree_and_distance_data() {
    let out = sscg(&["stats", "--model", "fractal", "--n", "2"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["vertices"], 12);
    assert_eq!(v["average_degree"], 3.5);
    assert_eq!(v["roles"]["hub"], 2);
}

#[test]
fn export_writes_one_file_per_level() {
    let dir = tempfile::tempdir().unwrap();
    let out = sscg(&[
        "export",
        "--model",
        "fractal",
        "--n-range",
        "0..2",
        "--dir",
        dir.path().to_str().unwrap(),
    ]);
    assert!(out.status.success());
    for n in 0..=2 {
        let path = dir.path().join(format!("fractal-n{n}.edges"));
        assert!(path.exists(), "missing {}", path.display());
    }
}

#[test]
fn usage_and_capability_errors_use_distinct_exit_codes() {
    let out = sscg(&[
        "solve",
        "--model",
        "martian",
        "--n",
        "1",
        "--problem",
        "matching",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = sscg(&["generate", "--model", "fractal", "--n", "30"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn flags_override_environment_settings() {
    let out = Command::new(env!("CARGO_BIN_EXE_sscg"))
        .args(["generate", "--model", "fractal", "--n", "2"])
        .env("SSCG_MAX_LEVEL", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "env cap should reject level 2");

    let out = Command::new(env!("CARGO_BIN_EXE_sscg"))
        .args([
            "generate",
            "--model",
            "fractal",
            "--n",
            "2",
            "--max-level",
            "2",
        ])
        .env("SSCG_MAX_LEVEL", "1")
        .output()
        .unwrap();
    assert!(out.status.success(), "flag should override the env cap");
}

#[test]
fn table_prints_both_families() {
    let out = sscg(&["table", "--problem", "dominating-set", "--max-level", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("fractal / dominating-set"));
    assert!(text.contains("nonfractal / dominating-set"));
    assert!(text.contains("(count column tracks the k2 class)"));
}
