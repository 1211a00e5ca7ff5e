// SPDX-License-Identifier: Apache-2.0

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn pqwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pqwalk"))
        .args(args)
        .env_remove("OQRW_MAX_KMAX")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn error_json(out: &Output, code: i32) -> Value {
    assert_eq!(out.status.code(), Some(code), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stderr).expect("stderr is one JSON object")
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines().map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn repr_matches_bit_flip_matrix() {
    let out = stdout(&pqwalk(&["repr", "gallery:bit_flip", "p=0.4"]));
    let (p, r) = (0.4, 0.6);
    let want = [
        [p, 0.0, 0.0, r],
        [0.0, p, r, 0.0],
        [0.0, r, p, 0.0],
        [r, 0.0, 0.0, p],
    ];
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 4);
    for (i, row) in rows.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            let v: f64 = cell.parse().unwrap();
            assert!((v - want[i][j]).abs() < 1e-12, "({i},{j})");
        }
    }
}

#[test]
fn gallery_json_feeds_repr() {
    let dir = tempfile::tempdir().unwrap();
    let json = stdout(&pqwalk(&["gallery", "amplitude_damping", "--param", "p=0.3"]));
    let path = write(dir.path(), "ch.json", &json);
    let from_file = stdout(&pqwalk(&["repr", &path]));
    let from_gallery = stdout(&pqwalk(&["repr", "gallery:amplitude_damping", "p=0.3"]));
    assert_eq!(from_file, from_gallery);
    let list: Value = serde_json::from_str(&stdout(&pqwalk(&["gallery", "--list"]))).unwrap();
    assert!(list["walks"].as_array().unwrap().iter().any(|v| v == "hadamard_split"));
}

#[test]
fn classify_reports_pq_structure() {
    let v: Value = serde_json::from_str(&stdout(&pqwalk(&["classify", "gallery:bit_flip", "p=0.4"]))).unwrap();
    assert_eq!(v["pq"], true);
    assert_eq!(v["P"][0][0].as_f64().unwrap(), 0.4);
    assert_eq!(v["spectral"]["ergodic"], false);
    assert!(v["unitary_mixture"].is_object());
    let v: Value = serde_json::from_str(&stdout(&pqwalk(&["classify", "gallery:unitary_qubit", "theta=0.5"]))).unwrap();
    assert_eq!(v["pq"], false);
    let out = pqwalk(&["classify", "--format", "csv", "gallery:bit_flip", "p=0.4"]);
    assert_eq!(error_json(&out, 2)["error"], "usage");
}

#[test]
fn simulate_classical_walk() {
    let out = stdout(&pqwalk(&["simulate", "--walk", "gallery:classical_symmetric", "--steps", "6"]));
    let rows = csv_rows(&out);
    assert_eq!(rows[0], ["n", "S_n", "cumulative_return"]);
    assert_eq!(rows.len(), 8);
    let c2: f64 = rows[3][2].parse().unwrap();
    assert!((c2 - 0.5).abs() < 1e-15);
    let s1: f64 = rows[2][1].parse().unwrap();
    assert!((s1 - 1.0).abs() < 1e-15);
}

#[test]
fn same_seed_same_bytes() {
    let args = |seed: &'static str| {
        [
            "simulate",
            "--walk",
            "gallery:case2",
            "--param",
            "x=0.3",
            "--param",
            "y=0.6",
            "--rho0",
            "random",
            "--steps",
            "40",
            "--seed",
            seed,
        ]
    };
    let a = pqwalk(&args("7"));
    let b = pqwalk(&args("7"));
    assert_eq!(stdout(&a), stdout(&b));
    let c = pqwalk(&args("8"));
    assert_ne!(stdout(&a), stdout(&c));
}

#[test]
fn empty_window_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let walk = write(
        dir.path(),
        "w.json",
        r#"{"dim": 1, "L": {"rows":1,"cols":1,"re":[[0.6]]}, "R": {"rows":1,"cols":1,"re":[[0.8]]}, "window": [3, -3]}"#,
    );
    let err = error_json(&pqwalk(&["simulate", "--walk", &walk, "--steps", "2"]), 2);
    assert_eq!(err["error"], "empty_window");
}

#[test]
fn window_too_small_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let walk = write(
        dir.path(),
        "w.json",
        r#"{"dim": 1, "L": {"rows":1,"cols":1,"re":[[0.6]]}, "R": {"rows":1,"cols":1,"re":[[0.8]]}, "window": [-3, 3]}"#,
    );
    let err = error_json(&pqwalk(&["simulate", "--walk", &walk, "--steps", "5"]), 2);
    assert_eq!(err["error"], "window_too_small");
}

#[test]
fn parse_and_io_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{ not json");
    assert_eq!(error_json(&pqwalk(&["repr", &bad]), 3)["error"], "parse");
    let missing = dir.path().join("missing.json");
    assert_eq!(error_json(&pqwalk(&["repr", missing.to_str().unwrap()]), 3)["error"], "io");
    assert_eq!(error_json(&pqwalk(&["repr", "gallery:bit_flip", "p"]), 3)["error"], "parse");
}

#[test]
fn contract_errors_exit_2() {
    assert_eq!(error_json(&pqwalk(&["repr", "gallery:nope"]), 2)["error"], "unknown_gallery");
    assert_eq!(
        error_json(&pqwalk(&["repr", "gallery:bit_flip", "p=1.5"]), 2)["error"],
        "parameter_out_of_range"
    );
    assert_eq!(error_json(&pqwalk(&["frobnicate"]), 2)["error"], "usage");
    assert_eq!(error_json(&pqwalk(&["--tol", "-1", "repro", "classical"]), 2)["error"], "usage");
}

#[test]
fn kmax_cap_and_override() {
    let args = ["first-return", "--walk", "gallery:classical_symmetric", "--kmax", "13"];
    assert_eq!(error_json(&pqwalk(&args), 4)["error"], "cap_exceeded");
    let out = Command::new(env!("CARGO_BIN_EXE_pqwalk"))
        .args(args)
        .env("OQRW_MAX_KMAX", "13")
        .output()
        .unwrap();
    assert_eq!(csv_rows(&stdout(&out)).len(), 14);
    let out = Command::new(env!("CARGO_BIN_EXE_pqwalk"))
        .args(args)
        .env("OQRW_MAX_KMAX", "lots")
        .output()
        .unwrap();
    assert_eq!(error_json(&out, 3)["error"], "parse");
}

#[test]
fn first_return_matches_case_formula() {
    for walk in ["gallery:case1", "gallery:case2", "gallery:case3"] {
        let out = stdout(&pqwalk(&["first-return", "--walk", walk, "--param", "x=0.3", "--rho0", "random", "--kmax", "6"]));
        let rows = csv_rows(&out);
        assert_eq!(rows[0], ["k", "exact", "case_formula", "abs_diff"]);
        for row in &rows[1..] {
            assert!(row[3].parse::<f64>().unwrap() < 1e-10, "{walk}: {row:?}");
        }
    }
    let out = stdout(&pqwalk(&["first-return", "--walk", "gallery:hadamard_split", "--kmax", "3"]));
    assert!(csv_rows(&out)[1][2].is_empty());
}

#[test]
fn recurrence_series() {
    let out = stdout(&pqwalk(&["recurrence", "--case", "1", "--l11sq", "0.5", "--l22sq", "0.5", "--kmax", "8"]));
    let sums: Vec<f64> = csv_rows(&out)[1..].iter().map(|r| r[2].parse().unwrap()).collect();
    assert_eq!(sums.len(), 8);
    assert!(sums.windows(2).all(|w| w[1] > w[0]));
    assert!((sums[0] - 0.5).abs() < 1e-15);
    let v: Value = serde_json::from_str(&stdout(&pqwalk(&[
        "recurrence", "--case", "2", "--x", "0.2", "--kmax", "200", "--format", "json",
    ])))
    .unwrap();
    assert_eq!(v["verdict"]["recurrent"], false);
    let last = v["partial_sums"].as_array().unwrap().last().unwrap().as_f64().unwrap();
    assert!((last - v["limit"].as_f64().unwrap()).abs() < 1e-4);
    let err = pqwalk(&["recurrence", "--case", "3", "--x", "0.2", "--y", "0.4", "--kmax", "5"]);
    assert_eq!(error_json(&err, 2)["error"], "unsupported");
    let err = pqwalk(&["recurrence", "--case", "2", "--x", "0.2", "--kmax", "5000"]);
    assert_eq!(error_json(&err, 4)["error"], "cap_exceeded");
}

#[test]
fn stationary_barrier_report() {
    let dir = tempfile::tempdir().unwrap();
    let walk = write(dir.path(), "b.json", r#"{"barrier": {"p11": 0.3, "p22": 0.3, "window_hi": 402}}"#);
    let traces = dir.path().join("traces.csv");
    let out = stdout(&pqwalk(&[
        "stationary",
        "--walk",
        &walk,
        "--horizon",
        "400",
        "--tol",
        "1e-8",
        "--traces",
        traces.to_str().unwrap(),
    ]));
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "positive_recurrent_evidence");
    assert!((v["trace_at_site"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    assert!(v["normalized_stationarity_residual"].as_f64().unwrap() < 1e-8);
    let csv = std::fs::read_to_string(traces).unwrap();
    assert!(csv.starts_with("site,trace\n0,"));
}

#[test]
fn check_stationary_candidate() {
    let dir = tempfile::tempdir().unwrap();
    let walk = write(
        dir.path(),
        "w.json",
        r#"{"dim": 1, "window": [0, 1], "transitions": [
            {"from": 0, "to": 1, "matrix": {"rows":1,"cols":1,"re":[[1]]}},
            {"from": 1, "to": 0, "matrix": {"rows":1,"cols":1,"re":[[1]]}}]}"#,
    );
    let op = |a: f64, b: f64| {
        format!(
            r#"{{"dim": 1, "blocks": [{{"site": 0, "matrix": {{"rows":1,"cols":1,"re":[[{a}]]}}}},
                {{"site": 1, "matrix": {{"rows":1,"cols":1,"re":[[{b}]]}}}}]}}"#
        )
    };
    let good = write(dir.path(), "good.json", &op(0.5, 0.5));
    let v: Value =
        serde_json::from_str(&stdout(&pqwalk(&["check-stationary", "--walk", &walk, "--candidate", &good]))).unwrap();
    assert_eq!(v["stationary"], true);
    let bad = write(dir.path(), "bad.json", &op(0.2, 0.8));
    let v: Value =
        serde_json::from_str(&stdout(&pqwalk(&["check-stationary", "--walk", &walk, "--candidate", &bad]))).unwrap();
    assert_eq!(v["stationary"], false);
    assert!((v["max_residual"].as_f64().unwrap() - 0.6).abs() < 1e-12);
}

#[test]
fn every_repro_suite_passes() {
    for suite in ["appendix", "theorem51", "amplitude-damping", "barrier", "landau-streater", "classical"] {
        let out = stdout(&pqwalk(&["repro", suite]));
        let rows = csv_rows(&out);
        assert!(rows.len() > 1);
        for row in &rows[1..] {
            assert_ne!(row.last().unwrap(), "FAIL", "{suite}: {row:?}");
        }
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.csv");
    let out = pqwalk(&["repro", "classical", "--out", path.to_str().unwrap()]);
    assert!(stdout(&out).is_empty());
    assert!(std::fs::read_to_string(path).unwrap().starts_with("check,"));
}
