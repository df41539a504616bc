use std::process::{Command, Output};

use serde_json::Value;

fn lexineq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lexineq")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn solve_reciprocal_with_verification() {
    let out = lexineq(&["solve", "1/Z >= 1", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["schema"], "lexineq/1");
    assert_eq!(doc["problem"]["kind"], "fractional");
    assert_eq!(doc["solution"]["region"]["transforms"][0]["kind"], "invert");
    let disc = &doc["classification"][0];
    assert_eq!(disc["shape"], "disc");
    assert_eq!(disc["center"]["re"], 0.5);
    assert_eq!(disc["radius"], 0.5);
    assert_eq!(doc["verification"]["passed"], true);
    assert_eq!(doc["verification"]["mismatches"].as_array().unwrap().len(), 0);
}

#[test]
fn solve_writes_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let out = lexineq(&["solve", "Z^2 + 1 >= 0", "--json", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["problem"], serde_json::json!({
        "kind": "quadratic",
        "a": {"re": 1.0, "im": 0.0},
        "b": {"re": 0.0, "im": 0.0},
        "c": {"re": 1.0, "im": 0.0},
    }));
    assert_eq!(doc["classification"][0]["shape"], "hyperbola_domain");
}

#[test]
fn translate_serializes_flat() {
    let out = lexineq(&["solve", "Z >= 1+2i"]);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["solution"]["region"]["base"], serde_json::json!({"re": 1.0, "im": 2.0}));
    let out = lexineq(&["solve", "(Z - 1)^2 >= 0"]);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    let ts = doc["solution"]["region"]["transforms"].as_array().unwrap();
    assert_eq!(ts.last().unwrap(), &serde_json::json!({"kind": "translate", "re": 1.0, "im": 0.0}));
}

#[test]
fn check_examples() {
    let out = lexineq(&["check", "Z^2 >= 0", "--at", "i"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "out\n");
    assert_eq!(stdout(&lexineq(&["check", "1/Z >= 1", "--at", "0.5"])), "in\n");
    assert_eq!(stdout(&lexineq(&["check", "1/Z >= 1", "--at", "0"])), "pole\n");
    assert_eq!(stdout(&lexineq(&["check", "Z >= 0 && i*Z >= 0", "--at", "1-i"])), "in\n");
}

#[test]
fn errors_exit_with_one() {
    for args in [
        &["solve", "Z^3 >= 0"][..],
        &["solve", "Z + W >= 0"],
        &["solve", "Z >= "],
        &["check", "Z >= 0", "--at", "Z"],
        &["raster", "Z >= 0", "--res", "1,5", "--out", "/dev/null"],
        &["frobnicate"],
    ] {
        let out = lexineq(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let out = lexineq(&["solve", "Z + W >= 0"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("W"));
}

#[test]
fn raster_pgm_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let pgm = dir.path().join("r.pgm");
    let out = lexineq(&["raster", "Z >= 0", "--window", "-1,1,-1,1", "--res", "3,3", "--out", pgm.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&pgm).unwrap(), "P2\n3 3\n2\n0 2 2\n0 2 2\n0 0 2\n");

    let csv = dir.path().join("r.csv");
    let out = lexineq(&[
        "raster", "1/Z >= 1", "--window", "-1,1,-1,1", "--res", "3,3", "--format", "csv", "--out", csv.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "re,im,state");
    assert_eq!(lines.len(), 10);
    assert!(lines.contains(&"0,0,pole"));
}

#[test]
fn laws_report() {
    let out = lexineq(&["laws", "--seed", "42", "--samples", "2000"]);
    assert_eq!(out.status.code(), Some(0));
    let reports: Vec<Value> = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(reports.len(), 10);
    for r in &reports {
        if r["law"] == "complex_scalar_monotonicity" {
            assert_eq!(r["outcome"], "counterexample");
            assert_eq!(r["witness"].as_array().unwrap().len(), 3);
        } else {
            assert_eq!(r["outcome"], "pass", "{r}");
        }
    }
}

#[test]
fn help_and_version_succeed() {
    assert!(lexineq(&["--help"]).status.success());
    assert!(lexineq(&["--version"]).status.success());
}

#[test]
fn verification_guards_real_part_ties() {
    use lexineq::oracle::{verify, GridSpec};
    use lexineq::{solver::solve_quadratic, Complex, InequalityProblem};

    // The default grid hits Re (Z-1)^2 = 0 exactly on two diagonals, where
    // the solver and direct evaluation round the real part differently.
    let (a, b, c) = (Complex::ONE, Complex::new(-2.0, 0.0), Complex::new(1.0, -2.0));
    let solution = solve_quadratic(a, b, c).unwrap();
    let report = verify(&InequalityProblem::Quadratic { a, b, c }, &solution, &GridSpec::default_window(), 1e-6);
    assert!(!report.passed);
    assert_eq!(report.skipped_tie, 0);

    let out = lexineq(&["solve", "(Z - 1)^2 >= 2i", "--verify"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["verification"]["passed"], true);
    assert!(doc["verification"]["skipped_tie"].as_u64().unwrap() > 0);
}
