use std::process::Command;

use serde_json::Value;

fn run(args: &[&str]) -> (Option<i32>, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_symflag")).args(args).output().unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (out.status.code(), json, String::from_utf8_lossy(&out.stderr).into_owned())
}

#[test]
fn hasse_counts() {
    let (code, r, _) = run(&["hasse", "--case", "A", "--n", "7", "--l", "4"]);
    assert_eq!(code, Some(0));
    assert_eq!(r["cells"].as_array().unwrap().len(), 4);
    assert_eq!(r["double_coset_reps"].as_array().unwrap().len(), 2);
    let (_, r, _) = run(&["hasse", "--case", "C", "--n", "5"]);
    assert_eq!(r["cells"].as_array().unwrap().len(), 4);
}

#[test]
fn usage_errors_exit_one() {
    let (code, _, err) = run(&["hasse", "--case", "A", "--n", "7", "--l", "3"]);
    assert_eq!(code, Some(1));
    assert!(err.contains("l > 3"));
    assert_eq!(run(&["hasse", "--case", "C", "--n", "5", "--l", "4"]).0, Some(1));
    assert_eq!(run(&["frobnicate"]).0, Some(1));
    let path = std::env::temp_dir().join(format!("symflag-bad-{}.json", std::process::id()));
    std::fs::write(&path, r#"{"ambient":4,"subspaces":[{"name":"x","basis":[["1/0",1,0,0]]}]}"#).unwrap();
    let (code, _, err) = run(&["orbits", "--case", "A", "--n", "7", "--l", "4", "--subspaces", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code, Some(1));
    assert!(err.contains("zero denominator"));
}

#[test]
fn verify_theorem_verdicts() {
    let (code, r, _) = run(&["verify-theorem", "--case", "A", "--n", "9", "--l", "5", "--samples", "5"]);
    assert_eq!(code, Some(0));
    let reps = r["representatives"].as_array().unwrap();
    let lengths: Vec<u64> = reps.iter().map(|x| x["length"].as_u64().unwrap()).collect();
    assert_eq!(lengths, vec![1, 4]);
    assert!(reps[0]["verdict"].as_str().unwrap().starts_with("symmetric"));
    assert!(reps[1]["verdict"].as_str().unwrap().starts_with("not symmetric"));
    assert_eq!(r["seed"], 0);
    assert_eq!(r["samples"], 5);
}

#[test]
fn flat_bracket_is_detected() {
    let (code, r, _) = run(&["kgroup-check", "--case", "C", "--n", "5", "--mu-scale", "0", "--samples", "3"]);
    assert_eq!(code, Some(2));
    let checks = r["checks"].as_array().unwrap();
    let get = |n: &str| checks.iter().find(|c| c["name"] == n).unwrap()["passed"].as_bool().unwrap();
    assert!(get("jacobi"));
    assert!(!get("deformation_nontrivial"));
}

#[test]
fn orbit_pairs() {
    let path = std::env::temp_dir().join(format!("symflag-orbits-{}.json", std::process::id()));
    std::fs::write(
        &path,
        r#"{"ambient":4,"subspaces":[{"name":"W3","basis":[[1,1,0,0]]},{"name":"W4","basis":[[1,1,0,0]]},{"name":"T","basis":[[0,0,1,0]]}]}"#,
    )
    .unwrap();
    let (code, r, _) = run(&["orbits", "--case", "A", "--n", "7", "--l", "4", "--subspaces", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code, Some(0));
    let pairs = r["pairs"].as_array().unwrap();
    assert_eq!(pairs[0]["same_orbit"], true);
    assert!(pairs[0]["transporter"].is_array());
    assert_eq!(pairs[1]["same_orbit"], false);
    assert_eq!(pairs[1]["triple"], serde_json::json!([[0, 1, 0], [0, 0, 0]]));
}
