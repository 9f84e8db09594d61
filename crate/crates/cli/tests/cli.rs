use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_char2lift"))
        .args(args)
        .env_remove("CHAR2LIFT_MOD_BITS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn verify_lift_passes_known_graph() {
    let out = run(&["verify-lift", "--kind", "I", "--e", "4", "--f", "2", "-x", "2*P2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["kind"], "graphI");
}

#[test]
fn verify_lift_reports_failure_with_exit_one() {
    let out = run(&["verify-lift", "--kind", "I", "--e", "4", "--f", "2", "-x", "P2"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["passed"], false);
}

#[test]
fn enumerate_matches_expected_classes() {
    let out = run(&["enumerate", "--family", "S", "--n", "7", "--e", "3", "--workers", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        r#"{"family":"S","n":7,"e":3,"provenance":"exhaustive","classes":[[0,0],[0,4]]}"#
    );
    let csv = run(&["enumerate", "--family", "S", "--n", "5", "--e", "3", "--format", "csv"]);
    assert_eq!(String::from_utf8(csv.stdout).unwrap(), "c2,c3\n0,0\n0,4\n");
}

#[test]
fn predict_counts() {
    let out = run(&["predict", "--family", "T", "--e", "6", "--parity", "even"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["count"], 16);
    let text = run(&["predict", "--family", "S", "--e", "5", "--n", "9", "--format", "text"]);
    assert_eq!(String::from_utf8(text.stdout).unwrap().trim(), "16");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["verify-lift", "--kind", "II", "--e", "4", "--f", "2", "-x", "2*P2"]).status.code(), Some(2));
    assert_eq!(run(&["enumerate", "--family", "S", "--n", "3"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["class", "-x", "P0+", "--e", "3"]).status.code(), Some(2));
    assert_eq!(run(&["predict", "--family", "T", "--e", "6", "--format", "csv"]).status.code(), Some(2));
    assert_eq!(run(&["witness-u", "--e", "3", "--targets", "1,0"]).status.code(), Some(2));
}

#[test]
fn construct_lift_round_trips() {
    for args in [
        vec!["construct-lift", "--kind", "I", "--e", "5", "--f", "3"],
        vec!["construct-lift", "--kind", "II", "--e", "4"],
        vec!["construct-lift", "--kind", "I", "--e", "6", "--f", "4", "--tournament"],
        vec!["construct-lift", "--kind", "II", "--e", "6", "--tournament"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let v = json(&out);
        assert_eq!(v["certificate"]["passed"], true);
        let expr = v["expr"].as_str().unwrap().to_string();
        let e = v["e"].to_string();
        let mut verify = vec!["verify-lift", "--kind", args[2], "--e", &e, "-x", &expr];
        let f;
        if let Some(x) = v["f"].as_u64() {
            f = x.to_string();
            verify.extend(["--f", f.as_str()]);
        }
        assert_eq!(run(&verify).status.code(), Some(0), "{expr}");
    }
}

#[test]
fn charpoly_and_class_agree() {
    let out = run(&["charpoly", "-x", "P3+P1", "--of", "jm2a"]);
    assert_eq!(json(&out)["coeffs"], serde_json::json!([1, -4, 0, 8, 0]));
    let modded = Command::new(env!("CARGO_BIN_EXE_char2lift"))
        .args(["charpoly", "-x", "P3+P1", "--of", "jm2a"])
        .env("CHAR2LIFT_MOD_BITS", "4")
        .output()
        .unwrap();
    assert_eq!(json(&modded)["coeffs"], serde_json::json!([1, 12, 0, 8, 0]));
    let class = run(&["class", "-x", "P3+P1", "--e", "4"]);
    assert_eq!(json(&class)["class"], serde_json::json!([0, 8, 0]));
    let m = run(&["class", "--matrix", "1,1,1;1,1,1;1,1,1", "--e", "3", "--family", "S"]);
    assert_eq!(json(&m)["class"], serde_json::json!([0, 0]));
    let bad = run(&["class", "--matrix", "1,-1;1,1", "--e", "3", "--family", "S"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn walks_of_tournament_and_graph() {
    let out = run(&["walks", "-x", "T3", "--depth", "5"]);
    assert_eq!(json(&out)["walks"], serde_json::json!([5, 10, 16, 26, 48, 83]));
    let out = run(&["walks", "-x", "2*P2", "--depth", "3"]);
    assert_eq!(json(&out)["walks"], serde_json::json!([4, 4, 4, 4]));
}

#[test]
fn witness_and_report() {
    let out = run(&["witness-u", "--e", "3", "--targets", "2,0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["d"], serde_json::json!([7, 2]));
    assert_eq!(v["class"], serde_json::json!([2, 0]));
    let out = run(&["report", "--family", "S", "--e", "3", "--n", "3,5,7"]);
    assert_eq!(out.status.code(), Some(0));
    for row in json(&out)["rows"].as_array().unwrap() {
        assert_eq!(row["observed"], 2);
        assert_eq!(row["predicted"], 2);
        assert_eq!(row["bound_ok"], true);
    }
}

#[test]
fn sample_is_deterministic_and_writes_files() {
    let dir = std::env::temp_dir().join(format!("char2lift-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s.json");
    let args = ["sample", "--family", "T", "--n", "9", "--e", "4", "--trials", "2000", "--seed", "3"];
    let a = run(&args);
    let b = run(&[&args[..], &["--out", path.to_str().unwrap()]].concat());
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(String::from_utf8(a.stdout).unwrap(), std::fs::read_to_string(&path).unwrap());
    assert_eq!(run(&["sample", "--family", "T", "--n", "9", "--e", "4", "--trials", "10"]).status.code(), Some(2));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn selftest_passes() {
    let out = run(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], true);
}
