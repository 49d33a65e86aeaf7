use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_idealcover"))
        .args(args)
        .env_remove("IDEALCOVER_OUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("structured output is json")
}

#[test]
fn cover_reports_seven_for_r22() {
    let out = run(&[
        "cover",
        "--family",
        "Rnq",
        "--n",
        "2",
        "--q",
        "2",
        "--side",
        "left",
        "--format",
        "structured",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["eta"], 7);
    assert_eq!(v["certificate"], "forced-equals-upper");
    assert_eq!(v["cover"].as_array().unwrap().len(), 7);
    assert_eq!(v["elapsed_ms"], 0);
}

#[test]
fn cover_reports_infinity_on_the_right() {
    let out = run(&[
        "cover",
        "--family",
        "Rnq",
        "--n",
        "1",
        "--q",
        "3",
        "--side",
        "right",
        "--format",
        "structured",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["eta"], "infinity");
    assert_eq!(v["certificate"], "uncoverable-proof");
}

#[test]
fn solvers_agree() {
    let a = run(&[
        "cover",
        "--family",
        "null",
        "--p",
        "2",
        "--r",
        "3",
        "--side",
        "two-sided",
        "--format",
        "csv",
    ]);
    let b = run(&[
        "cover",
        "--family",
        "null",
        "--p",
        "2",
        "--r",
        "3",
        "--side",
        "two-sided",
        "--format",
        "csv",
        "--solver",
        "exhaustive",
    ]);
    let eta = |o: &Output| {
        stdout(o)
            .lines()
            .nth(1)
            .unwrap()
            .split(',')
            .nth(1)
            .unwrap()
            .to_string()
    };
    assert_eq!(eta(&a), "3");
    assert_eq!(eta(&b), "3");
}

#[test]
fn verify_grid_passes() {
    let out = run(&[
        "verify",
        "--theorem",
        "main",
        "--qmax",
        "4",
        "--nmax",
        "2",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "q,n,order,eta_computed,eta_formula,match,elementary,forced,maximal,elapsed_ms"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r.split(',').nth(5) == Some("true")));
    assert!(rows.contains(&"3,2,729,13,13,true,true,13,13,0"));
}

#[test]
fn verify_two_sided() {
    let out = run(&[
        "verify",
        "--theorem",
        "two-sided",
        "--primes",
        "2,3,5",
        "--format",
        "structured",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    let etas: Vec<u64> = v["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["eta_computed"].as_u64().unwrap())
        .collect();
    assert_eq!(etas, vec![3, 4, 6]);
}

#[test]
fn radical_of_null_ring_file_is_everything() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("null.ring");
    let out = run(&[
        "construct",
        "--family",
        "null",
        "--p",
        "3",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&[
        "radical",
        "--ring",
        path.to_str().unwrap(),
        "--format",
        "structured",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["radical"]["order"], "9");
    assert_eq!(v["radical"]["rows"], serde_json::json!([[1, 0], [0, 1]]));
}

#[test]
fn radical_methods_and_decomposition() {
    for method in ["quasi-regular", "dorroh"] {
        let out = run(&[
            "radical",
            "--family",
            "Rnq",
            "--n",
            "2",
            "--q",
            "2",
            "--method",
            method,
            "--decompose",
            "--format",
            "structured",
        ]);
        assert_eq!(out.status.code(), Some(0));
        let v = json(&out);
        assert_eq!(v["radical"]["order"], "4");
        assert_eq!(v["decomposition"]["k"], serde_json::json!([]));
        assert_eq!(v["decomposition"]["splits"], true);
    }
    let out = run(&[
        "radical",
        "--family",
        "Rnq",
        "--n",
        "1",
        "--q",
        "2",
        "--method",
        "maximal-left",
    ]);
    assert_eq!(
        out.status.code(),
        Some(2),
        "non-unital ring needs another method"
    );
}

#[test]
fn exchange_file_round_trips_through_the_cli() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.ring");
    let p = path.to_str().unwrap();
    assert_eq!(
        run(&[
            "construct",
            "--family",
            "Rnq",
            "--n",
            "1",
            "--q",
            "4",
            "--ideals",
            "left",
            "-o",
            p
        ])
        .status
        .code(),
        Some(0)
    );
    let first = std::fs::read_to_string(&path).unwrap();
    let again = run(&["construct", "--ring", p, "--ideals", "left"]);
    assert_eq!(stdout(&again), first);
    let from_file = run(&["cover", "--ring", p, "--format", "structured"]);
    let from_family = run(&[
        "cover",
        "--family",
        "Rnq",
        "--n",
        "1",
        "--q",
        "4",
        "--format",
        "structured",
    ]);
    assert_eq!(json(&from_file)["cover"], json(&from_family)["cover"]);
    assert_eq!(json(&from_file)["eta"], 5);
}

#[test]
fn ideals_and_elementary() {
    let out = run(&[
        "ideals",
        "--family",
        "Rnq",
        "--n",
        "1",
        "--q",
        "2",
        "--side",
        "two-sided",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 4);
    let out = run(&[
        "ideals",
        "--family",
        "Rnq",
        "--n",
        "2",
        "--q",
        "2",
        "--maximal",
        "--format",
        "structured",
    ]);
    assert_eq!(json(&out)["ideals"].as_array().unwrap().len(), 7);
    let out = run(&[
        "elementary",
        "--family",
        "Rnq",
        "--n",
        "1",
        "--q",
        "2",
        "--format",
        "structured",
    ]);
    let v = json(&out);
    assert_eq!(v["elementary"], true);
    assert_eq!(v["quotients"].as_array().unwrap().len(), 2);
    let out = run(&["elementary", "--family", "matrix", "--n", "2", "--q", "2"]);
    assert!(stdout(&out).contains("elementary: false"));
}

#[test]
fn scan_finds_two_elementary_classes() {
    let out = run(&[
        "scan",
        "--p",
        "2",
        "--d",
        "2",
        "--elementary-only",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 3);
}

#[test]
fn exit_codes() {
    assert_eq!(
        run(&["cover", "--family", "Rnq", "--n", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["cover"]).status.code(), Some(2));
    assert_eq!(
        run(&["cover", "--family", "Rnq", "--n", "1", "--q", "2", "--side", "up"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["cover", "--ring", "/nonexistent/file.ring"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&[
            "construct",
            "--family",
            "null",
            "--p",
            "2",
            "--format",
            "csv"
        ])
        .status
        .code(),
        Some(2)
    );
    let guard = run(&[
        "cover",
        "--family",
        "Rnq",
        "--n",
        "2",
        "--q",
        "2",
        "--max-elements",
        "16",
    ]);
    assert_eq!(guard.status.code(), Some(3));
    let ideals = run(&[
        "ideals",
        "--family",
        "Rnq",
        "--n",
        "2",
        "--q",
        "2",
        "--max-ideals",
        "3",
    ]);
    assert_eq!(ideals.status.code(), Some(3));
    assert_eq!(
        run(&["scan", "--p", "3", "--d", "3"]).status.code(),
        Some(3)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn malformed_ring_file_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.ring");
    std::fs::write(
        &path,
        "{\"p\": 2, \"dim\": 2, \"table\": [[[0,1],[1,0]],[[0,0],[0,0]]]}",
    )
    .unwrap();
    let out = run(&["cover", "--ring", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not associative"));
}

#[test]
fn reports_are_reproducible_across_thread_counts() {
    let args = [
        "cover",
        "--family",
        "null",
        "--p",
        "3",
        "--r",
        "3",
        "--side",
        "left",
        "--format",
        "structured",
    ];
    let base = stdout(&run(&args));
    for threads in ["1", "3"] {
        let mut with = vec!["--threads", threads];
        with.extend(args);
        assert_eq!(stdout(&run(&with)), base);
    }
    let v = ["verify", "--qmax", "3", "--nmax", "2"];
    assert_eq!(stdout(&run(&v)), stdout(&run(&v)));
}

#[test]
fn output_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_idealcover"))
        .args([
            "verify",
            "--theorem",
            "two-sided",
            "--primes",
            "2",
            "--format",
            "csv",
        ])
        .env("IDEALCOVER_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written =
        std::fs::read_to_string(Path::new(dir.path()).join("verify-two-sided.csv")).unwrap();
    assert!(written.starts_with("q,p,order,"));
    assert!(written.contains("2,2,4,3,3,true,true,3,3,0"));
}
