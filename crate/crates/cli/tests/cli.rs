use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn psl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_psl")).args(args).output().expect("run psl")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

fn tmp(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

#[test]
fn table_c4_tsv() {
    let out = psl(&["table-c4", "--out", "tsv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).skip(1).collect();
    assert_eq!(rows.len(), 36);
    let marks: String = rows.iter().map(|r| r.split('\t').nth(2).unwrap()).collect();
    assert_eq!(marks, "TAA******A*A***********A*****ATA*AAA");
}

#[test]
fn klein_stats() {
    let out = psl(&["stats", "--model", "klein", "--cset", "e;0,1;1,1", "--bset", "0,0;0,-1;1,-1;1,0", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["report"]["product_size"], 8);
    assert_eq!(v["report"]["fiber_histogram"], serde_json::json!([[1, 5], [2, 2], [3, 1]]));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(psl(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(psl(&["stats", "--model", "torus", "--cset", "e", "--bset", "e"]).status.code(), Some(1));
    assert_eq!(psl(&["stats", "--model", "klein", "--cset", "e;0,1", "--bset", "1,2,3"]).status.code(), Some(1));
    assert_eq!(psl(&["table-c4", "--out", "dot"]).status.code(), Some(1));
    assert_eq!(psl(&["--help"]).status.code(), Some(0));
}

#[test]
fn certificate_round_trip() {
    let path = tmp("control2.json");
    let out = psl(&["certify", "--control", "2", "--out-path", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = psl(&["verify-cert", "--in", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["verified"], true);

    let mut cert: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    cert["report"]["beta"]["terms"] = serde_json::json!({ "x": 1 });
    let bad = tmp("control2_mutated.json");
    std::fs::write(&bad, cert.to_string()).unwrap();
    let out = psl(&["verify-cert", "--in", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("certificate rejected"));
}

#[test]
fn unit_control() {
    let out = psl(&["certify", "--control", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["kind"], "Unit");
}

#[test]
fn klein_graph_dot() {
    let out = psl(&["graph", "--model", "klein", "--cset", "e;0,1;1,1", "--bset", "0,0;0,-1;1,-1;1,0", "--out", "dot"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("// command=graph seed=0 verdict=ok"));
    assert!(text.contains("graph"));
}

#[test]
fn worker_count_does_not_change_reports() {
    let run = |w: &str| {
        Command::new(env!("CARGO_BIN_EXE_psl"))
            .env("PSL_WORKERS", w)
            .args(["atoms", "--model", "klein", "--cset", "e;0,1;1,1", "--k", "4", "--radius", "3"])
            .output()
            .unwrap()
    };
    let a = run("1");
    let b = run("4");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["report"]["kappa_min"], 4);
}

#[test]
fn scan_supports_klein() {
    let out = psl(&["scan-supports", "--model", "klein", "--cset", "e;0,1;1,1", "--radius", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["kernel_dims"], serde_json::json!([0, 0]));
    assert_eq!(v["report"]["zero_divisor_excluded_through"], 12);
    assert_eq!(v["restricted"], true);
}

#[test]
fn desk_checks_hold() {
    let out = psl(&["desk-checks"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["checks"].as_array().unwrap().len(), 7);
}

// Two listed cube witnesses fail (fifth powers hold instead), so the
// command reports a contradiction.
#[test]
fn pairs_report_listed_witness_failures() {
    let out = psl(&["pairs"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_eq!(v["report"]["pair_count"], 210);
    assert_eq!(v["report"]["exceptional"], v["report"]["published_exceptional"]);
    let failures: Vec<&str> =
        v["report"]["listed_witness_failures"].as_array().unwrap().iter().map(|f| f.as_str().unwrap()).collect();
    assert_eq!(failures, ["(19,28): (yx^-1)^3 != 1", "(23,27): (xy^-1)^3 != 1"]);
}
