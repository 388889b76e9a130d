use std::path::PathBuf;
use std::process::{Command, Output};

fn dstoch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dstoch"))
        .args(args)
        .env_remove("DSTOCH_MAX_N")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dstoch-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn count_by_shape() {
    let o = dstoch(&["count", "4", "--by-shape"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "4        1\n3+1      4\n2+2      3\n2+1+1    6\n1+1+1+1  1\ntotal    15\n"
    );
}

#[test]
fn count_totals() {
    assert_eq!(stdout(&dstoch(&["count", "3"])), "5\n");
    assert_eq!(stdout(&dstoch(&["count", "1"])), "1\n");
    let o = dstoch(&["count", "4", "--by-shape", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["total"], 15);
    assert_eq!(v["by_shape"][2]["shape"], "2+2");
    assert_eq!(v["by_shape"][2]["count"], 3);
    assert_eq!(dstoch(&["count", "0"]).status.code(), Some(2));
}

#[test]
fn enumerate_formats() {
    let o = dstoch(&["enumerate", "1"]);
    assert_eq!(stdout(&o), "#1 (1)  shape 1  rank 1\n[ 1 ]\n");

    let pretty = stdout(&dstoch(&["enumerate", "3", "--format", "pretty"]));
    assert_eq!(pretty.matches('#').count(), 5);
    assert!(pretty.starts_with("#1 (1,2,3)  shape 3  rank 1\n[ 1/3  1/3  1/3 ]\n"));
    assert!(pretty.contains("#5 (1)(2)(3)  shape 1+1+1  rank 3\n[ 1  0  0 ]"));

    let o = dstoch(&["enumerate", "4", "--format", "json"]);
    let records: Vec<dstoch_core::io::IdempotentJson> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(records.len(), 15);
    for r in &records {
        let e = r.to_idempotent().unwrap();
        assert_eq!(r.rank, Some(e.rank()));
    }

    let dot = stdout(&dstoch(&["enumerate", "3", "--format", "dot"]));
    assert!(dot.starts_with("digraph ideals_D3 {\n  rankdir=BT;"));
    assert_eq!(dot.matches(" -> ").count(), 6);
}

#[test]
fn enumerate_limit_and_override() {
    let o = dstoch(&["enumerate", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("exceeds the limit of 8"));
    let o = Command::new(env!("CARGO_BIN_EXE_dstoch"))
        .args(["lattice", "7", "--format", "table"])
        .env("DSTOCH_MAX_N", "7")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        dstoch(&["lattice", "7", "--format", "table"]).status.code(),
        Some(2)
    );
}

#[test]
fn membership_member() {
    // a = b = 1/4 instance of the (1,2) family in D_3
    let f = temp_file("member.csv", "1/2,1/4,1/4\n1/2,1/4,1/4\n0,1/2,1/2\n");
    let o = dstoch(&["membership", f.to_str().unwrap(), "--ideal", "(1,2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("member"));

    let json = temp_file(
        "member.json",
        r#"{"n":3,"rows":[["1/2","1/4","1/4"],["1/2","1/4","1/4"],["0","1/2","1/2"]]}"#,
    );
    let o = dstoch(&["membership", json.to_str().unwrap(), "--ideal", "(1,2)"]);
    assert_eq!(o.status.code(), Some(0));
    // columns 1,2 are not equal, so the left ideal rejects it
    let o = dstoch(&[
        "membership",
        json.to_str().unwrap(),
        "--ideal",
        "(1,2)",
        "--side",
        "left",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn membership_non_member() {
    let f = temp_file("identity.csv", "1,0,0\n0,1,0\n0,0,1\n");
    let o = dstoch(&["membership", f.to_str().unwrap(), "--ideal", "(1,2)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("rows 1,2 differ"), "{}", stdout(&o));

    let f = temp_file("stochastic.csv", "1/2,1/2,0\n1,0,0\n1/4,1/4,1/2\n");
    let o = dstoch(&["membership", f.to_str().unwrap(), "--ideal", "(1,2)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stdout(&o).contains("not doubly stochastic: column 1 sums to 7/4"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn membership_parse_errors() {
    let f = temp_file("bad.csv", "1/2,1/2\n1/2,1/0\n");
    let o = dstoch(&["membership", f.to_str().unwrap(), "--ideal", "(1,2)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2, column 5"), "{}", stderr(&o));

    let f = temp_file("ok.csv", "1/2,1/2\n1/2,1/2\n");
    let o = dstoch(&["membership", f.to_str().unwrap(), "--ideal", "(1,5)"]);
    assert_eq!(o.status.code(), Some(2));
    let o = dstoch(&["membership", "/nonexistent/m.csv", "--ideal", "(1,2)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn ideal_ops() {
    let o = dstoch(&["ideal-op", "meet", "--n", "4", "(3,4)", "(1,2)"]);
    assert_eq!(
        stdout(&o),
        "I^2_{(1,2),(3,4)}  generator (1,2)(3,4)  rank 2\n"
    );
    let o = dstoch(&["ideal-op", "join", "--n", "4", "(1,3,4)", "(1,2,4)"]);
    assert_eq!(stdout(&o), "I^3_{(1,4)}  generator (1,4)(2)(3)  rank 3\n");
    assert_eq!(
        dstoch(&["ideal-op", "contains", "--n", "4", "(3,4)", "(1,2)(3,4)"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        dstoch(&["ideal-op", "contains", "--n", "4", "(1,2)(3,4)", "(3,4)"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        dstoch(&["ideal-op", "meet", "--n", "4", "(1,2)"])
            .status
            .code(),
        Some(2)
    );
    let o = dstoch(&["ideal-op", "describe", "--n", "3", "(1,2)", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["parameters"], 2);
}

#[test]
fn witnesses() {
    let o = dstoch(&["witness", "--n", "4", "(1,2)", "(3,4)"]);
    assert_eq!(o.status.code(), Some(0));
    let last = stdout(&o).lines().last().unwrap().to_string();
    let w: dstoch_core::DWitness = serde_json::from_str(&last).unwrap();
    let e = dstoch_core::IdealHandle::new(
        dstoch_core::SetPartition::parse_one_based(4, "(1,2)").unwrap(),
    );
    let f = dstoch_core::IdealHandle::new(
        dstoch_core::SetPartition::parse_one_based(4, "(3,4)").unwrap(),
    );
    assert!(dstoch_core::verify_d_witness(&w, &e.idempotent(), &f.idempotent()).unwrap());

    let o = dstoch(&["witness", "--n", "4", "(1,2)(3,4)", "(2,3,4)", "--search"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("infeasible: 256 support pairs"));
}

#[test]
fn lattice_outputs() {
    let o = dstoch(&["lattice", "4", "--format", "summary", "--check-laws"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "n = 4: 15 ideals, 31 cover edges\n  rank 1: 1\n  rank 2: 7\n  rank 3: 6\n  rank 4: 1\n\
         laws: 15 single, 225 pair, 3375 triple checks, 0 violations\n"
    );
    let o = dstoch(&["lattice", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["nodes"].as_array().unwrap().len(), 5);
    assert_eq!(dstoch(&["lattice", "13"]).status.code(), Some(2));
}

#[test]
fn verify_suite() {
    let o = dstoch(&["verify", "--max-n", "4", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("10 of 10 checks passed\n"));

    let o = dstoch(&["verify", "--max-n", "1"]);
    assert_eq!(o.status.code(), Some(0));

    let o = dstoch(&["verify", "--max-n", "3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["checks"].as_array().unwrap().len(), 10);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["passed"] == true));

    assert_eq!(dstoch(&["verify", "--max-n", "7"]).status.code(), Some(2));
}

#[test]
fn verify_names_a_wrong_identity() {
    let o = dstoch(&["verify", "--identity", "E_2^5 join E_2^6 = E_3^5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("[FAIL] AC5"));
    assert!(stdout(&o).contains("<E_2^5> ∨ <E_2^6> = <E_3^5>"));
    assert_eq!(
        dstoch(&["verify", "--identity", "nonsense"]).status.code(),
        Some(2)
    );
}

#[test]
fn usage_errors() {
    assert_eq!(dstoch(&["bogus"]).status.code(), Some(2));
    assert_eq!(dstoch(&["count"]).status.code(), Some(2));
    assert_eq!(
        dstoch(&["enumerate", "3", "--format", "svg"]).status.code(),
        Some(2)
    );
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["verify", "--max-n", "3", "--seed", "11", "--json"][..],
        &["enumerate", "4", "--format", "json"],
        &["lattice", "4"],
        &["witness", "--n", "4", "(1,2)", "(2,4)"],
    ] {
        let a = dstoch(args);
        let b = dstoch(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}
