//! The binary: exit codes, file round trips and thread-count independence.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arrangements"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = run(&full);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid json")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn charpoly_text_and_json() {
    let o = run(&["charpoly", "--catalog", "g24"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).contains("(t-1)(t-9)(t-11)"));
    let j = json(&["charpoly", "--catalog", "boolean3"]);
    assert_eq!(j["schema"], 1);
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.arr");
    assert_eq!(run(&["charpoly", "--in", path(&missing)]).status.code(), Some(2));

    let bad = dir.path().join("bad.arr");
    std::fs::write(&bad, "field cyclotomic 3\ndim 2\nh 1 2 3\n").unwrap();
    assert_eq!(run(&["charpoly", "--in", path(&bad)]).status.code(), Some(2));

    assert_eq!(run(&["charpoly", "--catalog", "no-such-entry"]).status.code(), Some(2));
    assert_eq!(run(&["charpoly"]).status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_3() {
    let o = run(&["certify", "--catalog", "g31", "--class", "inductive", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn catalog_build_and_certificate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let arr = dir.path().join("g333.arr");
    let o = run(&["--out", path(&arr), "catalog", "build", "g333"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let j = json(&["charpoly", "--in", path(&arr)]);
    let same = json(&["charpoly", "--catalog", "g333"]);
    assert_eq!(j, same);

    let cert = dir.path().join("cert.json");
    let o = run(&[
        "certify", "--in", path(&arr), "--class", "recursive", "--pool", "coordinates", "--cert-out", path(&cert),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(run(&["verify-cert", "--in", path(&arr), "--cert", path(&cert)]).status.code(), Some(0));
    // a certificate for a different arrangement is rejected
    assert_eq!(run(&["verify-cert", "--catalog", "g24", "--cert", path(&cert)]).status.code(), Some(1));
}

#[test]
fn inductive_non_member_is_not_an_error() {
    let j = json(&["certify", "--catalog", "g333", "--class", "inductive"]);
    assert_eq!(j["result"]["status"], "non_member");
}

#[test]
fn output_independent_of_threads() {
    for args in [
        &["sweep", "--catalog", "g24"][..],
        &["g31", "trichotomy"][..],
        &["lattice", "--catalog", "g29"][..],
    ] {
        let one = json(&[&["--threads", "1"][..], args].concat());
        let four = json(&[&["--threads", "4"][..], args].concat());
        assert_eq!(one, four, "{args:?}");
    }
}
