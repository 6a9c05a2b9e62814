use std::path::Path;
use std::process::Command;

use serde_json::Value;

fn qperm(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qperm")).args(args).output().expect("run qperm");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

/// Envelope with timing removed.
fn envelope(args: &[&str]) -> Value {
    let (code, out) = qperm(args);
    assert_eq!(code, 0, "{args:?} failed: {out}");
    let mut v: Value = serde_json::from_str(&out).unwrap();
    v.as_object_mut().unwrap().remove("timing");
    v
}

fn result(args: &[&str]) -> Value {
    envelope(args)["result"].clone()
}

#[test]
fn verify_golden_bytes() {
    let (code, out) = qperm(&["verify", "--catalog", "fourier:2"]);
    assert_eq!(code, 0);
    let cut = out.find(",\"timing\"").unwrap();
    let tail = out[cut..].split_once('}').unwrap().1;
    let stable = format!("{}{}", &out[..cut], tail);
    assert_eq!(
        stable.trim_end(),
        r#"{"command":{"argv":["verify","--catalog","fourier:2"],"name":"verify"},"error":null,"result":{"failing_pair":null,"hadamard":true,"matrix":{"exponents":[[0,0],[0,1]],"l":2,"label":"fourier(2)","n":2}},"version":"0.1.0","warnings":[]}"#
    );
}

#[test]
fn invariants_of_f5() {
    let r = result(&["invariants", "--catalog", "fourier:5", "--kmax", "3", "--method", "both"]);
    assert_eq!(r["c"], serde_json::json!([1, 1, 5, 25]));
}

#[test]
fn poincare_of_f2_f3() {
    let r = result(&["poincare", "--catalog", "fourier:2x3", "--kmax", "3"]);
    assert_eq!(r["series"], "1 + z + 6z^2 + 36z^3");
    assert_eq!(r["coefficients"][2], serde_json::json!({"num": "6", "den": "1"}));
}

#[test]
fn obstruct_haagerup_cell() {
    let r = result(&["obstruct", "--n", "5", "--l", "12"]);
    assert_eq!(r["verdict"], "Obstructed(Haagerup5)");
}

#[test]
fn table_restriction_agrees() {
    let r = result(&["table", "--nmax", "6", "--lmax", "6"]);
    let cells = r["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 25);
    assert!(cells.iter().all(|c| c["agrees_with_reference"] == true));
    assert_eq!(r["grid"][4][1], "T");
}

#[test]
fn weingarten_rational_payload() {
    let r = result(&["weingarten", "--n", "4", "--k", "2", "--family", "nc", "--i", "1,2", "--j", "1,2"]);
    assert_eq!(r["integral"], serde_json::json!({"num": "1", "den": "12"}));
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["verify", "--catalog", "tao"], 0),
        (&["obstruct", "--n", "3", "--l", "2"], 0),
        (&["butson-enum", "--n", "3", "--l", "2"], 0),
        (&["regular", "--catalog", "bjorck-froberg"], 0),
        (&["equiv", "--catalog", "fourier:4", "--other-catalog", "f4q:i"], 0),
        (&["free-bessel", "--kmax", "4", "--t", "1/2"], 0),
        (&["free-hg", "--n", "4", "--kmax", "3", "--oracle"], 0),
        (&["klein-check", "--samples", "3", "--seed", "1"], 0),
        (&["one-norm", "--catalog", "haagerup:phase:0.7"], 0),
        (&["gram-det", "--k", "3", "--n", "5"], 0),
        (&["char-moments", "--n", "4", "--kmax", "3", "--family", "nc", "--s", "2"], 0),
        (&["commutative", "--catalog", "fourier:3"], 0),
        (&["magic", "--catalog", "fourier:2x2"], 0),
        (&["level", "--catalog", "bjorck-froberg"], 0),
        (&["dephase", "--catalog", "f6-row:root:1/3,i"], 0),
        (&["verify", "--input", "/nonexistent/file.but"], 1),
        (&["magic", "--input", "/nonexistent/file.cmat"], 1),
        (&["free-hg", "--n", "2", "--kmax", "2"], 1),
        (&["weingarten", "--n", "2", "--k", "3"], 1),
        (&["invariants", "--catalog", "bjorck-froberg", "--backend", "modular"], 2),
        (&["catalog", "nope"], 2),
        (&["catalog", "haagerup:root:1/0"], 2),
        (&["ig-estimate", "--n", "3"], 2),
        (&["pauli-check"], 2),
        (&["obstruct", "--n", "3"], 2),
        (&["obstruct", "--n", "3", "--l", "1"], 2),
        (&["verify"], 2),
        (&["verify", "--catalog", "tao", "--input", "x.but"], 2),
        (&["weingarten", "--n", "4", "--k", "2", "--i", "1,5", "--j", "1,1"], 2),
        (&["bogus-command"], 2),
    ];
    for (args, want) in cases {
        let (code, out) = qperm(args);
        assert_eq!(code, *want, "{args:?}: {out}");
    }
}

#[test]
fn domain_errors_keep_the_envelope() {
    let (code, out) = qperm(&["free-hg", "--n", "2", "--kmax", "2"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["result"].is_null());
    assert!(v["error"].as_str().unwrap().contains("degenerate"));
}

#[test]
fn negative_results_are_successes() {
    let r = result(&["butson-enum", "--n", "6", "--l", "2"]);
    assert_eq!(r["empty"], true);
    let (_dir, path) = write_temp("x.cmat", "2\n1+0j 1+0j\n1+0j 1+0j\n");
    let r = result(&["verify", "--input", &path]);
    assert_eq!(r["hadamard"], false);
    assert_eq!(r["failing_pair"], serde_json::json!([1, 2]));
}

#[test]
fn seeded_runs_are_deterministic() {
    for args in [
        &["ig-estimate", "--n", "3", "--kmax", "3", "--samples", "500", "--seed", "7"][..],
        &["pauli-check", "--samples", "300", "--seed", "7", "--word", "1,1;2,2"],
        &["klein-check", "--samples", "5", "--seed", "7"],
    ] {
        assert_eq!(envelope(args), envelope(args));
    }
    let a = result(&["ig-estimate", "--n", "3", "--samples", "500", "--seed", "1"]);
    let b = result(&["ig-estimate", "--n", "3", "--samples", "500", "--seed", "2"]);
    assert_ne!(a, b);
}

fn write_temp(name: &str, text: &str) -> (tempfile::TempDir, String) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    let s = path.to_str().unwrap().to_string();
    (dir, s)
}

#[test]
fn but_round_trip() {
    for spec in ["fourier:4", "fourier:2x3", "tao", "f4q:i", "haagerup:root:1/4", "petrescu:root:1/7"] {
        let (code, text) = qperm(&["catalog", spec, "--emit", "but"]);
        assert_eq!(code, 0, "{spec}");
        let (_dir, path) = write_temp("m.but", &text);
        let direct = result(&["catalog", spec]);
        let parsed = result(&["verify", "--input", &path]);
        assert_eq!(parsed["hadamard"], true);
        assert_eq!(parsed["matrix"]["exponents"], direct["matrix"]["exponents"], "{spec}");
        assert_eq!(parsed["matrix"]["l"], direct["matrix"]["l"], "{spec}");
    }
}

#[test]
fn cmat_round_trip_and_level() {
    let (_, text) = qperm(&["catalog", "haagerup:phase:0.4", "--emit", "cmat"]);
    let (_dir, path) = write_temp("h.cmat", &text);
    assert_eq!(result(&["verify", "--input", &path])["hadamard"], true);
    assert_eq!(result(&["level", "--input", &path])["level"], "infinite");

    let (_, text) = qperm(&["catalog", "f4q:i", "--emit", "cmat"]);
    let (_dir, path) = write_temp("f.cmat", &text);
    assert_eq!(result(&["level", "--input", &path])["level"], 4);
}

#[test]
fn parse_errors_report_the_line() {
    let (_dir, path) = write_temp("t.but", "3 3\n0 0 0\n0 1 2\n0 2\n");
    let (code, out) = qperm(&["verify", "--input", &path]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["error"].as_str().unwrap().contains("line 4"), "{out}");
    assert!(Path::new(&path).exists());
}

#[test]
fn text_format() {
    let (code, out) = qperm(&["--format", "text", "level", "--catalog", "fourier:3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "level: 3\nn: 3\n");
}
