use std::io::Write;
use std::process::{Command, Output};

use schubice::exactpoly::LaurentPoly;
use schubice::partitionfn::VerifyReport;
use schubice::staircase::{AsmMatrix, Staircase};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schubice"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = run(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

const SIX_BY_SIX_ASM: &str = "\
0 0 0 1 0 0
0 0 1 -1 1 0
0 1 -1 1 -1 1
1 -1 1 -1 1 0
0 1 -1 1 0 0
0 0 1 0 0 0
";

#[test]
fn pf_closed_certificate_for_f31() {
    let v = json(&["pf", "--full", "3", "--last", "1", "--method", "closed"]);
    let cert = &v["certificate"];
    let assembled: LaurentPoly = serde_json::from_value(cert["assembled"].clone()).unwrap();
    assert_eq!(
        assembled,
        LaurentPoly::parse("x1*y1^-2*y2^-1*(x1 - y1)*(x2 - y1)").unwrap()
    );
    assert_eq!(cert["term"]["type"], "schubert");
    assert_eq!(cert["term"]["permutation"], serde_json::json!([2, 3, 1]));
    assert!(v.get("brute").is_none());
}

#[test]
fn brute_and_closed_agree_in_text_mode() {
    for args in [
        vec!["pf", "--full", "4", "--last", "3,1"],
        vec!["pf", "--first", "4,2,1", "--last", "3", "--n", "4"],
        vec!["pf", "--first", "5,3,1"],
        vec!["pf", "--first", "4,2"],
    ] {
        let brute = run(&[args.clone(), vec!["--method", "brute"]].concat());
        let closed = run(&[args.clone(), vec!["--method", "closed"]].concat());
        assert!(
            brute.status.success() && closed.status.success(),
            "{args:?}"
        );
        assert_eq!(stdout(&brute), stdout(&closed), "{args:?}");
        let both = run(&[args.clone(), vec!["--method", "both"]].concat());
        assert!(stdout(&both).contains("agree:  true"));
    }
}

#[test]
fn custom_variables() {
    let o = run(&[
        "pf", "--first", "3,1", "--last", "2", "--n", "3", "--vars", "x5",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("x5"));
    let o = run(&[
        "pf", "--first", "3,1", "--last", "2", "--n", "3", "--vars", "x5,x6",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn convert_six_by_six_asm() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("asm.txt");
    std::fs::File::create(&path)
        .unwrap()
        .write_all(SIX_BY_SIX_ASM.as_bytes())
        .unwrap();
    let v = json(&["convert", "--asm", path.to_str().unwrap()]);
    let t: Staircase = serde_json::from_value(v).unwrap();
    let expect = Staircase::from_lists(&[
        vec![6, 5, 4, 3, 2, 1],
        vec![6, 5, 4, 2, 1],
        vec![6, 5, 3, 1],
        vec![6, 4, 2],
        vec![5, 3],
        vec![4],
    ])
    .unwrap();
    assert_eq!(t, expect);

    let back = json(&[
        "convert",
        "--staircase",
        &serde_json::to_string(&t).unwrap(),
    ]);
    let a: AsmMatrix = serde_json::from_value(back).unwrap();
    assert_eq!(a.minus_ones(), 6);
}

#[test]
fn convert_column_and_ribbon() {
    let o = run(&[
        "convert", "--column", "5,3,2,1", "--under", "5,3,2", "--n", "6",
    ]);
    assert_eq!(stdout(&o).trim(), "[1,3,4]/[0,3,4]");
    let o = run(&[
        "convert",
        "--ribbon",
        "1,3,4/3,4",
        "--under",
        "5,3,2",
        "--n",
        "6",
    ]);
    assert_eq!(stdout(&o).trim(), "[5,3,2,1]");
    let o = run(&["convert", "--column", "3,2", "--under", "1", "--n", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn convert_codes() {
    let v = json(&["convert", "--perm", "1,3,4,6,2,5"]);
    assert_eq!(v["code"], serde_json::json!([0, 1, 1, 2]));
    let v = json(&["convert", "--code", "1,2"]);
    assert_eq!(v, serde_json::json!([2, 4, 1, 3]));
    let v = json(&["convert", "--levels", "5,3,2", "--n", "6"]);
    assert_eq!(v["levels"], serde_json::json!([3, 2, 1, 1]));
    assert_eq!(v["partition"], serde_json::json!([0, 2, 3]));
}

#[test]
fn schubert_and_specialize() {
    let o = run(&["schubert", "--perm", "2,1"]);
    assert_eq!(stdout(&o).trim(), "x1 - y1");
    let o = run(&["schubert", "--code", "1", "--shift-y", "2"]);
    assert_eq!(stdout(&o).trim(), "x1 - y3");
    let o = run(&["schubert", "--perm", "2,1", "--at-zero-negated-y"]);
    assert_eq!(stdout(&o).trim(), "y1");
    let o = run(&["specialize", "--poly", "x1*y1^-1 - 1", "--two"]);
    assert_eq!(stdout(&o).trim(), "1");
    let o = run(&["specialize", "--poly", "x1 - y1", "--x-to-y"]);
    assert_eq!(stdout(&o).trim(), "0");
    let o = run(&["render", "--poly", "x1^2*y1^-1", "--format", "latex"]);
    assert_eq!(stdout(&o).trim(), "x_{1}^{2} y_{1}^{-1}");
}

#[test]
fn json_polynomials_round_trip() {
    let v = json(&["schubert", "--perm", "1,3,2"]);
    let p: LaurentPoly = serde_json::from_value(v["polynomial"].clone()).unwrap();
    assert_eq!(p, LaurentPoly::parse("x1 + x2 - y1 - y2").unwrap());
    assert_eq!(serde_json::to_value(&p).unwrap(), v["polynomial"]);
}

#[test]
fn enumerate_counts() {
    let o = run(&["enumerate", "--asms", "4", "--count"]);
    assert_eq!(stdout(&o).trim(), "42");
    let o = run(&["enumerate", "--full", "3", "--last", "2", "--count"]);
    assert_eq!(stdout(&o).trim(), "3");
    let v = json(&["enumerate", "--full", "3", "--last", "1", "--weights"]);
    assert_eq!(v.as_array().unwrap().len(), 2);
}

#[test]
fn enumeration_cap() {
    let o = Command::new(env!("CARGO_BIN_EXE_schubice"))
        .args(["enumerate", "--full", "5", "--count"])
        .env("SCHUBICE_ENUM_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("10"));
    let o = Command::new(env!("CARGO_BIN_EXE_schubice"))
        .args(["enumerate", "--full", "3", "--count"])
        .env("SCHUBICE_ENUM_CAP", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let o = run(&["verify", "--suite", "all", "--max-n", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&["verify", "--suite", "bijections", "--max-n", "3"]);
    let report: VerifyReport = serde_json::from_value(v).unwrap();
    assert!(report.passed());
    assert!(!report.cases.is_empty());
}

#[test]
fn usage_and_domain_errors() {
    assert_eq!(run(&["pf", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(
        run(&["pf", "--full", "3", "--first", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["pf", "--full", "3", "--last", "4"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["schubert", "--perm", "1,1"]).status.code(), Some(2));
    assert_eq!(run(&["render", "--poly", "x1 +"]).status.code(), Some(1));
    assert_eq!(run(&["convert"]).status.code(), Some(2));
}
