use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn sl2char(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sl2char")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn temp_json(body: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".json").tempfile().unwrap();
    f.write_all(body.as_bytes()).unwrap();
    f
}

#[test]
fn eq_exit_codes() {
    let o = sl2char(&["eq", "loop(g1)*loop(g2)", "loop(g1 g2)+loop(g1^-1 g2)"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("EQUAL"));
    assert!(stdout(&o).contains("seed 1"));

    let o = sl2char(&["eq", "loop(g1)", "loop(g1)+1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness"));

    assert_eq!(sl2char(&["eq", "arc(e.p1,e.p1)", "0"]).status.code(), Some(0));
}

#[test]
fn parse_errors_show_a_caret() {
    let o = sl2char(&["eq", "loop(g1) + loop(h2)", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("parse error at 16"), "{err}");
    let caret_line = err.lines().find(|l| l.trim() == "^").expect("caret line");
    assert_eq!(caret_line.find('^'), Some(16));
}

#[test]
fn json_transcripts_carry_the_oracle_config() {
    let o = sl2char(&["--json", "--seed", "7", "--samples", "5", "--field", "q", "eq", "loop(g1^-1)", "loop(g1)"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "equal");
    assert_eq!(v["oracle"]["seed"], 7);
    assert_eq!(v["oracle"]["samples"], 5);
    assert_eq!(v["oracle"]["field"], "q");
}

#[test]
fn same_seed_same_output() {
    let args = ["--seed", "42", "eq", "loop(g1 g2)", "loop(g2 g1^-1)"];
    let (a, b) = (sl2char(&args), sl2char(&args));
    assert_eq!(a.status.code(), Some(1));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn check_presentation_and_mutation() {
    let o = sl2char(&["--free", "2,2", "check-presentation", "--instances", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains(", 0 failures"));

    let o = sl2char(&["--free", "2,2", "check-presentation", "--only", "R6", "--mutate", "R6-sign"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness"));

    let o = sl2char(&["--free", "0,4", "--json", "check-presentation", "--instances", "1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<&str> = v["families"].as_array().unwrap().iter().map(|f| f["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"PLUCKER") && names.contains(&"R6"));
    assert!(!names.contains(&"R4"));
}

#[test]
fn demos_run() {
    for d in ["gr2n", "z-two-points", "chebyshev", "tau-chi"] {
        let o = sl2char(&["demo", d]);
        assert_eq!(o.status.code(), Some(0), "{d}: {}", stdout(&o));
        assert!(stdout(&o).contains("seed 1"));
    }
    assert_eq!(sl2char(&["demo", "nope"]).status.code(), Some(2));
}

#[test]
fn non_free_sessions_use_the_library() {
    let pres = temp_json(r#"{"generators": 1, "orbits": 2, "stabilizers": [["g1"], ["g1"]]}"#);
    let reps = temp_json(
        r#"[{"matrices": [[[1,0],[0,1]]], "decorations": [[1,2],[3,"1/2"]]},
            {"matrices": [[[1,5],[0,1]]], "decorations": [[1,0],[-2,0]]}]"#,
    );
    let p = pres.path().to_str().unwrap();
    let r = reps.path().to_str().unwrap();
    let base = ["--presentation", p, "--reps", r];
    let run = |extra: &[&str]| sl2char(&[&base[..], extra].concat());
    let o = run(&["eq", "(loop(g1)-2)*arc(e.p1,e.p2)", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("refutation-only"));
    assert_eq!(run(&["eq", "(loop(g1)+2)*arc(e.p1,e.p2)", "0"]).status.code(), Some(1));
    assert_eq!(run(&["validate"]).status.code(), Some(0));
    assert_eq!(sl2char(&["--presentation", p, "eq", "loop(g1)", "2"]).status.code(), Some(2));

    let bad = temp_json(r#"[{"matrices": [[[2,1],[1,1]]], "decorations": [[1,0],[0,1]]}]"#);
    let o = sl2char(&["--presentation", p, "--reps", bad.path().to_str().unwrap(), "validate"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("moves its decoration"));
}

#[test]
fn reduce_and_rewrite() {
    let o = sl2char(&["reduce", "loop(g1)*loop(g2)*loop(g1 g2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("reduced: 2 + loop(g2 g2)"));
    let o = sl2char(&["rewrite", "loop(g1)*arc(e.p1,g2.p1)", "--rule", "R5", "--at", "0,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("arc(e.p1, g1 g2.p1) + arc(e.p1, g1^-1 g2.p1)"));
    assert_eq!(sl2char(&["rewrite", "loop(g1)*loop(g2)", "--rule", "R6", "--at", "0,1"]).status.code(), Some(2));
}

#[test]
fn invariant_equality() {
    let ch = "tr(X(1))*X(1) - 1/2*(tr(X(1))^2 - tr(X(1)*X(1)))*Id";
    assert_eq!(sl2char(&["inv-eq", "X(1)*X(1)", ch]).status.code(), Some(0));
    assert_eq!(sl2char(&["inv-eq", "tr(X(1)*X(2))", "tr(X(2)*X(1))"]).status.code(), Some(0));
    assert_eq!(sl2char(&["inv-eq", "X(1)*X(2)", "X(2)*X(1)"]).status.code(), Some(1));
}

#[test]
fn curves_and_twists() {
    let c = temp_json(r#"{"genus": 1, "boundary": 1, "marked": 1, "curves": [{"loop": "a1"}, {"loop": "b1"}]}"#);
    let o = sl2char(&["curve", c.path().to_str().unwrap(), "--eq", "loop(a1 b1) + loop(a1^-1 b1)"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("character: loop(g1)*loop(g2)"));

    let ext = temp_json(r#"{"central": [{"name": "z", "order": 2, "sign": -1}]}"#);
    let e = ext.path().to_str().unwrap();
    let o = sl2char(&["--free", "2,1", "twist", "--ext", e, "loop(z g1)", "-loop(g1)"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = sl2char(&["--free", "2,1", "twist", "--ext", e, "arc(z.p1, g1.p1)", "arc(e.p1, g1.p1)"]);
    assert_eq!(o.status.code(), Some(1));
    // The base group must be given explicitly.
    assert_eq!(sl2char(&["twist", "--ext", e, "loop(g1)", "loop(g1)"]).status.code(), Some(2));
}

#[test]
fn bad_flags_are_errors() {
    assert_eq!(sl2char(&["--field", "fp:15", "eq", "1", "1"]).status.code(), Some(2));
    assert_eq!(sl2char(&["--samples", "0", "eq", "1", "1"]).status.code(), Some(2));
    assert_eq!(sl2char(&["--free", "2,2", "check-presentation", "--mutate", "R9-sign"]).status.code(), Some(2));
}
