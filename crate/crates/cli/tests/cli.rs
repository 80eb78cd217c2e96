use std::process::Command;

use motivecalc_cli::run;
use serde_json::{json, Value};

fn json_of(args: &[&str]) -> (u8, Value) {
    let mut full = vec!["motivecalc", "--json"];
    full.extend_from_slice(args);
    let out = run(full);
    let v = serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {:?}", out));
    (out.code, v)
}

fn eval(expr: &str) -> Value {
    let (code, v) = json_of(&["eval", expr]);
    assert_eq!(code, 0, "{v}");
    v["result"]["value"].clone()
}

#[test]
fn golden_values() {
    assert_eq!(eval("class(NC(P(1)))"), json!(2));
    assert_eq!(eval("class(M(P(2)))"), json!({ "0": 1, "1": 1, "2": 1 }));
    let hom = eval("hom(M(P(1)), M(P(1)), orbit)");
    assert_eq!(hom["dimension"], json!(4));
    assert_eq!(hom["graded"], json!({ "-1": 1, "0": 2, "1": 1 }));
    let z = eval("zeta(NC(P(1)), 5)");
    assert_eq!(z["coefficients"], json!([1, 2, 3, 4, 5, 6]));
    assert_eq!(z["provenance"], json!("intrinsic"));
    assert_eq!(eval("class(NC(alt(2, M(P(2)))))"), json!(3));
    assert_eq!(eval("hom(NC(P(1)*P(1)), NC(P(1) + pt))"), json!({ "category": "nc", "dimension": 12 }));
}

#[test]
fn citations_follow_the_evaluation() {
    let (_, v) = json_of(&["eval", "class(NC(M(P(1))))"]);
    assert_eq!(v["citations"], json!(["comparison-functor", "noncommutative-class"]));
    assert_eq!(v["command"], json!("eval"));
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["motivecalc", "--json", "eval", "zeta(M(P(1)*P(1)), 4)"],
        vec!["motivecalc", "--json", "ledger", "show"],
        vec!["motivecalc", "--json", "nonfactor", "demo"],
        vec!["motivecalc", "measure", "eval", "P1xP2"],
    ] {
        assert_eq!(run(args.clone()), run(args));
    }
}

#[test]
fn subcommands_report_verdicts() {
    let (code, v) = json_of(&["zeta", "--object", "P2", "--check", "zeta-equality"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["nc_mismatch"], Value::Null);
    let (code, v) = json_of(&["--order", "4", "zeta", "--object", "P1xP1", "--check", "closedform"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["closed_form"]["coefficients"], json!([1, 4, 10, 20, 35]));
    let (code, v) = json_of(&["nonfactor", "demo", "--q", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["verdicts"][0]["point_count"], json!(5));
    assert_eq!(v["result"]["non_factoring_witness"], json!(true));
    let (code, v) = json_of(&["schur", "test", "[1,1,1]", "M(P(1))"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["vanishes"], json!(true));
    assert_eq!(v["result"]["realization"]["vanishes"], json!(true));
    let (_, v) = json_of(&["schur", "test", "(2,1)", "NC(P(1))"]);
    assert_eq!(v["result"], json!({ "partition": "(2,1)", "vanishes": false, "rank": 4 }));
    let (code, v) = json_of(&["kimura", "NC(P(2))"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["kimura"]["dimension"], json!(3));
    let (code, v) = json_of(&["measure", "eval", "S^2(P1)", "--measure", "sharp:3", "--measure", "gs"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["values"]["mu_#(q=3)"], json!(13));
    let (code, v) = json_of(&["compose", "P(1)", "P(1)", "pt"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["pairs_checked"], json!(8));
    for which in ["grr", "comparison", "schur-transfer", "nonexample"] {
        let (code, v) = json_of(&["--bound", "3", "check", which]);
        assert_eq!((code, &v["result"]["holds"]), (0, &json!(true)), "{which}: {v}");
    }
}

#[test]
fn errors_are_classified() {
    let cases: [(&[&str], u8); 9] = [
        (&["eval", "M(P(1)"], 2),
        (&["eval", "M(nowhere)"], 2),
        (&["eval", "frob(pt)"], 2),
        (&["measure", "eval", "Q7"], 2),
        (&["eval", "twist(1, NC(pt))"], 3),
        (&["eval", "M(P(1)) + NC(pt)"], 3),
        (&["eval", "M(pt) + twist(1, M(pt))"], 3),
        (&["compose", "pt", "pt", "pt", "--first", "5"], 3),
        (&["zeta", "--object", "A1", "--measure", "nc"], 3),
    ];
    for (args, code) in cases {
        let mut full = vec!["motivecalc"];
        full.extend_from_slice(args);
        let out = run(full);
        assert_eq!(out.code, code, "{args:?}: {out:?}");
        assert!(out.stderr.starts_with("error: "), "{out:?}");
    }
}

#[test]
fn type_errors_explain_themselves() {
    let out = run(["motivecalc", "eval", "sym(2, P(1))"]);
    assert!(out.stderr.contains("wrap the variety as M(P1) or NC(P1)"), "{}", out.stderr);
    let out = run(["motivecalc", "eval", "M(A1)"]);
    assert!(out.stderr.contains("no cellular model"), "{}", out.stderr);
    let (code, v) = json_of(&["eval", "class(P(1))"]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["kind"], json!("precondition"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_motivecalc");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let ok = status(&["eval", "class(NC(P(1)))"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout), "class(NC(P(1))) = 2\n[noncommutative-class]\n");
    assert_eq!(status(&["eval", "M(P(1)"]).status.code(), Some(2));
    assert_eq!(status(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(status(&["eval", "twist(1, NC(pt))"]).status.code(), Some(3));
    assert_eq!(status(&["--help"]).status.code(), Some(0));
}

#[test]
fn custom_ledgers_merge_with_builtins() {
    let dir = std::env::temp_dir().join(format!("motivecalc-ledger-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, "{ not json").unwrap();
    let out = run(["motivecalc", "--ledger", path.to_str().unwrap(), "ledger", "check"]);
    assert_eq!(out.code, 2, "{out:?}");
    let out = run(["motivecalc", "--ledger", dir.join("missing.json").to_str().unwrap(), "ledger", "show"]);
    assert_eq!(out.code, 3, "{out:?}");
}
