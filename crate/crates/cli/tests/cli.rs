//! End-to-end tests of the command-line interface: formats, exit codes,
//! and golden output.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pbratteli"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

#[test]
fn fib_closed_golden_list() {
    let out = run(&[
        "fib", "--p", "5", "--k", "1", "--pos", "0", "--s", "3..9", "--method", "closed",
    ]);
    assert!(out.status.success());
    let expect = "s=3 closed=198\ns=4 closed=1470\ns=5 closed=9750\ns=6 closed=60750\n\
                  s=7 closed=363750\ns=8 closed=2118750\ns=9 closed=12093750\n";
    assert_eq!(stdout(&out), expect);
}

#[test]
fn fib_all_methods_match() {
    let out = run(&[
        "fib", "--p", "5", "--k", "2", "--pos", "9", "--s", "3", "--method", "all",
    ]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "s=3 brute=210 recur=210 closed=210 match=yes\n"
    );
}

#[test]
fn fib_brute_depth_one() {
    let out = run(&[
        "fib", "--p", "3", "--k", "0", "--pos", "0", "--s", "1", "--method", "brute",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "s=1 brute=1\n");
}

#[test]
fn fib_bfile_format() {
    let out = run(&[
        "fib", "--p", "5", "--k", "1", "--pos", "2", "--s", "3..5", "--format", "bfile",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "3 186\n4 1410\n5 9450\n");
}

#[test]
fn fib_json_values_are_exact_strings() {
    let out = run(&[
        "fib", "--p", "3", "--k", "0", "--pos", "0", "--s", "2..3", "--format", "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc[0]["s"], 2);
    assert_eq!(doc[0]["closed"], "5");
    assert_eq!(doc[1]["closed"], "27");
}

#[test]
fn fib_rejects_dot_format() {
    let out = run(&[
        "fib", "--p", "3", "--k", "0", "--pos", "0", "--s", "2", "--format", "dot",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn diagram_json_shape() {
    let out = run(&[
        "diagram",
        "--p",
        "3",
        "--max-floor",
        "4",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["vertices"].as_array().unwrap().len(), 24);
    assert_eq!(doc["edges"].as_array().unwrap().len(), 28);
    let v = &doc["vertices"][0];
    for key in ["p", "floor", "k", "pos", "size", "leg"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    let e = &doc["edges"][0];
    assert!(e["upper"].as_str().unwrap().starts_with("p:3/f:2"));
    assert!(e["lower"].as_str().unwrap().starts_with("p:3/f:1"));
    assert!(e["block"].get("idx").is_some());
}

/// The vertex and edge objects are bit-stable, including key order.
#[test]
fn diagram_json_golden_objects() {
    let out = run(&[
        "diagram",
        "--p",
        "5",
        "--max-floor",
        "10",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let compact: String = stdout(&out)
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect();
    assert!(compact.contains(r#"{"p":5,"floor":10,"k":2,"pos":9,"size":575,"leg":284}"#));
    assert!(compact.contains(
        r#"{"upper":"p:5/f:10/k:2/l:9","lower":"p:5/f:9/k:2/l:9","block":{"idx":9,"m":0,"n":100}}"#
    ));
}

#[test]
fn diagram_json_is_deterministic() {
    let a = stdout(&run(&[
        "diagram",
        "--p",
        "5",
        "--max-floor",
        "5",
        "--format",
        "json",
    ]));
    let b = stdout(&run(&[
        "diagram",
        "--p",
        "5",
        "--max-floor",
        "5",
        "--format",
        "json",
    ]));
    assert_eq!(a, b);
}

#[test]
fn diagram_dot_floor_one() {
    let out = run(&["diagram", "--p", "3", "--max-floor", "1", "--format", "dot"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.matches("[label=").count(), 2);
    assert_eq!(text.matches(" -- ").count(), 0);
}

#[test]
fn diagram_rejects_even_p() {
    let out = run(&["diagram", "--p", "4", "--max-floor", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("p must be an odd prime"));
}

#[test]
fn signbal_small_scales() {
    for (p, floor) in [("3", "8"), ("5", "6"), ("5", "3")] {
        let out = run(&["signbal", "--p", p, "--max-floor", floor]);
        assert!(out.status.success(), "p={p} floor={floor}");
    }
}

#[test]
fn verify_reports_all_suites_green() {
    let out = run(&["verify", "--p", "3", "--max-floor", "8"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let suites = doc.as_array().unwrap();
    assert!(suites.len() >= 10);
    for suite in suites {
        assert!(suite["checked"].as_u64().unwrap() > 0);
        assert_eq!(suite["failures"].as_array().unwrap().len(), 0);
    }
}

#[test]
fn verify_rejects_non_prime() {
    let out = run(&["verify", "--p", "9", "--max-floor", "4"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gf_table_and_domain_check() {
    let out = run(&["gf", "--p", "5", "--k", "1", "--pos", "0", "--terms", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("A=49 C=50 D=10"));
    assert!(text.contains("n=0 s=3 gf=198 closed=198 match=yes"));
    assert!(text.contains("n=2 s=5 gf=9750 closed=9750 match=yes"));

    let out = run(&["gf", "--p", "3", "--k", "0", "--terms", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("gf=5 closed=5 match=yes"));

    let out = run(&["gf", "--p", "5", "--k", "0", "--pos", "1", "--terms", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn threads_flag_accepted() {
    let out = run(&["verify", "--p", "3", "--max-floor", "6", "--threads", "2"]);
    assert!(out.status.success());
}
