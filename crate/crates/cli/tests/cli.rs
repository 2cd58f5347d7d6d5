use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn p2q(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_p2q"))
        .args(args)
        .env_remove("P2Q_MAX_ORDER")
        .output()
        .expect("binary runs")
}

fn p2q_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_p2q"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn text(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn enumerate_counts() {
    let o = p2q(&["enumerate", "-p", "2", "-q", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(text(&o).lines().count(), 1 + 5);

    let strict = p2q(&[
        "enumerate",
        "-p",
        "5",
        "-q",
        "2",
        "--strict-paper",
        "--json",
    ]);
    let complete = p2q(&["enumerate", "-p", "5", "-q", "2", "--json"]);
    assert_eq!(json(&strict).as_array().unwrap().len(), 4);
    assert_eq!(json(&complete).as_array().unwrap().len(), 5);

    let o = p2q(&["enumerate", "-p", "11", "-q", "5", "--json"]);
    let rows = json(&o);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 7);
    for r in rows {
        assert_eq!(r["order"], 605);
        assert!(r["aut"].is_string());
        assert!(r["aut_order"].as_u64().unwrap() > 0);
    }
}

#[test]
fn enumerate_rejects_bad_primes() {
    assert_eq!(code(&p2q(&["enumerate", "-p", "4", "-q", "3"])), 2);
    assert_eq!(code(&p2q(&["enumerate", "-p", "3", "-q", "3"])), 2);
}

#[test]
fn verify_single_rows() {
    let o = p2q(&["verify", "--type", "10", "-p", "2", "-q", "3", "--json"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["brute_order"], 24);
    assert_eq!(r["predicted_order"], 24);
    assert_eq!(r["pass"], true);
    assert!(r.get("millis").is_none());

    let o = p2q(&["verify", "--type", "7", "-p", "5", "-q", "3"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("p-1"));
}

#[test]
fn verify_timing_is_opt_in() {
    let o = p2q(&[
        "verify", "--type", "4", "-p", "3", "-q", "2", "--json", "--timing",
    ]);
    assert_eq!(code(&o), 0);
    assert!(json(&o)["millis"].is_u64());
}

#[test]
fn resource_bound_exit_code() {
    let o = p2q(&[
        "verify",
        "--type",
        "5",
        "-p",
        "5",
        "-q",
        "3",
        "--max-order",
        "50",
    ]);
    assert_eq!(code(&o), 3);
    let o = p2q(&[
        "aut",
        "--type",
        "5",
        "-p",
        "5",
        "-q",
        "3",
        "--decompose",
        "--max-order",
        "50",
    ]);
    assert!(code(&o) == 2 || code(&o) == 3);
}

#[test]
fn usage_errors() {
    assert_eq!(code(&p2q(&["build", "--type", "8", "-p", "11"])), 2);
    assert_eq!(code(&p2q(&["frobnicate"])), 2);
    assert_eq!(
        code(&p2q(&["build", "--type", "12", "-p", "11", "-q", "5"])),
        2
    );
    assert_eq!(code(&p2q(&["build", "--spec", "{not json"])), 2);
    assert_eq!(code(&p2q(&["table", "-p", "7"])), 2);
}

#[test]
fn verify_all_small_sweep() {
    let o = p2q(&[
        "verify",
        "--all",
        "--max-order",
        "400",
        "--level",
        "isomorphism",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let out = text(&o);
    assert!(!out.contains("FAIL"));
    assert!(out.lines().count() > 100);
}

#[test]
fn verify_all_json_is_deterministic() {
    let args = ["verify", "--all", "--max-order", "150", "--json"];
    let a = p2q(&args);
    let b = p2q(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let reports = json(&a);
    let keys: Vec<(u64, u64, u64, u64)> = reports
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            let s = &r["spec"];
            let f = |k: &str| s[k].as_u64().unwrap_or(0);
            (f("p"), f("q"), f("type"), f("s"))
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(reports
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["pass"] == true));
}

#[test]
fn table_rows() {
    let o = p2q(&["table"]);
    assert_eq!(code(&o), 0);
    assert_eq!(text(&o).lines().count(), 12);

    let o = p2q(&["table", "-p", "7", "-q", "3", "--json"]);
    let rows = json(&o);
    let types: Vec<u64> = rows
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["type"].as_u64().unwrap())
        .collect();
    assert_eq!(types, [1, 4, 5, 6, 7, 9]);
    let nine = &rows[5];
    assert_eq!(nine["aut_order"], 3528);

    let o = p2q(&["table", "--json"]);
    let rows = json(&o);
    assert_eq!(rows.as_array().unwrap().len(), 11);
    for r in rows.as_array().unwrap() {
        for k in ["type", "condition", "group", "aut"] {
            assert!(r.get(k).is_some());
        }
    }
}

#[test]
fn build_classify_round_trip() {
    for spec in [
        r#"{"type": 8, "p": 11, "q": 5, "s": 2}"#,
        r#"{"type": 10, "p": 2, "q": 3}"#,
        r#"{"type": 9, "p": 7, "q": 3}"#,
        r#"{"type": 7, "p": 3, "q": 2}"#,
    ] {
        let b = p2q(&["build", "--spec", spec, "--json"]);
        assert_eq!(code(&b), 0, "{spec}");
        let c = p2q_stdin(&["classify", "--json"], &b.stdout);
        assert_eq!(code(&c), 0, "{spec}");
        let want: Value = serde_json::from_str(spec).unwrap();
        assert_eq!(json(&c), want);
    }
}

#[test]
fn classify_non_canonical_type8() {
    // s = 3 is the inverse of the canonical s = 2 mod 5
    let b = p2q(&[
        "build", "--type", "8", "-p", "11", "-q", "5", "--s", "3", "--json",
    ]);
    assert_eq!(code(&b), 0);
    let c = p2q_stdin(&["classify", "-", "--json"], &b.stdout);
    assert_eq!(json(&c)["s"], 2);
}

#[test]
fn classify_from_file_with_full_check() {
    let b = p2q(&["build", "--type", "6", "-p", "3", "-q", "2", "--json"]);
    let dir = std::env::temp_dir().join(format!("p2q-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("t6.json");
    std::fs::write(&path, &b.stdout).unwrap();
    let c = p2q(&[
        "classify",
        path.to_str().unwrap(),
        "--full-assoc-check",
        "--json",
    ]);
    assert_eq!(code(&c), 0);
    assert_eq!(json(&c)["type"], 6);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn classify_rejects_non_groups() {
    let bad = br#"{"order": 2, "identity": 0, "table": [[0, 1], [1, 1]]}"#;
    assert_eq!(code(&p2q_stdin(&["classify"], bad)), 2);
    let c3 = br#"{"order": 3, "identity": 0, "table": [[0,1,2],[1,2,0],[2,0,1]]}"#;
    assert_eq!(code(&p2q_stdin(&["classify"], c3)), 2);
}

#[test]
fn aut_and_decompose() {
    let o = p2q(&["aut", "--type", "9", "-p", "7", "-q", "3", "--json"]);
    assert_eq!(code(&o), 0);
    let r = json(&o);
    assert_eq!(r["brute_order"], 3528);
    assert_eq!(r["predicted_order"], 3528);

    let o = p2q(&[
        "aut",
        "--type",
        "3",
        "-p",
        "2",
        "-q",
        "5",
        "--decompose",
        "--json",
    ]);
    assert_eq!(code(&o), 0);
    let triples = json(&o)["triples"].as_array().unwrap().clone();
    assert_eq!(triples.len(), 20);
    // d is trivial for every automorphism of a type-3 group
    for t in &triples {
        let d = t["d"].as_array().unwrap();
        assert!(d
            .iter()
            .enumerate()
            .all(|(i, x)| x.as_u64() == Some(i as u64)));
    }

    let o = p2q(&["aut", "--type", "5", "-p", "2", "-q", "3", "--decompose"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn strict_mode_rejects_extension_class() {
    assert_eq!(
        code(&p2q(&["build", "--type", "7", "-p", "3", "-q", "2"])),
        0
    );
    assert_eq!(
        code(&p2q(&[
            "build",
            "--type",
            "7",
            "-p",
            "3",
            "-q",
            "2",
            "--strict-paper"
        ])),
        2
    );
}

#[test]
fn build_summary_and_assoc_flag() {
    let o = p2q(&["build", "--type", "8", "-p", "11", "-q", "5", "--s", "2"]);
    assert_eq!(code(&o), 0);
    assert!(text(&o).contains("605"));
    let o = p2q(&[
        "build",
        "--type",
        "10",
        "-p",
        "2",
        "-q",
        "3",
        "--full-assoc-check",
        "--json",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(json(&o)["order"], 12);
}
