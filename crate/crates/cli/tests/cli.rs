use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cayley-drg"))
        .args(args)
        .env_remove("CAYLEY_DRG_THREADS")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

const LATTICE: &str = "(1,0),(2,0),(0,1),(0,2)";

#[test]
fn check_lattice_set() {
    let out = run(&["check", "--group", "3^1x3", "--set", LATTICE]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["drg"], true);
    assert_eq!(v["family"], "TDLineGraph(2,3)");
    assert_eq!(v["array"], "{4,2; 1,2}");
    assert_eq!(v["flags"]["schurVerified"], true);
}

#[test]
fn check_disconnected_set() {
    let out = run(&["check", "--group", "3^1x3", "--set", "(1,0),(2,0)"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json_of(&out);
    assert_eq!(v["connected"], false);
    assert_eq!(v["drg"], false);
}

#[test]
fn check_full_set() {
    let out = run(&["check", "--group", "3^2x3", "--set", "all"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["family"], "Complete");
}

#[test]
fn parse_errors_are_usage_errors() {
    assert_eq!(
        run(&["check", "--group", "4x", "--set", LATTICE])
            .status
            .code(),
        Some(64)
    );
    assert_eq!(
        run(&["check", "--group", "3^1x3", "--set", "(1,0"])
            .status
            .code(),
        Some(64)
    );
    // not inverse-closed unless --close is given
    assert_eq!(
        run(&["check", "--group", "3^1x3", "--set", "(1,0),(0,1)"])
            .status
            .code(),
        Some(64)
    );
    let closed = run(&[
        "check",
        "--group",
        "3^1x3",
        "--set",
        "(1,0),(0,1)",
        "--close",
    ]);
    assert_eq!(closed.status.code(), Some(0));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
}

#[test]
fn census_examples() {
    for (group, sets, classes) in [("3^1x3", 11, 3), ("3^2x3", 9, 3), ("5^1x5", 57, 5)] {
        let out = run(&["census", "--group", group]);
        assert_eq!(out.status.code(), Some(0), "{group}");
        let v = json_of(&out);
        assert_eq!(v["totals"]["drgSets"], sets, "{group}");
        assert_eq!(v["totals"]["parameterClasses"], classes, "{group}");
        assert_eq!(v["anomalies"].as_array().unwrap().len(), 0);
    }
}

#[test]
fn census_output_independent_of_threads() {
    let base = run(&[
        "census",
        "--group",
        "5^1x5",
        "--threads",
        "1",
        "--partitions",
        "1",
    ])
    .stdout;
    for (t, p) in [("4", "4"), ("8", "8"), ("3", "16")] {
        let other = run(&[
            "census",
            "--group",
            "5^1x5",
            "--threads",
            t,
            "--partitions",
            p,
        ])
        .stdout;
        assert_eq!(base, other, "threads {t}, partitions {p}");
    }
    let env = Command::new(env!("CARGO_BIN_EXE_cayley-drg"))
        .args(["census", "--group", "5^1x5"])
        .env("CAYLEY_DRG_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(env.stdout, base);
}

#[test]
fn census_budget_exit_code() {
    let out = run(&["census", "--group", "5^1x5", "--max-sets", "100"]);
    assert_eq!(out.status.code(), Some(65));
    let out = run(&[
        "census",
        "--group",
        "5^1x5",
        "--orbit-first",
        "--node-budget",
        "5",
    ]);
    assert_eq!(out.status.code(), Some(65));
}

#[test]
fn census_writes_file() {
    let dir = std::env::temp_dir().join(format!("cayley-drg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("census.json");
    let out = run(&[
        "census",
        "--group",
        "3^1x3",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["totals"]["symmetricSets"], 16);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn construct_td_line() {
    let out = run(&["construct", "--family", "td-line", "--p", "5", "--r", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["srg"]["n"], 25);
    assert_eq!(v["srg"]["k"], 12);
    assert_eq!(v["srg"]["lambda"], 5);
    assert_eq!(v["srg"]["mu"], 6);
    assert_eq!(v["set"].as_array().unwrap().len(), 12);
}

#[test]
fn construct_other_families() {
    let out = run(&[
        "construct",
        "--family",
        "multipartite",
        "--p",
        "3",
        "--s",
        "2",
    ]);
    assert_eq!(json_of(&out)["array"], "{18,8; 1,18}");
    let out = run(&[
        "construct",
        "--family",
        "multipartite",
        "--group",
        "3^2x3",
        "--part-size",
        "3",
    ]);
    assert_eq!(json_of(&out)["array"], "{24,2; 1,24}");
    let out = run(&["construct", "--family", "complete", "--p", "3", "--s", "2"]);
    assert_eq!(json_of(&out)["array"], "{26; 1}");
    let out = run(&["construct", "--family", "td-line", "--p", "5", "--r", "5"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn fourier_audit_lattice() {
    let out = run(&["fourier-audit", "--group", "3^1x3", "--set", LATTICE]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert!(v["failure"].is_null());
    assert!(v["identity_checks"].as_u64().unwrap() > 0);
    let text = run(&[
        "--format",
        "text",
        "fourier-audit",
        "--group",
        "3^1x3",
        "--set",
        LATTICE,
    ]);
    assert!(String::from_utf8(text.stdout)
        .unwrap()
        .contains("all identities hold"));
}

#[test]
fn bipartite_auto_search_via_alias() {
    let out = run(&["theorem4", "--n", "16", "--auto-search"]);
    let v = json_of(&out);
    let found = v["constructions"].as_array().unwrap();
    if found.is_empty() {
        // no admissible difference set exists at this order
        assert_eq!(out.status.code(), Some(2));
        assert!(v["searches"]
            .as_array()
            .unwrap()
            .iter()
            .all(|s| s["admissible"] == 0));
    } else {
        assert_eq!(out.status.code(), Some(0));
        for c in found {
            assert_eq!(c["bipartite"], true);
            assert_eq!(c["prediction_holds"], true);
        }
    }
    assert!(!v["classical"].as_array().unwrap().is_empty());
}

#[test]
fn bipartite_explicit_rows() {
    let out = run(&[
        "bipartite",
        "--n",
        "8",
        "--r0",
        "1,3,5,7",
        "--r1",
        "1,3,5,7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["construction"]["array"], "{8,7; 1,8}");
    let out = run(&["bipartite", "--n", "8", "--r0", "1,7", "--r1", "3,5"]);
    assert_eq!(json_of(&out)["construction"]["prediction_holds"], true);
    assert_eq!(
        run(&["bipartite", "--n", "8", "--r0", "2,6", "--r1", "1,7"])
            .status
            .code(),
        Some(64)
    );
}
