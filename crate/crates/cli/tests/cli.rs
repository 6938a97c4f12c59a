use std::process::{Command, Output};

use serde_json::Value;

fn hurwitz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hurwitz"))
        .args(args)
        .env_remove("HURWITZ_MAX_STATES")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = hurwitz(&all);
    let v = serde_json::from_slice(&o.stdout).expect("valid JSON on stdout");
    (o.status.code().unwrap(), v)
}

#[test]
fn orbit_of_two_transpositions() {
    let o = hurwitz(&["orbit", "--word", "3: (1 2) | (2 3)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("size 3"));
    let (code, v) = json(&["orbit", "--word", "3: (1 2) | (2 3)", "--list"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["size"], 3);
    assert_eq!(v["result"]["words"].as_array().unwrap().len(), 3);
}

#[test]
fn clebsch_hurwitz_check_passes() {
    let o = hurwitz(&["verify", "clebsch-hurwitz", "--d", "3", "--max-genus", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS clebsch-hurwitz"));
}

#[test]
fn unknown_check_is_an_error() {
    let o = hurwitz(&["verify", "no-such-check"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn line_components_of_three_cycles() {
    let o = hurwitz(&["components", "--degree", "3", "--length", "6", "--letters", "[3]x6", "--product", "identity", "--space", "line"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("2"));
}

#[test]
fn closed_form_reports_disagreement() {
    let (code, v) = json(&["components", "--degree", "3", "--length", "7", "--closed-form", "--galois", "a3", "--space", "line"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["count"], 1);
    assert_eq!(v["result"]["formula"], 2);
    assert_eq!(v["result"]["discrepancy"], true);
}

#[test]
fn parse_error_names_the_column() {
    let o = hurwitz(&["orbit", "--word", "3: (1 2) | (2 4"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column"));
}

#[test]
fn state_budget_gives_inconclusive() {
    let o = hurwitz(&["--max-states", "5", "orbit", "--word", "4: (1 2) | (2 3) | (3 4) | (1 4)"]);
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_hurwitz"))
        .args(["orbit", "--word", "4: (1 2) | (2 3) | (3 4) | (1 4)"])
        .env("HURWITZ_MAX_STATES", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn equivalence() {
    assert_eq!(stdout(&hurwitz(&["equiv", "3: (1 2) | (1 3)", "3: (1 3) | (2 3)"])).trim(), "true");
    assert_eq!(stdout(&hurwitz(&["equiv", "3: (1 2) | (2 3)", "3: (1 2) | (1 3)"])).trim(), "false");
}

#[test]
fn json_words_reparse() {
    let cases: [&[&str]; 4] = [
        &["normal-form", "--word", "3: (1 2) | (1 2) | (1 3) | (1 3)"],
        &["normal-form", "--word", "4: (1 2) | (2 3) | (3 4)"],
        &["normal-form", "--word", "3: (1 2) | (1 3) | (1 2 3) | (1 2 3) | (1 2 3)"],
        &["normal-form", "--word", "3: (1 3 2) | (2 3) | (1 2) | (1 2) | (1 2) | (1 3) | (1 3) | (1 2) | (1 2) | (1 3) | (1 3)", "--kind", "stable"],
    ];
    for args in cases {
        let (code, v) = json(args);
        assert_eq!(code, 0, "{args:?}: {v}");
        let r = &v["result"];
        let mut words = Vec::new();
        for key in ["word", "tilde", "bar", "representative"] {
            if let Some(s) = r[key].as_str() {
                words.push(s.to_string());
            }
        }
        assert!(!words.is_empty(), "{v}");
        for word in words {
            let (code, again) = json(&["orbit", "--word", &word]);
            assert_eq!(code, 0, "{word}");
            assert!(again["result"]["canonical"].is_string());
        }
    }
}

#[test]
fn normal_form_matches_input_orbit() {
    let input = "3: (1 2) | (1 2) | (1 3) | (1 3)";
    let (_, v) = json(&["normal-form", "--word", input]);
    let nf = v["result"]["word"].as_str().unwrap();
    assert_eq!(stdout(&hurwitz(&["equiv", input, nf])).trim(), "true");
}

#[test]
fn cayley_builtin_groups() {
    let (code, v) = json(&["cayley", "--group", "z2xz2"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["structure"]["aut_order"], 6);
    assert_eq!(v["result"]["structure"]["pass"], true);
    let (code, v) = json(&["cayley", "--group", "s3", "--length", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["galois_components"]["count"], 2);
}

#[test]
fn cayley_table_file() {
    let dir = std::env::temp_dir().join(format!("hurwitz-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("z3.json");
    std::fs::write(&good, r#"{"order":3,"identity":0,"table":[[0,1,2],[1,2,0],[2,0,1]]}"#).unwrap();
    let (code, v) = json(&["cayley", "--table", good.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["structure"]["group_order"], 3);
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"order":3,"identity":0,"table":[[0,1,2],[1,0,2],[2,2,1]]}"#).unwrap();
    let o = hurwitz(&["cayley", "--table", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn npsemi_operations() {
    assert_eq!(stdout(&hurwitz(&["npsemi", "origins", "[[1,0],[0,1]]"])).trim(), "[[0,1],[1,0]]");
    assert_eq!(stdout(&hurwitz(&["npsemi", "member", "[[2,0],[0,3]]", "[2,3]"])).trim(), "true");
    assert_eq!(stdout(&hurwitz(&["npsemi", "member", "[[2,0],[0,3]]", "[1,1]"])).trim(), "false");
    let o = hurwitz(&["npsemi", "union", "[[1,0]]", "[[0,1]]"]);
    assert_eq!(o.status.code(), Some(0));
    let o = hurwitz(&["npsemi", "intersect", "[[1,0],[0,1]]", "[[2,0]]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(hurwitz(&["npsemi", "origins", "not json"]).status.code(), Some(1));
}
