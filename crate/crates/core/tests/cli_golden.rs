mod common;

use common::*;

// UPDATE_GOLDENS=1 rewrites tests/golden/*.json
#[test]
fn canned_invocations_match_goldens() {
    let update = std::env::var_os("UPDATE_GOLDENS").is_some();
    let problems = check_goldens(update);
    assert!(problems.is_empty(), "{problems:#?}");
}

#[test]
fn same_argv_same_bytes() {
    let a = ck(&[
        "--json",
        "verify",
        "selfextensional",
        "--k",
        "2",
        "--samples",
        "20",
    ]);
    let b = ck(&[
        "--json",
        "--threads",
        "2",
        "verify",
        "selfextensional",
        "--k",
        "2",
        "--samples",
        "20",
    ]);
    assert_eq!(a, b);
    assert_eq!(a.code, 0, "{}", a.stderr);
}

#[test]
fn human_output_is_tabular() {
    let o = ck(&["simples", "--k", "2"]);
    assert_eq!(o.code, 0);
    let first: Vec<&str> = o
        .stdout
        .lines()
        .map(|l| l.split_whitespace().next().unwrap())
        .collect();
    assert_eq!(
        first,
        ["T2,1", "T3,1", "T2,2", "T4,1", "TW4,1", "T3,2", "T4,2"]
    );
    let o = ck(&[
        "conseq",
        "--k",
        "1",
        "--premise",
        "p",
        "--premise",
        "~p",
        "--goal",
        "q",
    ]);
    assert_eq!(o.stdout, "p, ~p |= q [deg, k=1]: does not hold; counterexample in T4,1: p=a, q=0 (meet of premises a)\n");
}

#[test]
fn strict_mode_and_errors() {
    let o = ck(&[
        "--strict",
        "conseq",
        "--k",
        "1",
        "--premise",
        "p",
        "--goal",
        "q",
    ]);
    assert_eq!(o.code, 1);
    let o = ck(&["conseq", "--k", "1", "--premise", "p", "--goal", "q"]);
    assert_eq!(o.code, 0);
    assert_eq!(ck(&["verify", "arrow", "--k", "1"]).code, 1);
    assert_eq!(ck(&["verify", "nonsense"]).code, 2);
    assert_eq!(ck(&["freecard", "--k", "0", "--n", "1"]).code, 2);
    assert_eq!(
        ck(&["freecard", "--k", "2", "--n", "1", "--oracle", "closure"]).code,
        3
    );
    let o = ck(&["--json", "eval", "--k", "1", "p /\\ q", "--assign", "p=a"]);
    assert_eq!(o.code, 2);
    let doc: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(doc["error"]["kind"], "unbound-variable");
    validate(&doc).unwrap();
}

#[test]
fn file_input() {
    let dir = std::env::temp_dir().join(format!("ckalg-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("formulas.txt");
    std::fs::write(&path, "# theorems?\ndelta(p,p)\n\np \\/ ~p\n").unwrap();
    let o = ck(&[
        "--json",
        "taut",
        "--k",
        "1",
        "--file",
        path.to_str().unwrap(),
    ]);
    let doc: serde_json::Value = serde_json::from_str(&o.stdout).unwrap();
    let holds: Vec<bool> = doc["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["holds"].as_bool().unwrap())
        .collect();
    assert_eq!(holds, [true, false]);
    std::fs::remove_dir_all(&dir).unwrap();
}
