#![allow(dead_code)]

use std::path::PathBuf;

use ckalg::cli::{run, Outcome};
use serde_json::Value;

/// Canned invocations: (golden name, expected exit code, argv without program name).
pub const CANNED: &[(&str, i32, &[&str])] = &[
    (
        "01_parse",
        0,
        &[
            "parse",
            "p ~> q ~> p",
            "t^2(p)* /\\ ~q",
            "delta(p, o(q)) <-> nabla(bot)",
        ],
    ),
    (
        "02_eval_k2",
        0,
        &[
            "eval", "--k", "2", "--assign", "p=(a,b)", "--assign", "q=(1,0)", "p ~> q",
        ],
    ),
    (
        "03_eval_t3",
        0,
        &[
            "eval",
            "--k",
            "1",
            "--family",
            "3",
            "--assign",
            "x=c",
            "tri(x) \\/ x*",
        ],
    ),
    ("04_taut_delta", 0, &["taut", "--k", "1", "delta(p,p)"]),
    (
        "05_taut_lem_assert",
        0,
        &["taut", "--k", "2", "--logic", "assert", "p \\/ ~p"],
    ),
    (
        "06_taut_k3",
        0,
        &["taut", "--k", "3", "o(bot)", "p ~> p", "p -> p"],
    ),
    (
        "07_conseq_deg_explosion",
        0,
        &[
            "conseq",
            "--k",
            "2",
            "--logic",
            "deg",
            "--premise",
            "p",
            "--premise",
            "~p",
            "--goal",
            "q",
        ],
    ),
    (
        "08_conseq_assert_explosion",
        0,
        &[
            "conseq",
            "--k",
            "2",
            "--logic",
            "assert",
            "--premise",
            "p",
            "--premise",
            "~p",
            "--goal",
            "q",
        ],
    ),
    (
        "09_conseq_gentle_explosion",
        0,
        &[
            "conseq",
            "--k",
            "1",
            "--premise",
            "o(p)",
            "--premise",
            "p",
            "--premise",
            "~p",
            "--goal",
            "q",
        ],
    ),
    (
        "10_conseq_c3",
        0,
        &[
            "conseq",
            "--k",
            "3",
            "--logic",
            "assert",
            "--premise",
            "delta(p,q)",
            "--premise",
            "delta(q,r)",
            "--goal",
            "delta(p,r)",
        ],
    ),
    (
        "11_freecard_closure",
        0,
        &["freecard", "--k", "1", "--n", "1", "--oracle", "closure"],
    ),
    (
        "12_freecard_epi_k1n2",
        0,
        &["freecard", "--k", "1", "--n", "2", "--oracle", "epi"],
    ),
    (
        "13_freecard_epi_k2n1",
        0,
        &["freecard", "--k", "2", "--n", "1", "--oracle", "epi"],
    ),
    ("14_freecard_k5n3", 0, &["freecard", "--k", "5", "--n", "3"]),
    ("15_simples_k2", 0, &["simples", "--k", "2"]),
    (
        "16_subalgebras_t32",
        0,
        &["subalgebras", "--k", "2", "--family", "3"],
    ),
    ("17_verify_lfi", 0, &["verify", "lfi", "--k", "2"]),
    ("18_verify_leibniz", 0, &["verify", "leibniz", "--k", "1"]),
    (
        "19_verify_implicativity",
        0,
        &["verify", "implicativity", "--k", "2"],
    ),
    (
        "20_budget_error",
        3,
        &["taut", "--k", "3", "p1 /\\ p2 /\\ p3 /\\ p4 /\\ p5 /\\ p6"],
    ),
];

pub fn ck(args: &[&str]) -> Outcome {
    run(std::iter::once("ckalg").chain(args.iter().copied()))
}

pub fn ck_json(args: &[&str], threads: usize) -> Outcome {
    let t = threads.to_string();
    let mut v = vec!["--json", "--threads", t.as_str()];
    v.extend_from_slice(args);
    ck(&v)
}

pub fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.json"))
}

/// Validates a document against `schemas/<schema>.json`.
pub fn validate(doc: &Value) -> Result<(), String> {
    let tag = doc["schema"].as_str().ok_or("document has no schema tag")?;
    let path = root().join("schemas").join(format!("{tag}.json"));
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    let schema: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let v = jsonschema::validator_for(&schema).map_err(|e| e.to_string())?;
    let errs: Vec<String> = v
        .iter_errors(doc)
        .map(|e| format!("{} at {}", e, e.instance_path()))
        .collect();
    if errs.is_empty() {
        Ok(())
    } else {
        Err(format!("{tag}: {}", errs.join("; ")))
    }
}

/// Runs every canned invocation at 1 and 3 threads; returns the problems found.
pub fn check_goldens(update: bool) -> Vec<String> {
    let mut problems = Vec::new();
    for (name, code, args) in CANNED {
        let one = ck_json(args, 1);
        let three = ck_json(args, 3);
        if one != three {
            problems.push(format!("{name}: output depends on thread count"));
        }
        if one.code != *code {
            problems.push(format!(
                "{name}: exit {} (expected {code}): {}",
                one.code, one.stderr
            ));
        }
        match serde_json::from_str::<Value>(&one.stdout) {
            Ok(doc) => {
                if let Err(e) = validate(&doc) {
                    problems.push(format!("{name}: {e}"));
                }
            }
            Err(e) => problems.push(format!("{name}: not JSON: {e}")),
        }
        let path = golden_path(name);
        if update {
            std::fs::write(&path, &one.stdout).unwrap();
        } else {
            match std::fs::read_to_string(&path) {
                Ok(g) if g == one.stdout => {}
                Ok(_) => problems.push(format!("{name}: differs from golden")),
                Err(e) => problems.push(format!("{name}: {e}")),
            }
        }
    }
    problems
}
