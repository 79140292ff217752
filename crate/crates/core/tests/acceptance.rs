//! Acceptance harness: one PASS/FAIL line per criterion.
//!
//! Criterion 6 is known to fail: property (vii) of the biconditional,
//! x ⇔ y = x* ⇔ y*, is false in T3 (x = c, y = 1). The harness checks that
//! it fails for exactly that reason and for no other.

mod common;

use std::time::{Duration, Instant};

use ckalg::formula::{parse, random_formula};
use ckalg::free::{
    alpha, closure_oracle, epi_oracle, free_cardinality_formula, k2_closed_form, prime_closed_form,
};
use ckalg::verify::{self, LawReport, SampleSizes};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn within(start: Instant, limit: Duration) -> Check {
    let t = start.elapsed();
    if t <= limit {
        Ok(format!("{:.2}s", t.as_secs_f64()))
    } else {
        Err(format!(
            "took {:.2}s, limit {}s",
            t.as_secs_f64(),
            limit.as_secs()
        ))
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e(x: impl std::fmt::Display) -> String {
    x.to_string()
}

fn suite(name: &str, k: usize) -> Result<LawReport, String> {
    verify::run_suite(name, k, &SampleSizes::default()).map_err(e)
}

fn describe_failures(r: &LawReport) -> Vec<String> {
    r.failures()
        .iter()
        .map(|i| {
            let w = i.witness.as_ref().map(|w| {
                let a: Vec<String> = w
                    .assignment
                    .iter()
                    .map(|(x, v)| format!("{x}={v}"))
                    .collect();
                format!(" in {} at {}", w.algebra, a.join(", "))
            });
            format!("{}/k={}: {}{}", r.suite, r.k, i.law, w.unwrap_or_default())
        })
        .collect()
}

fn c1() -> Check {
    let t = Instant::now();
    let f = free_cardinality_formula(1, 1).map_err(e)?;
    let c = closure_oracle(1, 1).map_err(e)?;
    let n = f.factored.to_biguint(64).ok_or("formula not integral")?;
    ensure(n == 48u32.into() && c.cardinality == 48, || {
        format!("formula {n}, closure {}", c.cardinality)
    })?;
    within(t, Duration::from_secs(1)).map(|s| format!("48 = 48 ({s})"))
}

fn c2() -> Check {
    let t = Instant::now();
    let f = free_cardinality_formula(1, 2).map_err(e)?;
    let n = f.factored.to_biguint(64).ok_or("formula not integral")?;
    ensure(n == 15_925_248u32.into(), || format!("formula gives {n}"))?;
    ensure(f.factored.to_string() == "2^16 · 3^5", || {
        format!("factored {}", f.factored)
    })?;
    let o = epi_oracle(1, 2).map_err(e)?;
    for (class, i, m) in [("T2,1", 2, 4u64), ("T3,1", 3, 5), ("T4,1", 4, 6)] {
        let got = o.multiplicity(class);
        let a = alpha(i, 1, 2, 1).map_err(e)?;
        ensure(
            got == Some(m) && a == BigRational::from_integer(m.into()),
            || format!("{class}: epi {got:?}, alpha {a}, expected {m}"),
        )?;
    }
    ensure(o.factored == f.factored, || "oracle total differs".into())?;
    within(t, Duration::from_secs(10)).map(|s| format!("15925248, (4,5,6) term by term ({s})"))
}

fn c3() -> Check {
    let t = Instant::now();
    let f = free_cardinality_formula(2, 1).map_err(e)?;
    let o = epi_oracle(2, 1).map_err(e)?;
    ensure(f.factored == o.factored, || {
        format!("formula {} vs oracle {}", f.factored, o.factored)
    })?;
    ensure(o.decimal.as_deref() == Some("15925248"), || {
        format!("oracle {:?}", o.decimal)
    })?;
    ensure(
        f.warnings.iter().any(|w| w.contains("alpha(4,2) = 5/2")),
        || format!("warnings {:?}", f.warnings),
    )?;
    let tw = o
        .table
        .iter()
        .find(|t| !t.listed)
        .ok_or("no twisted simple in table")?;
    ensure(tw.size == 4 && tw.multiplicity == 1, || format!("{tw:?}"))?;
    within(t, Duration::from_secs(30))
        .map(|s| format!("15925248, warning alpha(4,2)=5/2, {} x1 ({s})", tw.class))
}

fn c4() -> Check {
    for k in [2usize, 3, 5] {
        for n in 1..=3u64 {
            let f = free_cardinality_formula(k, n).map_err(e)?;
            let closed = prime_closed_form(k, n).map_err(e)?;
            ensure(f.factored == closed, || {
                format!("k={k} n={n}: {} vs {closed}", f.factored)
            })?;
            if k == 2 {
                ensure(k2_closed_form(n) == f.factored, || {
                    format!("k=2 n={n} reduction differs")
                })?;
            }
        }
    }
    Ok("k in {2,3,5}, n <= 3 exact".into())
}

fn c5() -> Check {
    let t = Instant::now();
    for k in 1..=4 {
        let r = suite("simplicity", k)?;
        for i in 2..=4 {
            let law = format!("T{i},{k} is simple (all three criteria agree)");
            let item = r.item(&law).ok_or_else(|| format!("missing `{law}`"))?;
            ensure(item.holds, || law.clone())?;
        }
        ensure(r.passed, || describe_failures(&r).join("; "))?;
    }
    within(t, Duration::from_secs(10))
}

fn law_suites() -> Result<Vec<String>, String> {
    let mut failures = Vec::new();
    for name in ["t-laws", "cyc-imp", "arrow"] {
        for k in 1..=3 {
            let r = suite(name, k)?;
            ensure(r.items.iter().any(|i| i.mutant), || {
                format!("{name}: no mutants")
            })?;
            failures.extend(describe_failures(&r));
        }
    }
    Ok(failures)
}

fn c6() -> Check {
    let t = Instant::now();
    let failures = law_suites()?;
    let time = within(t, Duration::from_secs(60))?;
    if failures.is_empty() {
        Ok(time)
    } else {
        Err(format!("{} ({time})", failures.join("; ")))
    }
}

fn c7() -> Check {
    let t = Instant::now();
    for name in ["lfi", "lfu", "propagation", "equivalential", "blok-pigozzi"] {
        for k in 1..=3 {
            let r = suite(name, k)?;
            ensure(r.passed, || describe_failures(&r).join("; "))?;
        }
    }
    for k in 1..=3 {
        let lfi = suite("lfi", k)?;
        let v = |law: &str| {
            lfi.item(law)
                .map(|i| i.holds)
                .ok_or_else(|| format!("missing `{law}`"))
        };
        ensure(
            !v("(i.a) p, ~p |= q [deg]")? && v("(explosive) p, ~p |= q [assert]")?,
            || "explosion".into(),
        )?;
        let lfu = suite("lfu", k)?;
        for tag in ["deg", "assert"] {
            let law = format!("(i) |= p \\/ ~p [{tag}]");
            ensure(!lfu.item(&law).ok_or(law.clone())?.holds, || law.clone())?;
        }
        let s = SampleSizes {
            containment: 100,
            matrix: 50,
            monotonicity: 50,
            ..SampleSizes::default()
        };
        let r = verify::check_consequence_properties(k, &s).map_err(e)?;
        ensure(r.passed, || describe_failures(&r).join("; "))?;
        ensure(
            r.items
                .iter()
                .any(|i| i.law == "both relations have the same theorems (500 samples)" && i.holds),
            || "theorem coincidence item missing".into(),
        )?;
    }
    within(t, Duration::from_secs(120))
}

fn c8() -> Check {
    let t = Instant::now();
    let r = suite("leibniz", 1)?;
    ensure(r.passed, || describe_failures(&r).join("; "))?;
    ensure(r.warnings.iter().any(|w| w.contains("A x A")), || {
        "no warning about A x A".into()
    })?;
    within(t, Duration::from_secs(1))
        .map(|s| format!("common value identity, warning emitted ({s})"))
}

fn c9() -> Check {
    let t = Instant::now();
    let mut algebras = 0;
    for k in 1..=3 {
        let r = suite("correspondence", k)?;
        ensure(r.passed, || describe_failures(&r).join("; "))?;
        algebras += r.items.len() / 2;
    }
    within(t, Duration::from_secs(30)).map(|s| format!("{algebras} battery algebras ({s})"))
}

fn c10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for i in 0..10_000 {
        let f = random_formula(&mut rng, &["p", "q", "r", "p2"], 1 + i % 8, true);
        let back = parse(&f.to_string()).map_err(|err| format!("{f}: {err}"))?;
        ensure(back == f, || format!("round trip changed {f} into {back}"))?;
    }
    let problems = common::check_goldens(false);
    ensure(problems.is_empty(), || problems.join("; "))?;
    Ok(format!(
        "10^4 round trips, {} goldens stable at 1 and 3 threads",
        common::CANNED.len()
    ))
}

/// Criteria that cannot pass because the claim they test is false.
const UNATTAINABLE: &[usize] = &[6];

// criterion 6 must fail for exactly one reason: (vii) on T3, every k
fn criterion_6_cause() -> Result<(), String> {
    let failures = law_suites()?;
    ensure(failures.len() == 3, || format!("{failures:?}"))?;
    for (k, f) in (1..=3).zip(&failures) {
        let want = format!("arrow/k={k}: (vii) x <-> y = x* <-> y* in T3,{k}");
        ensure(f.starts_with(&want), || f.clone())?;
    }
    Ok(())
}

// harness = false, so the lines below reach the test log uncaptured
fn main() {
    let checks: [(usize, fn() -> Check); 10] = [
        (1, c1),
        (2, c2),
        (3, c3),
        (4, c4),
        (5, c5),
        (6, c6),
        (7, c7),
        (8, c8),
        (9, c9),
        (10, c10),
    ];
    let mut failed = Vec::new();
    for (n, check) in checks {
        match check() {
            Ok(detail) => println!("criterion {n}: PASS ({detail})"),
            Err(detail) => {
                println!("criterion {n}: FAIL ({detail})");
                failed.push(n);
            }
        }
    }
    let mut ok = true;
    if failed != UNATTAINABLE {
        println!("unexpected set of failing criteria: {failed:?} (known unattainable: {UNATTAINABLE:?})");
        ok = false;
    }
    if let Err(e) = criterion_6_cause() {
        println!("criterion 6 fails for an unexpected reason: {e}");
        ok = false;
    }
    if !ok {
        std::process::exit(1);
    }
    println!("acceptance: only the known-unattainable criteria fail");
}
