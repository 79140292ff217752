//! Properties of the two consequence relations: paraconsistency and
//! paracompleteness clauses, propagation of ∘, the equivalence set δ,
//! self-extensionality and the structural properties of ⊨ₖ^≤ / ⊨ₖ.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{LawItem, LawReport, Witness, SEMANTIC, SUITE_WORK_BUDGET};
use crate::algebra::Algebra;
use crate::base::BaseFamily;
use crate::consequence::{entails_with_budget, matrix_consequence, Logic, Query, Verdict};
use crate::error::{Error, Result};
use crate::filters;
use crate::formula::{self, evaluate, parse, random_formula, Formula};
use crate::product::{AlgElement, CyclicAlgebra};

/// Sample counts for the randomised checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSizes {
    pub containment: usize,
    pub theorems: usize,
    pub matrix: usize,
    pub monotonicity: usize,
    pub selfextensional: usize,
    pub seed: u64,
}

impl Default for SampleSizes {
    fn default() -> Self {
        SampleSizes {
            containment: 1000,
            theorems: 500,
            matrix: 200,
            monotonicity: 200,
            selfextensional: 50,
            seed: 0x5eed,
        }
    }
}

fn logic_tag(l: Logic) -> &'static str {
    match l {
        Logic::Deg => "deg",
        Logic::Assert => "assert",
        Logic::Matrix => "matrix",
    }
}

fn sequent(premises: &[Formula], goal: &Formula) -> String {
    let ps: Vec<String> = premises.iter().map(|p| p.to_string()).collect();
    if ps.is_empty() {
        format!("|= {goal}")
    } else {
        format!("{} |= {goal}", ps.join(", "))
    }
}

fn decide(
    k: usize,
    logic: Logic,
    premises: &[Formula],
    goal: &Formula,
) -> Result<(Query, Verdict)> {
    let q = Query::new(k, logic, premises.to_vec(), goal.clone());
    let v = entails_with_budget(&q, SUITE_WORK_BUDGET)?;
    if !v.recheck(&q)? {
        return Err(Error::inconsistency(format!(
            "counterexample for `{}` does not re-evaluate",
            sequent(premises, goal)
        )));
    }
    Ok((q, v))
}

fn witness_of(v: &Verdict) -> Option<Witness> {
    v.counterexample.as_ref().map(|c| Witness {
        algebra: c.algebra.clone(),
        assignment: c.valuation.clone(),
        note: c
            .witness_bound
            .as_ref()
            .map(|b| format!("meet of premises = {b}")),
    })
}

/// Whether the valuation sending each variable to a constant word of T4,k
/// refutes the sequent.
fn refutes_at_constants(
    k: usize,
    logic: Logic,
    premises: &[Formula],
    goal: &Formula,
    constants: &[(&str, &str)],
) -> Result<(bool, Witness)> {
    let host = CyclicAlgebra::full(BaseFamily::Four, k)?;
    let code = |s: &str| -> Result<u8> {
        Ok(match s {
            "0" => 0b00,
            "a" => 0b01,
            "b" => 0b10,
            "1" => 0b11,
            _ => return Err(Error::usage(format!("`{s}` is not a constant of T4"))),
        })
    };
    let mut v: BTreeMap<String, AlgElement> = BTreeMap::new();
    let mut shown = BTreeMap::new();
    for (x, s) in constants {
        let e = AlgElement::constant(code(s)?, k);
        shown.insert(x.to_string(), host.format(e));
        v.insert(x.to_string(), e);
    }
    let ps = premises
        .iter()
        .map(|p| evaluate(p, &host, &v))
        .collect::<Result<Vec<_>>>()?;
    let g = evaluate(goal, &host, &v)?;
    let one = host.one();
    let refutes = match logic {
        Logic::Deg if !ps.is_empty() => {
            let m = ps.iter().fold(one, |m, &x| host.meet(m, x));
            !host.le(m, g)
        }
        _ => ps.iter().all(|&x| x == one) && g != one,
    };
    Ok((
        refutes,
        Witness {
            algebra: host.label().to_string(),
            assignment: shown,
            note: None,
        },
    ))
}

struct Suite {
    k: usize,
    items: Vec<LawItem>,
}

impl Suite {
    fn new(k: usize) -> Self {
        Suite {
            k,
            items: Vec::new(),
        }
    }

    fn push(
        &mut self,
        id: &str,
        logic: Logic,
        premises: &[&str],
        goal: &str,
        expected: bool,
        mutant: bool,
    ) -> Result<()> {
        let ps = premises
            .iter()
            .map(|p| parse(p))
            .collect::<Result<Vec<_>>>()?;
        let g = parse(goal)?;
        let (_, v) = decide(self.k, logic, &ps, &g)?;
        self.items.push(LawItem {
            law: format!("{id} {} [{}]", sequent(&ps, &g), logic_tag(logic)),
            holds: v.holds,
            expected,
            mutant,
            witness: witness_of(&v),
        });
        Ok(())
    }

    fn holds(&mut self, id: &str, logic: Logic, premises: &[&str], goal: &str) -> Result<()> {
        self.push(id, logic, premises, goal, true, false)
    }

    fn fails(&mut self, id: &str, logic: Logic, premises: &[&str], goal: &str) -> Result<()> {
        self.push(id, logic, premises, goal, false, false)
    }

    fn mutant(&mut self, id: &str, logic: Logic, premises: &[&str], goal: &str) -> Result<()> {
        self.push(id, logic, premises, goal, false, true)
    }

    /// The explicit refuting valuation given for a non-derivability clause.
    fn stated_valuation(
        &mut self,
        id: &str,
        logic: Logic,
        premises: &[&str],
        goal: &str,
        val: &[(&str, &str)],
    ) -> Result<()> {
        let ps = premises
            .iter()
            .map(|p| parse(p))
            .collect::<Result<Vec<_>>>()?;
        let g = parse(goal)?;
        let (refutes, w) = refutes_at_constants(self.k, logic, &ps, &g, val)?;
        self.items.push(LawItem {
            law: format!(
                "{id} stated valuation refutes {} [{}]",
                sequent(&ps, &g),
                logic_tag(logic)
            ),
            holds: refutes,
            expected: true,
            mutant: false,
            witness: Some(w),
        });
        Ok(())
    }

    fn report(self, name: &str, completeness: &str, warnings: Vec<String>) -> LawReport {
        LawReport::new(name, self.k, completeness, self.items, warnings)
    }
}

/// ⊨ₖ^≤ is a logic of formal inconsistency (and ⊨ₖ is explosive).
pub fn check_lfi(k: usize) -> Result<LawReport> {
    use Logic::*;
    let mut s = Suite::new(k);
    s.fails("(i.a)", Deg, &["p", "~p"], "q")?;
    s.stated_valuation("(i.a)", Deg, &["p", "~p"], "q", &[("p", "a"), ("q", "0")])?;
    s.fails("(i.b)", Deg, &["o(top)", "top"], "q")?;
    s.stated_valuation("(i.b)", Deg, &["o(top)", "top"], "q", &[("q", "0")])?;
    s.fails("(i.c)", Deg, &["o(bot)", "~bot"], "q")?;
    s.stated_valuation("(i.c)", Deg, &["o(bot)", "~bot"], "q", &[("q", "0")])?;
    s.holds("(ii)", Deg, &["o(p)", "p", "~p"], "q")?;
    s.fails("(nc)", Deg, &[], "~(p /\\ ~p)")?;
    s.holds("(explosive)", Assert, &["p", "~p"], "q")?;
    s.mutant("(ii-mutant)", Deg, &["o(p)", "p \\/ ~p"], "q")?;
    Ok(s.report("lfi", SEMANTIC, Vec::new()))
}

/// Both relations are logics of formal undeterminedness.
pub fn check_lfu(k: usize) -> Result<LawReport> {
    let mut s = Suite::new(k);
    for l in [Logic::Deg, Logic::Assert] {
        s.fails("(i)", l, &[], "p \\/ ~p")?;
        s.stated_valuation("(i)", l, &[], "p \\/ ~p", &[("p", "a")])?;
        s.fails("(ii.a)", l, &["o(bot)"], "bot")?;
        s.fails("(ii.b)", l, &["o(top)"], "~top")?;
        s.holds("(iii)", l, &["o(p)"], "p \\/ ~p")?;
        s.mutant("(iii-mutant)", l, &["o(p)"], "p")?;
    }
    Ok(s.report("lfu", SEMANTIC, Vec::new()))
}

/// Consistency propagates through every connective.
pub fn check_propagation(k: usize) -> Result<LawReport> {
    use Logic::Deg;
    let mut s = Suite::new(k);
    s.holds("(i)", Deg, &[], "o(bot)")?;
    s.holds("(i)", Deg, &[], "o(top)")?;
    s.holds("(ii)", Deg, &["o(p)"], "o(~p)")?;
    s.holds("(ii)", Deg, &["o(p)"], "o(p*)")?;
    s.holds("(ii)", Deg, &["o(p)"], "o(t(p))")?;
    s.holds("(iii)", Deg, &["o(p)", "o(q)"], "o(p /\\ q)")?;
    s.holds("(iii)", Deg, &["o(p)", "o(q)"], "o(p \\/ q)")?;
    s.mutant("(i-mutant)", Deg, &[], "o(p)")?;
    Ok(s.report("propagation", SEMANTIC, Vec::new()))
}

/// δ is a finite set of equivalence formulas for ⊨ₖ^≤.
pub fn check_equivalential(k: usize) -> Result<LawReport> {
    use Logic::Deg;
    let mut s = Suite::new(k);
    s.holds("(E1)", Deg, &[], "delta(p, p)")?;
    s.holds("(E2)", Deg, &["delta(p, q)", "p"], "q")?;
    s.holds(
        "(E3)",
        Deg,
        &["delta(p, q)", "delta(r, s)"],
        "delta(p /\\ r, q /\\ s)",
    )?;
    s.holds(
        "(E3)",
        Deg,
        &["delta(p, q)", "delta(r, s)"],
        "delta(p \\/ r, q \\/ s)",
    )?;
    s.holds("(E3)", Deg, &["delta(p, q)"], "delta(~p, ~q)")?;
    s.holds("(E3)", Deg, &["delta(p, q)"], "delta(p*, q*)")?;
    s.holds("(E3)", Deg, &["delta(p, q)"], "delta(t(p), t(q))")?;
    s.mutant("(E2-mutant)", Deg, &["delta(p, q)"], "q")?;
    Ok(s.report("equivalential", SEMANTIC, Vec::new()))
}

/// ⊨ₖ is algebraizable with equivalence set δ and defining equation p ≈ p ⇔ p.
pub fn check_blok_pigozzi(k: usize) -> Result<LawReport> {
    use Logic::Assert;
    let mut s = Suite::new(k);
    s.holds("(C1)", Assert, &[], "delta(p, p)")?;
    s.holds("(C2)", Assert, &["delta(p, q)"], "delta(q, p)")?;
    s.holds(
        "(C3)",
        Assert,
        &["delta(p, q)", "delta(q, r)"],
        "delta(p, r)",
    )?;
    s.holds(
        "(C4)",
        Assert,
        &["delta(p, q)", "delta(r, s)"],
        "delta(p /\\ r, q /\\ s)",
    )?;
    s.holds(
        "(C4)",
        Assert,
        &["delta(p, q)", "delta(r, s)"],
        "delta(p \\/ r, q \\/ s)",
    )?;
    s.holds("(C4)", Assert, &["delta(p, q)"], "delta(~p, ~q)")?;
    s.holds("(C4)", Assert, &["delta(p, q)"], "delta(p*, q*)")?;
    s.holds("(C4)", Assert, &["delta(p, q)"], "delta(t(p), t(q))")?;
    s.holds("(C5)", Assert, &["p"], "delta(p, p <-> p)")?;
    s.holds("(C6)", Assert, &["delta(p, p <-> p)"], "p")?;
    s.mutant("(C6-mutant)", Assert, &["delta(p, p)"], "p")?;
    Ok(s.report("blok-pigozzi", SEMANTIC, Vec::new()))
}

fn interderivable(k: usize, a: &Formula, b: &Formula) -> Result<(bool, Option<Witness>)> {
    let (_, ab) = decide(k, Logic::Deg, std::slice::from_ref(a), b)?;
    if !ab.holds {
        return Ok((false, witness_of(&ab)));
    }
    let (_, ba) = decide(k, Logic::Deg, std::slice::from_ref(b), a)?;
    Ok((ba.holds, witness_of(&ba)))
}

/// A random rewrite of `f` by a valid equation, applied at the root.
fn equivalent_variant<R: Rng>(rng: &mut R, f: &Formula, k: usize) -> Formula {
    use formula::*;
    let f = f.clone();
    match rng.gen_range(0..6) {
        0 => neg(neg(f)),
        1 => and(f.clone(), f),
        2 => or(f.clone(), and(f, Formula::Top)),
        3 => tpow(k as u64, f),
        4 => or(f.clone(), tri(f)),
        _ => nabla(tri(f)),
    }
}

/// Samples pairs φ ⊣⊢ ψ and contexts χ, and checks χ(φ) ⊣⊢ χ(ψ) under ⊨ₖ^≤.
pub fn check_selfextensionality_samples(k: usize, n: usize) -> Result<LawReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e1f ^ k as u64);
    let mut items = Vec::new();
    let mut warnings = Vec::new();

    let mut pairs: Vec<(Formula, Formula)> = vec![
        (parse("p /\\ p")?, parse("p")?),
        (parse("nabla(p)")?, parse("~(~p /\\ p*)")?),
        (parse("p")?, parse("q")?),
    ];
    for _ in 0..n {
        let phi = random_formula(&mut rng, &["p"], 3, true);
        let psi = equivalent_variant(&mut rng, &phi, k);
        pairs.push((phi, psi));
    }

    for (phi, psi) in pairs {
        if !interderivable(k, &phi, &psi)?.0 {
            warnings.push(format!("skipped {phi} / {psi}: not interderivable"));
            continue;
        }
        let ctx = random_formula(&mut rng, &["x", "r"], 3, true);
        let ctx = if ctx.vars().contains("x") {
            ctx
        } else {
            formula::and(ctx, formula::var("x"))
        };
        let a = ctx.substitute(&|v| (v == "x").then(|| phi.clone()));
        let b = ctx.substitute(&|v| (v == "x").then(|| psi.clone()));
        let (holds, w) = interderivable(k, &a, &b)?;
        items.push(LawItem {
            law: format!("{phi} -||- {psi} implies {a} -||- {b}"),
            holds,
            expected: true,
            mutant: false,
            witness: if holds { None } else { w },
        });
    }
    Ok(LawReport::new(
        "selfextensional",
        k,
        &format!("{SEMANTIC}; sampled pairs and contexts (seeded), so a pass is evidence rather than proof"),
        items,
        warnings,
    ))
}

fn random_sequent<R: Rng>(rng: &mut R, vars: &[&str], depth: usize) -> (Vec<Formula>, Formula) {
    let np = rng.gen_range(0..=2);
    let ps = (0..np)
        .map(|_| random_formula(rng, vars, depth, true))
        .collect();
    (ps, random_formula(rng, vars, depth, true))
}

fn holds(k: usize, logic: Logic, ps: &[Formula], g: &Formula) -> Result<bool> {
    Ok(decide(k, logic, ps, g)?.1.holds)
}

fn sampled_failure(law: &str, first: Option<String>, total: usize) -> LawItem {
    LawItem {
        law: format!("{law} ({total} samples)"),
        holds: first.is_none(),
        expected: true,
        mutant: false,
        witness: first.map(|s| Witness {
            algebra: String::new(),
            assignment: BTreeMap::new(),
            note: Some(s),
        }),
    }
}

/// Containment ⊨ₖ^≤ ⊆ ⊨ₖ, equal theorems, agreement of ⊨ₖ^≤ with the
/// matrices over lattice filters (k ≤ 2), monotonicity and cut.
pub fn check_consequence_properties(k: usize, samples: &SampleSizes) -> Result<LawReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(samples.seed ^ (k as u64) << 32);
    let vars = ["p", "q"];
    let mut items = Vec::new();

    let mut bad = None;
    for _ in 0..samples.containment {
        let (ps, g) = random_sequent(&mut rng, &vars, 3);
        if holds(k, Logic::Deg, &ps, &g)? && !holds(k, Logic::Assert, &ps, &g)? {
            bad = Some(sequent(&ps, &g));
            break;
        }
    }
    items.push(sampled_failure(
        "deg consequence implies assertional consequence",
        bad,
        samples.containment,
    ));

    let mut bad = None;
    let mut theorems = 0;
    for _ in 0..samples.theorems {
        let f = random_formula(&mut rng, &["p", "q", "r"], 5, true);
        let d = holds(k, Logic::Deg, &[], &f)?;
        theorems += d as usize;
        if d != holds(k, Logic::Assert, &[], &f)? {
            bad = Some(f.to_string());
            break;
        }
    }
    items.push(sampled_failure(
        "both relations have the same theorems",
        bad,
        samples.theorems,
    ));

    let mut warnings = vec![format!(
        "{theorems} of {} sampled formulas were theorems",
        samples.theorems
    )];

    if k <= 2 {
        let matrices: Vec<_> = [BaseFamily::Four, BaseFamily::Three]
            .into_iter()
            .map(|f| CyclicAlgebra::full(f, k).map(|a| a.to_finite()))
            .collect::<Result<_>>()?;
        let mut bad = None;
        'm: for _ in 0..samples.matrix {
            let (ps, g) = random_sequent(&mut rng, &vars, 3);
            let d = holds(k, Logic::Deg, &ps, &g)?;
            let mut all = true;
            for m in &matrices {
                for f in filters::all_filters(m) {
                    if !matrix_consequence(m, &f, &ps, &g, SUITE_WORK_BUDGET)?.holds {
                        all = false;
                        break;
                    }
                }
                if !all {
                    break;
                }
            }
            if d != all {
                bad = Some(sequent(&ps, &g));
                break 'm;
            }
        }
        items.push(sampled_failure(
            "deg consequence equals consequence over all (T, F), F a lattice filter",
            bad,
            samples.matrix,
        ));
    } else {
        warnings.push("matrix comparison skipped for k > 2".to_string());
    }

    for logic in [Logic::Deg, Logic::Assert] {
        let mut mono = None;
        let mut cut = None;
        for _ in 0..samples.monotonicity {
            let (ps, g) = random_sequent(&mut rng, &vars, 3);
            let extra = random_formula(&mut rng, &vars, 3, true);
            let mut more = ps.clone();
            more.push(extra.clone());
            let base = holds(k, logic, &ps, &g)?;
            if mono.is_none() && base && !holds(k, logic, &more, &g)? {
                mono = Some(format!("{} but not with {extra}", sequent(&ps, &g)));
            }
            // cut: Γ ⊨ ψ and Γ, ψ ⊨ φ give Γ ⊨ φ
            if cut.is_none()
                && !base
                && holds(k, logic, &ps, &extra)?
                && holds(k, logic, &more, &g)?
            {
                cut = Some(format!("{} with cut formula {extra}", sequent(&ps, &g)));
            }
        }
        let tag = logic_tag(logic);
        items.push(sampled_failure(
            &format!("monotonicity [{tag}]"),
            mono,
            samples.monotonicity,
        ));
        items.push(sampled_failure(
            &format!("cut [{tag}]"),
            cut,
            samples.monotonicity,
        ));
    }

    // a fixed separating example for strict containment
    let p = parse("p")?;
    let np = parse("~p")?;
    let q = parse("q")?;
    let (_, v) = decide(k, Logic::Deg, &[p.clone(), np.clone()], &q)?;
    items.push(LawItem {
        law: "p, ~p |= q separates the relations (deg fails, assert holds)".into(),
        holds: !v.holds && holds(k, Logic::Assert, &[p, np], &q)?,
        expected: true,
        mutant: false,
        witness: witness_of(&v),
    });

    Ok(LawReport::new(
        "consequence",
        k,
        &format!("{SEMANTIC}; sampled with seed {}", samples.seed),
        items,
        warnings,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn logic_suites_k1() {
        for r in [
            check_lfi(1).unwrap(),
            check_lfu(1).unwrap(),
            check_propagation(1).unwrap(),
            check_equivalential(1).unwrap(),
            check_blok_pigozzi(1).unwrap(),
        ] {
            assert!(r.passed, "{}: {:?}", r.suite, r.failures());
        }
    }

    #[test]
    fn lfi_witness_is_constant_a() {
        let r = check_lfi(2).unwrap();
        assert!(r.passed, "{:?}", r.failures());
        let w = r.items[0].witness.as_ref().unwrap();
        assert_eq!(w.algebra, "T4,2");
        assert_eq!(w.assignment["p"], "(a,a)");
    }

    #[test]
    fn selfextensional_small() {
        let r = check_selfextensionality_samples(1, 10).unwrap();
        assert!(r.passed, "{:?}", r.failures());
        assert!(r.warnings.iter().any(|w| w.contains("p / q")));
    }

    #[test]
    fn consequence_small() {
        let s = SampleSizes {
            containment: 40,
            theorems: 40,
            matrix: 20,
            monotonicity: 20,
            selfextensional: 5,
            seed: 7,
        };
        let r = check_consequence_properties(1, &s).unwrap();
        assert!(r.passed, "{:?}", r.failures());
    }
}
