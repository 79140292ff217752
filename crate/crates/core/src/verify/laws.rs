//! Equational and quasi-equational laws, stated in the formula language and
//! checked over every assignment in T3,k and then T4,k.

use std::collections::BTreeMap;

use super::{LawItem, LawReport, Witness, EQUATIONAL, QUASI, SUITE_WORK_BUDGET};
use crate::algebra::Algebra;
use crate::base::BaseFamily;
use crate::error::{Error, Result};
use crate::formula::{evaluate, parse, render_valuation, Formula, Program};
use crate::product::{AlgElement, CyclicAlgebra};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Eq,
    Le,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub rel: Rel,
    pub left: Formula,
    pub right: Formula,
}

/// `hyp ; hyp => concl` where each atom is `f = g` or `f <= g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Statement {
    pub hyps: Vec<Atom>,
    pub concl: Atom,
}

fn parse_atom(text: &str) -> Result<Atom> {
    let (rel, sep) = if text.contains(" <= ") {
        (Rel::Le, " <= ")
    } else {
        (Rel::Eq, " = ")
    };
    let (l, r) = text
        .split_once(sep)
        .ok_or_else(|| Error::usage(format!("law atom `{text}` needs `=` or `<=`")))?;
    Ok(Atom {
        rel,
        left: parse(l.trim())?,
        right: parse(r.trim())?,
    })
}

impl Statement {
    pub fn parse(text: &str) -> Result<Self> {
        let (hyps, concl) = match text.split_once(" => ") {
            Some((h, c)) => (
                h.split(" ; ").map(parse_atom).collect::<Result<Vec<_>>>()?,
                parse_atom(c)?,
            ),
            None => (Vec::new(), parse_atom(text)?),
        };
        Ok(Statement { hyps, concl })
    }

    fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.hyps.iter().chain(std::iter::once(&self.concl))
    }

    pub fn vars(&self) -> Vec<String> {
        let mut v = std::collections::BTreeSet::new();
        for a in self.atoms() {
            v.extend(a.left.vars());
            v.extend(a.right.vars());
        }
        v.into_iter().collect()
    }

    pub fn is_equational(&self) -> bool {
        self.hyps.is_empty()
    }
}

fn holds<A: Algebra>(alg: &A, rel: Rel, l: A::Elem, r: A::Elem) -> bool {
    match rel {
        Rel::Eq => l == r,
        Rel::Le => alg.le(l, r),
    }
}

#[derive(Debug, Clone)]
pub struct Law {
    pub id: String,
    pub text: String,
    pub statement: Statement,
    pub mutant: bool,
}

impl Law {
    pub fn new(id: &str, text: &str) -> Result<Self> {
        Ok(Law {
            id: id.to_string(),
            text: text.to_string(),
            statement: Statement::parse(text)?,
            mutant: false,
        })
    }

    pub fn mutant(id: &str, text: &str) -> Result<Self> {
        Ok(Law {
            mutant: true,
            ..Law::new(id, text)?
        })
    }

    /// Least violating assignment in `alg`, if any.
    pub fn find_violation<A: Algebra>(
        &self,
        alg: &A,
        budget: u128,
    ) -> Result<Option<BTreeMap<String, String>>> {
        let vars = self.statement.vars();
        let roots: Vec<&Formula> = self
            .statement
            .atoms()
            .flat_map(|a| [&a.left, &a.right])
            .collect();
        let prog = Program::compile_with_vars(&roots, alg.period(), vars.clone())?;
        let nh = self.statement.hyps.len();
        let rels: Vec<Rel> = self.statement.atoms().map(|a| a.rel).collect();
        let known: Vec<usize> = (0..=nh)
            .map(|i| prog.root_level(2 * i).max(prog.root_level(2 * i + 1)))
            .collect();
        let found = prog.search(
            alg,
            budget,
            |depth, r| {
                (0..nh).any(|i| known[i] <= depth && !holds(alg, rels[i], r(2 * i), r(2 * i + 1)))
            },
            |r| {
                (0..nh).all(|i| holds(alg, rels[i], r(2 * i), r(2 * i + 1)))
                    && !holds(alg, rels[nh], r(2 * nh), r(2 * nh + 1))
            },
        )?;
        Ok(found.map(|a| render_valuation(alg, &vars, &a)))
    }

    /// Re-evaluates through [`evaluate`] whether `assignment` violates the law.
    pub fn violated_by(
        &self,
        alg: &CyclicAlgebra,
        assignment: &BTreeMap<String, String>,
    ) -> Result<bool> {
        let v: BTreeMap<String, AlgElement> = assignment
            .iter()
            .map(|(x, e)| Ok((x.clone(), alg.parse_element(e)?)))
            .collect::<Result<_>>()?;
        let sat = |a: &Atom| -> Result<bool> {
            Ok(holds(
                alg,
                a.rel,
                evaluate(&a.left, alg, &v)?,
                evaluate(&a.right, alg, &v)?,
            ))
        };
        for h in &self.statement.hyps {
            if !sat(h)? {
                return Ok(false);
            }
        }
        Ok(!sat(&self.statement.concl)?)
    }
}

/// T3,k then T4,k.
pub(crate) fn law_hosts(k: usize) -> Result<Vec<CyclicAlgebra>> {
    Ok(vec![
        CyclicAlgebra::full(BaseFamily::Three, k)?,
        CyclicAlgebra::full(BaseFamily::Four, k)?,
    ])
}

pub(crate) fn check_laws(suite: &str, k: usize, laws: &[Law]) -> Result<LawReport> {
    let hosts = law_hosts(k)?;
    let mut items = Vec::new();
    for law in laws {
        let mut witness = None;
        for h in &hosts {
            if let Some(a) = law.find_violation(h, SUITE_WORK_BUDGET)? {
                if !law.violated_by(h, &a)? {
                    return Err(Error::inconsistency(format!(
                        "witness for {} does not re-evaluate to a violation",
                        law.id
                    )));
                }
                witness = Some(Witness {
                    algebra: h.label().to_string(),
                    assignment: a,
                    note: None,
                });
                break;
            }
        }
        items.push(LawItem {
            law: format!("{} {}", law.id, law.text),
            holds: witness.is_none(),
            expected: !law.mutant,
            mutant: law.mutant,
            witness,
        });
    }
    let completeness = if laws.iter().all(|l| l.statement.is_equational()) {
        EQUATIONAL.to_string()
    } else {
        format!("{EQUATIONAL}; {QUASI}")
    };
    Ok(LawReport::new(suite, k, &completeness, items, Vec::new()))
}

fn build(table: &[(&str, &str)], mutants: &[(&str, &str)]) -> Result<Vec<Law>> {
    let mut out: Vec<Law> = table
        .iter()
        .map(|(i, t)| Law::new(i, t))
        .collect::<Result<_>>()?;
    for (i, t) in mutants {
        out.push(Law::mutant(i, t)?);
    }
    Ok(out)
}

pub fn t_laws() -> Result<Vec<Law>> {
    build(
        &[
            ("(T1)", "tri(0) = 0"),
            ("(T1)", "tri(1) = 1"),
            ("(T2)", "tri(x) <= x"),
            ("(T2)", "x <= nabla(x)"),
            ("(T3)", "x <= y => tri(x) <= tri(y)"),
            ("(T4)", "tri(x) /\\ ~tri(x) = 0"),
            ("(T4)", "tri(x) \\/ ~tri(x) = 1"),
            ("(T5)", "(~tri(x))* = tri(x)"),
            ("(T6)", "(~tri(x))* = tri((~x)*)"),
            ("(T7)", "tri(tri(x)) = tri(x)"),
            ("(T7)", "tri(nabla(x)) = nabla(x)"),
            ("(T7)", "nabla(tri(x)) = tri(x)"),
            ("(T8)", "tri(x)* = ~tri(x)"),
            ("(T9)", "tri(~tri(x)) = ~tri(x)"),
            ("(T10)", "tri(x /\\ y) = tri(x) /\\ tri(y)"),
            ("(T10bis)", "nabla(x \\/ y) = nabla(x) \\/ nabla(y)"),
            ("(T11)", "tri(tri(x)) = tri(x)"),
            ("(T11)", "x = tri(x) => x = nabla(x)"),
            ("(T11)", "x = nabla(x) => x = tri(x)"),
            ("(T12)", "tri(tri(x) /\\ tri(y)) = tri(x) /\\ tri(y)"),
            ("(T12)", "tri(tri(x) \\/ tri(y)) = tri(x) \\/ tri(y)"),
            ("(T12)", "tri(~tri(x)) = ~tri(x)"),
            ("(T12)", "tri(tri(x)*) = tri(x)*"),
            ("(T12)", "tri(t(tri(x))) = t(tri(x))"),
            ("(T13)", "~x /\\ tri(x) = 0"),
            ("(T13)", "x \\/ nabla(~x) = 1"),
            ("(T14)", "x \\/ ~tri(x) = 1"),
            ("(T15)", "tri(tri(x) \\/ y) = tri(x) \\/ tri(y)"),
            ("(T16)", "tri(~tri(x) \\/ y) = ~tri(x) \\/ tri(y)"),
            ("(T17)", "nabla(tri(x) /\\ y) = tri(x) /\\ nabla(y)"),
            ("(T18)", "tri(nabla(x) \\/ y) = nabla(x) \\/ tri(y)"),
        ],
        &[
            ("(T2-mutant)", "x <= tri(x)"),
            ("(T2-mutant)", "nabla(x) <= x"),
            ("(T10-mutant)", "tri(x \\/ y) = tri(x) \\/ tri(y)"),
        ],
    )
}

pub fn cyc_imp_laws(k: usize) -> Result<Vec<Law>> {
    let mut table: Vec<(String, String)> = vec![
        ("(i)".into(), "x ~> x = 1".into()),
        ("(ii)".into(), "x ~> tri(x) = 1".into()),
    ];
    for s in 0..=2 * k {
        table.push((format!("(iii) s={s}"), format!("x ~> t^{s}(x) = 1")));
    }
    for (i, t) in [
        ("(iv)", "x ~> (x /\\ y) = x ~> y"),
        ("(v)", "x <= y => z ~> x <= z ~> y"),
        ("(vi)", "((x ~> y) ~> x) ~> x = 1"),
        ("(vii)", "x ~> (y ~> x) = 1"),
        ("(viii)", "1 ~> x = 1 => x = 1"),
        ("(ix)", "x ~> (y ~> z) = (x ~> y) ~> (x ~> z)"),
        ("(x)", "x ~> 1 = 1"),
    ] {
        table.push((i.into(), t.into()));
    }
    let table: Vec<(&str, &str)> = table
        .iter()
        .map(|(a, b)| (a.as_str(), b.as_str()))
        .collect();
    build(
        &table,
        &[
            ("(i-mutant)", "x ~> y = 1"),
            ("(iv-mutant)", "x ~> (x /\\ y) = x"),
            ("(vi-mutant)", "(x ~> y) ~> x = 1"),
        ],
    )
}

pub fn arrow_laws() -> Result<Vec<Law>> {
    build(
        &[
            ("(i)", "x <-> y = y <-> x"),
            ("(ii)", "x <-> y = ~x <-> ~y"),
            ("(iii)", "x <-> x = 1"),
            ("(iv)", "(x <-> y) /\\ (y <-> z) <= x <-> z"),
            ("(v)", "(x <-> y) /\\ (z <-> w) <= (x /\\ z) <-> (y /\\ w)"),
            ("(vi)", "(x <-> y) /\\ (z <-> w) <= (x \\/ z) <-> (y \\/ w)"),
            ("(vii)", "x <-> y = x* <-> y*"),
            ("(viii)", "(x <-> y) /\\ x = (x <-> y) /\\ y"),
            ("(ix)", "1 <-> x = 1 => x = 1"),
            ("(ix)", "x = 1 => 1 <-> x = 1"),
        ],
        &[
            ("(iii-mutant)", "x <-> y = 1"),
            ("(viii-mutant)", "(x <-> y) /\\ x = x"),
        ],
    )
}

/// The laws T1–T18 on T3,k and T4,k.
pub fn check_t_laws(k: usize) -> Result<LawReport> {
    check_laws("t-laws", k, &t_laws()?)
}

/// The laws (i)–(x) of the cyclic implication ⇀.
pub fn check_cyc_imp_laws(k: usize) -> Result<LawReport> {
    check_laws("cyc-imp", k, &cyc_imp_laws(k)?)
}

/// The properties (i)–(ix) of x ⇒ y = (x → y) ∧ (∼y → ∼x).
pub fn check_arrow_props(k: usize) -> Result<LawReport> {
    check_laws("arrow", k, &arrow_laws()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statements_parse() {
        let s = Statement::parse("x <= y => tri(x) <= tri(y)").unwrap();
        assert_eq!(s.hyps.len(), 1);
        assert_eq!(s.concl.rel, Rel::Le);
        assert_eq!(s.vars(), vec!["x".to_string(), "y".to_string()]);
        assert!(Statement::parse("x ~> x").is_err());
    }

    #[test]
    fn t_laws_k1() {
        let r = check_t_laws(1).unwrap();
        assert!(r.passed, "{:?}", r.failures());
        let m = r.item("(T2-mutant) x <= tri(x)").unwrap();
        let w = m.witness.as_ref().unwrap();
        assert_eq!(w.algebra, "T3,1");
        assert_eq!(w.assignment["x"], "c");
    }

    #[test]
    fn cyc_imp_k2() {
        let r = check_cyc_imp_laws(2).unwrap();
        assert!(r.passed, "{:?}", r.failures());
        assert!(r.item("(iii) s=4 x ~> t^4(x) = 1").unwrap().holds);
    }

    #[test]
    fn arrow_vii_fails_on_t3() {
        let r = check_arrow_props(1).unwrap();
        let bad: Vec<&str> = r.failures().iter().map(|i| i.law.as_str()).collect();
        assert_eq!(bad, vec!["(vii) x <-> y = x* <-> y*"]);
        let w = r
            .item("(vii) x <-> y = x* <-> y*")
            .unwrap()
            .witness
            .clone()
            .unwrap();
        assert_eq!(w.algebra, "T3,1");
        assert!(
            r.item("(viii) (x <-> y) /\\ x = (x <-> y) /\\ y")
                .unwrap()
                .holds
        );
    }
}
