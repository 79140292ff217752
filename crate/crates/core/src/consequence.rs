//! Semantic decision procedures for the degree-preserving logic ⊨ₖ^≤ and the
//! 1-assertional logic ⊨ₖ, plus consequence in a single logical matrix.
//!
//! Both logics are decided over the two generating algebras T_{4,k} and
//! T_{3,k}, searched in that order; within a host the least refuting valuation
//! (lexicographic over universe indices, variables in name order) is reported.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::base::BaseFamily;
use crate::error::{Error, Result};
use crate::formula::{evaluate, render_valuation, Formula, Program, DEFAULT_WORK_BUDGET};
use crate::product::{AlgElement, CyclicAlgebra};
use crate::subset::AlgSubset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Logic {
    /// ⊨ₖ^≤: ⋀ premises ≤ goal (goal = 1 with no premises)
    Deg,
    /// ⊨ₖ: premises all 1 forces goal = 1
    Assert,
    /// designated-set preservation in one matrix
    Matrix,
}

#[derive(Debug, Clone)]
pub struct Query {
    pub k: usize,
    pub premises: Vec<Formula>,
    pub goal: Formula,
    pub logic: Logic,
}

impl Query {
    pub fn new(k: usize, logic: Logic, premises: Vec<Formula>, goal: Formula) -> Self {
        Query {
            k,
            premises,
            goal,
            logic,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub algebra: String,
    pub valuation: BTreeMap<String, String>,
    /// ⋀ premises under the valuation, for the degree-preserving logic.
    #[serde(rename = "witnessBound", skip_serializing_if = "Option::is_none")]
    pub witness_bound: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub logic: Logic,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

/// T_{4,k} then T_{3,k}.
pub fn generator_hosts(k: usize) -> Result<Vec<CyclicAlgebra>> {
    Ok(vec![
        CyclicAlgebra::full(BaseFamily::Four, k)?,
        CyclicAlgebra::full(BaseFamily::Three, k)?,
    ])
}

fn all_vars(premises: &[Formula], goal: &Formula) -> Vec<String> {
    let mut vars = goal.vars();
    for p in premises {
        vars.extend(p.vars());
    }
    vars.into_iter().collect()
}

/// Searches one host for the least valuation refuting the query.
fn refute_in<A: Algebra>(
    alg: &A,
    logic: Logic,
    premises: &[Formula],
    goal: &Formula,
    designated: Option<&AlgSubset>,
    budget: u128,
) -> Result<Option<Counterexample>> {
    let vars = all_vars(premises, goal);
    let mut roots: Vec<&Formula> = premises.iter().collect();
    roots.push(goal);
    let prog = Program::compile_with_vars(&roots, alg.period(), vars.clone())?;
    let np = premises.len();
    let levels: Vec<usize> = (0..np).map(|i| prog.root_level(i)).collect();
    let (zero, one) = (alg.zero(), alg.one());
    let inside = |x: A::Elem| {
        let d = designated.expect("matrix query without designated set");
        alg.index_of(x).is_some_and(|i| d.contains(i))
    };

    let found = match logic {
        Logic::Deg if np > 0 => prog.search(
            alg,
            budget,
            |depth, r| {
                let m = (0..np)
                    .filter(|&i| levels[i] <= depth)
                    .fold(one, |m, i| alg.meet(m, r(i)));
                m == zero
            },
            |r| {
                let m = (0..np).fold(one, |m, i| alg.meet(m, r(i)));
                !alg.le(m, r(np))
            },
        )?,
        Logic::Deg | Logic::Assert => prog.search(
            alg,
            budget,
            |depth, r| (0..np).any(|i| levels[i] <= depth && r(i) != one),
            |r| (0..np).all(|i| r(i) == one) && r(np) != one,
        )?,
        Logic::Matrix => prog.search(
            alg,
            budget,
            |depth, r| (0..np).any(|i| levels[i] <= depth && !inside(r(i))),
            |r| (0..np).all(|i| inside(r(i))) && !inside(r(np)),
        )?,
    };
    let Some(assign) = found else {
        return Ok(None);
    };
    let witness_bound = (logic == Logic::Deg && np > 0).then(|| {
        let vals = prog.run(alg, &assign).expect("assignment from search");
        let m = vals[..np].iter().fold(one, |m, &x| alg.meet(m, x));
        alg.format(m)
    });
    Ok(Some(Counterexample {
        algebra: alg.name(),
        valuation: render_valuation(alg, &vars, &assign),
        witness_bound,
    }))
}

/// Decides ⊨ₖ^≤ or ⊨ₖ with the default work budget.
pub fn entails(q: &Query) -> Result<Verdict> {
    entails_with_budget(q, DEFAULT_WORK_BUDGET)
}

pub fn entails_with_budget(q: &Query, budget: u128) -> Result<Verdict> {
    if q.logic == Logic::Matrix {
        return Err(Error::usage("matrix consequence needs an explicit matrix"));
    }
    for host in generator_hosts(q.k)? {
        if let Some(c) = refute_in(&host, q.logic, &q.premises, &q.goal, None, budget)? {
            return Ok(Verdict {
                holds: false,
                logic: q.logic,
                k: q.k,
                counterexample: Some(c),
            });
        }
    }
    Ok(Verdict {
        holds: true,
        logic: q.logic,
        k: q.k,
        counterexample: None,
    })
}

pub fn entails_deg(k: usize, premises: &[Formula], goal: &Formula) -> Result<Verdict> {
    entails(&Query::new(k, Logic::Deg, premises.to_vec(), goal.clone()))
}

pub fn entails_assert(k: usize, premises: &[Formula], goal: &Formula) -> Result<Verdict> {
    entails(&Query::new(
        k,
        Logic::Assert,
        premises.to_vec(),
        goal.clone(),
    ))
}

pub fn is_theorem(k: usize, f: &Formula, logic: Logic) -> Result<Verdict> {
    entails(&Query::new(k, logic, Vec::new(), f.clone()))
}

/// Γ ⊨_M α for the matrix M = (alg, designated).
pub fn matrix_consequence<A: Algebra>(
    alg: &A,
    designated: &AlgSubset,
    premises: &[Formula],
    goal: &Formula,
    budget: u128,
) -> Result<Verdict> {
    designated.check_universe(alg.size())?;
    if designated.is_empty() {
        return Err(Error::usage("designated set must be nonempty"));
    }
    let c = refute_in(alg, Logic::Matrix, premises, goal, Some(designated), budget)?;
    Ok(Verdict {
        holds: c.is_none(),
        logic: Logic::Matrix,
        k: alg.period(),
        counterexample: c,
    })
}

impl Verdict {
    /// Re-evaluates the counterexample through [`evaluate`] and confirms it
    /// refutes the query. A verdict that holds re-checks trivially.
    pub fn recheck(&self, q: &Query) -> Result<bool> {
        let Some(c) = &self.counterexample else {
            return Ok(self.holds);
        };
        if self.holds {
            return Ok(false);
        }
        let host = generator_hosts(q.k)?
            .into_iter()
            .find(|h| h.name() == c.algebra)
            .ok_or_else(|| Error::inconsistency(format!("unknown host {}", c.algebra)))?;
        let v: BTreeMap<String, AlgElement> = c
            .valuation
            .iter()
            .map(|(x, e)| Ok((x.clone(), host.parse_element(e)?)))
            .collect::<Result<_>>()?;
        let ps = q
            .premises
            .iter()
            .map(|p| evaluate(p, &host, &v))
            .collect::<Result<Vec<_>>>()?;
        let g = evaluate(&q.goal, &host, &v)?;
        let one = host.one();
        Ok(match q.logic {
            Logic::Deg if !ps.is_empty() => {
                let m = ps.iter().fold(one, |m, &x| host.meet(m, x));
                !host.le(m, g) && c.witness_bound.as_deref() == Some(host.format(m).as_str())
            }
            _ => ps.iter().all(|&x| x == one) && g != one,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn deg_examples() {
        for k in 1..=3 {
            let v = entails_deg(k, &[f("p"), f("~p")], &f("q")).unwrap();
            assert!(!v.holds);
            let c = v.counterexample.as_ref().unwrap();
            assert!(c.algebra.starts_with("T4"));
            let a = if k == 1 {
                "a".to_string()
            } else {
                format!("({})", vec!["a"; k].join(","))
            };
            let z = if k == 1 {
                "0".to_string()
            } else {
                format!("({})", vec!["0"; k].join(","))
            };
            assert_eq!(c.valuation["p"], a);
            assert_eq!(c.valuation["q"], z);
            let q = Query::new(k, Logic::Deg, vec![f("p"), f("~p")], f("q"));
            assert!(v.recheck(&q).unwrap());
            assert!(
                entails_deg(k, &[f("o(p)"), f("p"), f("~p")], &f("q"))
                    .unwrap()
                    .holds
            );
            assert!(entails_deg(k, &[f("p /\\ q")], &f("p")).unwrap().holds);
        }
    }

    #[test]
    fn assert_examples() {
        for k in 1..=3 {
            assert!(
                entails_assert(k, &[f("p"), f("~p")], &f("q"))
                    .unwrap()
                    .holds
            );
            let v = is_theorem(k, &f("p \\/ ~p"), Logic::Assert).unwrap();
            assert!(!v.holds);
            assert!(v.counterexample.unwrap().algebra.starts_with("T4"));
            assert!(
                is_theorem(k, &f("delta(p,p)"), Logic::Assert)
                    .unwrap()
                    .holds
            );
            assert!(is_theorem(k, &f("p ~> p"), Logic::Deg).unwrap().holds);
            assert!(is_theorem(k, &f("o(bot)"), Logic::Deg).unwrap().holds);
        }
    }

    #[test]
    fn matrix_examples() {
        let t2 = CyclicAlgebra::full(BaseFamily::Two, 1).unwrap();
        let one = AlgSubset::from_indices(2, [1]).unwrap();
        assert!(
            matrix_consequence(&t2, &one, &[f("p /\\ q")], &f("p"), DEFAULT_WORK_BUDGET)
                .unwrap()
                .holds
        );
        let t4 = CyclicAlgebra::full(BaseFamily::Four, 1)
            .unwrap()
            .to_finite();
        let up_a = crate::filters::principal_filter(&t4, t4.find("a").unwrap());
        assert!(
            matrix_consequence(&t4, &up_a, &[f("p")], &f("t(p)"), DEFAULT_WORK_BUDGET)
                .unwrap()
                .holds
        );
        let t22 = CyclicAlgebra::full(BaseFamily::Two, 2).unwrap().to_finite();
        let up = crate::filters::principal_filter(&t22, t22.find("(0,1)").unwrap());
        let v = matrix_consequence(&t22, &up, &[f("p")], &f("t(p)"), DEFAULT_WORK_BUDGET).unwrap();
        assert!(!v.holds);
        assert_eq!(v.counterexample.unwrap().valuation["p"], "(0,1)");
        assert!(matrix_consequence(
            &t22,
            &AlgSubset::empty(4),
            &[],
            &f("p"),
            DEFAULT_WORK_BUDGET
        )
        .is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let big = f("p1 /\\ p2 /\\ p3 /\\ p4 /\\ p5 /\\ p6");
        assert!(matches!(
            is_theorem(3, &big, Logic::Deg),
            Err(Error::Resource { .. })
        ));
    }
}
