//! Expansion into the primitive signature, hash-consed compilation, and
//! exhaustive valuation search.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::ast::*;
use crate::algebra::{self, Algebra};
use crate::error::{Error, Result};

/// Default cap on |A|^vars × program size.
pub const DEFAULT_WORK_BUDGET: u128 = 1 << 28;

fn conj_all(items: Vec<Formula>) -> Formula {
    items.into_iter().reduce(and).unwrap_or(Formula::Top)
}

fn disj_all(items: Vec<Formula>) -> Formula {
    items.into_iter().reduce(or).unwrap_or(Formula::Bot)
}

fn t_times(f: Formula, i: u64) -> Formula {
    (0..i).fold(f, |acc, _| t(acc))
}

fn nabla_of(f: Formula) -> Formula {
    neg(and(neg(f.clone()), star(f)))
}

fn arrow_of(x: Formula, y: Formula) -> Formula {
    let j = or(x.clone(), y.clone());
    let m = and(x, y);
    or(
        neg(and(star(neg(j.clone())), j)),
        and(star(neg(m.clone())), m),
    )
}

fn iff_of(x: Formula, y: Formula) -> Formula {
    and(arrow_of(x.clone(), y.clone()), arrow_of(neg(y), neg(x)))
}

/// Rewrites all derived connectives for period `k`. The tree can grow
/// exponentially under nested sugar; [`Program::compile`] shares subterms instead.
pub fn expand(f: &Formula, k: usize) -> Formula {
    use Formula as F;
    let k64 = k as u64;
    let e = |g: &Formula| expand(g, k);
    match f {
        F::Var { .. } | F::Bot | F::Top => f.clone(),
        F::And { left, right } => and(e(left), e(right)),
        F::Or { left, right } => or(e(left), e(right)),
        F::Neg { arg } => neg(e(arg)),
        F::Star { arg } => star(e(arg)),
        F::T { arg } => t(e(arg)),
        F::TPow { power, arg } => t_times(e(arg), power % k64),
        F::Nabla { arg } => nabla_of(e(arg)),
        F::Triangle { arg } => neg(nabla_of(neg(e(arg)))),
        F::CycImp { left, right } => {
            let a = e(left);
            let terms = (1..=k64)
                .map(|i| nabla_of(neg(t_times(a.clone(), i))))
                .collect();
            or(disj_all(terms), e(right))
        }
        F::Arrow { left, right } => arrow_of(e(left), e(right)),
        F::Iff { left, right } => iff_of(e(left), e(right)),
        F::Circ { arg } => {
            let a = e(arg);
            let base = and(or(neg(a.clone()), a.clone()), star(and(a.clone(), neg(a))));
            conj_all((0..=k64).map(|i| t_times(base.clone(), i)).collect())
        }
        F::Delta { left, right } => {
            let (p, q) = (e(left), e(right));
            conj_all(
                (0..k64)
                    .map(|i| iff_of(t_times(p.clone(), i), t_times(q.clone(), i)))
                    .collect(),
            )
        }
    }
}

/// Evaluates sugar directly through the algebra's derived operations, without
/// expanding. Used to cross-check [`Program`].
pub fn evaluate_direct<A: Algebra + ?Sized>(
    f: &Formula,
    alg: &A,
    v: &BTreeMap<String, A::Elem>,
) -> Result<A::Elem> {
    use Formula as F;
    let e = |g: &Formula| evaluate_direct(g, alg, v);
    Ok(match f {
        F::Var { name } => *v
            .get(name)
            .ok_or_else(|| Error::UnboundVariable(name.clone()))?,
        F::Bot => alg.zero(),
        F::Top => alg.one(),
        F::And { left, right } => alg.meet(e(left)?, e(right)?),
        F::Or { left, right } => alg.join(e(left)?, e(right)?),
        F::Neg { arg } => alg.neg(e(arg)?),
        F::Star { arg } => alg.pseudo(e(arg)?),
        F::T { arg } => alg.shift(e(arg)?),
        F::TPow { power, arg } => alg.shift_pow(e(arg)?, (*power % alg.period() as u64) as usize),
        F::Nabla { arg } => alg.nabla(e(arg)?),
        F::Triangle { arg } => alg.triangle(e(arg)?),
        F::CycImp { left, right } => algebra::cyclic_implication(alg, e(left)?, e(right)?),
        F::Arrow { left, right } => algebra::arrow(alg, e(left)?, e(right)?),
        F::Iff { left, right } => algebra::biconditional(alg, e(left)?, e(right)?),
        F::Circ { arg } => algebra::circ(alg, e(arg)?),
        F::Delta { left, right } => algebra::delta(alg, e(left)?, e(right)?),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Node {
    Var(u32),
    Bot,
    Top,
    And(u32, u32),
    Or(u32, u32),
    Neg(u32),
    Star(u32),
    T(u32),
}

/// A shared DAG of primitive operations for one or more root formulas.
/// Nodes are in topological order; `level` is 1 + the largest variable
/// index a node depends on (0 for closed nodes).
#[derive(Debug, Clone)]
pub struct Program {
    k: usize,
    vars: Vec<String>,
    nodes: Vec<Node>,
    level: Vec<usize>,
    by_level: Vec<Vec<u32>>,
    roots: Vec<u32>,
}

struct Builder<'a> {
    k: usize,
    var_index: &'a HashMap<String, u32>,
    nodes: Vec<Node>,
    level: Vec<usize>,
    interned: HashMap<Node, u32>,
    memo: HashMap<Formula, u32>,
}

impl Builder<'_> {
    fn node(&mut self, n: Node) -> u32 {
        if let Some(&id) = self.interned.get(&n) {
            return id;
        }
        let lv = |i: u32| self.level[i as usize];
        let level = match n {
            Node::Var(i) => i as usize + 1,
            Node::Bot | Node::Top => 0,
            Node::And(a, b) | Node::Or(a, b) => lv(a).max(lv(b)),
            Node::Neg(a) | Node::Star(a) | Node::T(a) => lv(a),
        };
        let id = self.nodes.len() as u32;
        self.nodes.push(n);
        self.level.push(level);
        self.interned.insert(n, id);
        id
    }

    fn and(&mut self, a: u32, b: u32) -> u32 {
        self.node(Node::And(a, b))
    }
    fn or(&mut self, a: u32, b: u32) -> u32 {
        self.node(Node::Or(a, b))
    }
    fn neg(&mut self, a: u32) -> u32 {
        self.node(Node::Neg(a))
    }
    fn star(&mut self, a: u32) -> u32 {
        self.node(Node::Star(a))
    }
    fn t_times(&mut self, a: u32, i: u64) -> u32 {
        (0..i).fold(a, |acc, _| self.node(Node::T(acc)))
    }
    fn nabla(&mut self, a: u32) -> u32 {
        let na = self.neg(a);
        let sa = self.star(a);
        let m = self.and(na, sa);
        self.neg(m)
    }
    fn arrow(&mut self, x: u32, y: u32) -> u32 {
        let j = self.or(x, y);
        let m = self.and(x, y);
        let nj = self.neg(j);
        let sj = self.star(nj);
        let l0 = self.and(sj, j);
        let l = self.neg(l0);
        let nm = self.neg(m);
        let sm = self.star(nm);
        let r = self.and(sm, m);
        self.or(l, r)
    }
    fn iff(&mut self, x: u32, y: u32) -> u32 {
        let a = self.arrow(x, y);
        let (nx, ny) = (self.neg(x), self.neg(y));
        let b = self.arrow(ny, nx);
        self.and(a, b)
    }

    fn compile(&mut self, f: &Formula) -> u32 {
        if let Some(&id) = self.memo.get(f) {
            return id;
        }
        use Formula as F;
        let k = self.k as u64;
        let id = match f {
            F::Var { name } => self.node(Node::Var(self.var_index[name])),
            F::Bot => self.node(Node::Bot),
            F::Top => self.node(Node::Top),
            F::And { left, right } => {
                let (a, b) = (self.compile(left), self.compile(right));
                self.and(a, b)
            }
            F::Or { left, right } => {
                let (a, b) = (self.compile(left), self.compile(right));
                self.or(a, b)
            }
            F::Neg { arg } => {
                let a = self.compile(arg);
                self.neg(a)
            }
            F::Star { arg } => {
                let a = self.compile(arg);
                self.star(a)
            }
            F::T { arg } => {
                let a = self.compile(arg);
                self.t_times(a, 1)
            }
            F::TPow { power, arg } => {
                let a = self.compile(arg);
                self.t_times(a, power % k)
            }
            F::Nabla { arg } => {
                let a = self.compile(arg);
                self.nabla(a)
            }
            F::Triangle { arg } => {
                let a = self.compile(arg);
                let na = self.neg(a);
                let n = self.nabla(na);
                self.neg(n)
            }
            F::CycImp { left, right } => {
                let a = self.compile(left);
                let b = self.compile(right);
                let mut acc = None;
                for i in 1..=k {
                    let ti = self.t_times(a, i);
                    let nt = self.neg(ti);
                    let term = self.nabla(nt);
                    acc = Some(match acc {
                        None => term,
                        Some(prev) => self.or(prev, term),
                    });
                }
                self.or(acc.unwrap(), b)
            }
            F::Arrow { left, right } => {
                let (a, b) = (self.compile(left), self.compile(right));
                self.arrow(a, b)
            }
            F::Iff { left, right } => {
                let (a, b) = (self.compile(left), self.compile(right));
                self.iff(a, b)
            }
            F::Circ { arg } => {
                let a = self.compile(arg);
                let na = self.neg(a);
                let j = self.or(na, a);
                let m = self.and(a, na);
                let sm = self.star(m);
                let base = self.and(j, sm);
                let mut acc = base;
                for i in 1..=k {
                    let ti = self.t_times(base, i);
                    acc = self.and(acc, ti);
                }
                acc
            }
            F::Delta { left, right } => {
                let (p, q) = (self.compile(left), self.compile(right));
                let mut acc = None;
                for i in 0..k {
                    let (tp, tq) = (self.t_times(p, i), self.t_times(q, i));
                    let term = self.iff(tp, tq);
                    acc = Some(match acc {
                        None => term,
                        Some(prev) => self.and(prev, term),
                    });
                }
                acc.unwrap()
            }
        };
        self.memo.insert(f.clone(), id);
        id
    }
}

impl Program {
    /// Compiles `roots` for period `k` over the given variable order. Every
    /// variable occurring in a root must be listed.
    pub fn compile_with_vars(roots: &[&Formula], k: usize, vars: Vec<String>) -> Result<Self> {
        if k == 0 {
            return Err(Error::usage("k must be at least 1"));
        }
        let var_index: HashMap<String, u32> = vars
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i as u32))
            .collect();
        for f in roots {
            if let Some(v) = f.vars().into_iter().find(|v| !var_index.contains_key(v)) {
                return Err(Error::UnboundVariable(v));
            }
        }
        let mut b = Builder {
            k,
            var_index: &var_index,
            nodes: Vec::new(),
            level: Vec::new(),
            interned: HashMap::new(),
            memo: HashMap::new(),
        };
        let roots: Vec<u32> = roots.iter().map(|f| b.compile(f)).collect();
        let mut by_level = vec![Vec::new(); vars.len() + 1];
        for (i, &l) in b.level.iter().enumerate() {
            by_level[l].push(i as u32);
        }
        Ok(Program {
            k,
            vars,
            nodes: b.nodes,
            level: b.level,
            by_level,
            roots,
        })
    }

    /// Compiles over the union of the roots' variables, in name order.
    pub fn compile(roots: &[&Formula], k: usize) -> Result<Self> {
        let vars: std::collections::BTreeSet<String> =
            roots.iter().flat_map(|f| f.vars()).collect();
        Self::compile_with_vars(roots, k, vars.into_iter().collect())
    }

    pub fn k(&self) -> usize {
        self.k
    }
    pub fn vars(&self) -> &[String] {
        &self.vars
    }
    pub fn len(&self) -> usize {
        self.nodes.len()
    }
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
    pub fn roots(&self) -> &[u32] {
        &self.roots
    }
    /// Depth in the search at which root `i` becomes known.
    pub fn root_level(&self, i: usize) -> usize {
        self.level[self.roots[i] as usize]
    }

    #[inline]
    fn eval_node<A: Algebra + ?Sized>(
        &self,
        alg: &A,
        n: u32,
        vals: &[A::Elem],
        assign: &[usize],
    ) -> A::Elem {
        match self.nodes[n as usize] {
            Node::Var(i) => alg.element(assign[i as usize]),
            Node::Bot => alg.zero(),
            Node::Top => alg.one(),
            Node::And(a, b) => alg.meet(vals[a as usize], vals[b as usize]),
            Node::Or(a, b) => alg.join(vals[a as usize], vals[b as usize]),
            Node::Neg(a) => alg.neg(vals[a as usize]),
            Node::Star(a) => alg.pseudo(vals[a as usize]),
            Node::T(a) => alg.shift(vals[a as usize]),
        }
    }

    /// Root values under an assignment of universe indices (one per variable).
    pub fn run<A: Algebra + ?Sized>(&self, alg: &A, assign: &[usize]) -> Result<Vec<A::Elem>> {
        self.check(alg)?;
        if assign.len() != self.vars.len() || assign.iter().any(|&i| i >= alg.size()) {
            return Err(Error::usage(
                "assignment does not match the program's variables",
            ));
        }
        let mut vals = vec![alg.zero(); self.nodes.len()];
        for n in 0..self.nodes.len() as u32 {
            vals[n as usize] = self.eval_node(alg, n, &vals, assign);
        }
        Ok(self.roots.iter().map(|&r| vals[r as usize]).collect())
    }

    fn check<A: Algebra + ?Sized>(&self, alg: &A) -> Result<()> {
        // sound on any algebra whose shift has period dividing k
        if !self.k.is_multiple_of(alg.period()) {
            return Err(Error::usage(format!(
                "formula expanded for k={} evaluated on an algebra of period {}",
                self.k,
                alg.period()
            )));
        }
        Ok(())
    }

    /// Estimated work |A|^vars × nodes, checked against `budget`.
    pub fn check_budget(&self, universe: usize, budget: u128) -> Result<()> {
        let needed = (universe as u128)
            .checked_pow(self.vars.len() as u32)
            .and_then(|v| v.checked_mul(self.nodes.len().max(1) as u128));
        match needed {
            Some(w) if w <= budget => Ok(()),
            Some(w) => Err(Error::resource(
                "valuation work (|A|^vars × subformulas)",
                w,
                budget,
            )),
            None => Err(Error::resource(
                "valuation work (|A|^vars × subformulas)",
                format!("{universe}^{} × {}", self.vars.len(), self.nodes.len()),
                budget,
            )),
        }
    }

    /// Least valuation (lexicographic in universe indices, first variable most
    /// significant) for which `hit` holds on the root values. `prune(depth,
    /// roots)` may reject a partial assignment of the first `depth` variables;
    /// it only sees roots whose level is at most `depth` (others are stale).
    /// The result does not depend on the number of worker threads.
    pub fn search<A, P, H>(
        &self,
        alg: &A,
        budget: u128,
        prune: P,
        hit: H,
    ) -> Result<Option<Vec<usize>>>
    where
        A: Algebra + ?Sized,
        P: Fn(usize, &dyn Fn(usize) -> A::Elem) -> bool + Sync,
        H: Fn(&dyn Fn(usize) -> A::Elem) -> bool + Sync,
    {
        self.check(alg)?;
        self.check_budget(alg.size(), budget)?;
        let m = self.vars.len();
        let mut vals = vec![alg.zero(); self.nodes.len()];
        let assign = vec![0usize; m];
        for &n in &self.by_level[0] {
            vals[n as usize] = self.eval_node(alg, n, &vals, &assign);
        }
        {
            let roots = |i: usize| vals[self.roots[i] as usize];
            if prune(0, &roots) {
                return Ok(None);
            }
            if m == 0 {
                return Ok(hit(&roots).then(Vec::new));
            }
        }
        let found = (0..alg.size()).into_par_iter().find_map_first(|first| {
            let mut vals = vals.clone();
            let mut assign = assign.clone();
            assign[0] = first;
            self.descend(alg, 1, &mut vals, &mut assign, &prune, &hit)
                .then(|| assign.clone())
        });
        Ok(found)
    }

    fn descend<A, P, H>(
        &self,
        alg: &A,
        depth: usize,
        vals: &mut Vec<A::Elem>,
        assign: &mut Vec<usize>,
        prune: &P,
        hit: &H,
    ) -> bool
    where
        A: Algebra + ?Sized,
        P: Fn(usize, &dyn Fn(usize) -> A::Elem) -> bool,
        H: Fn(&dyn Fn(usize) -> A::Elem) -> bool,
    {
        for &n in &self.by_level[depth] {
            vals[n as usize] = self.eval_node(alg, n, vals, assign);
        }
        {
            let roots = |i: usize| vals[self.roots[i] as usize];
            if prune(depth, &roots) {
                return false;
            }
            if depth == self.vars.len() {
                return hit(&roots);
            }
        }
        for v in 0..alg.size() {
            assign[depth] = v;
            if self.descend(alg, depth + 1, vals, assign, prune, hit) {
                return true;
            }
        }
        false
    }
}

/// Homomorphic evaluation; sugar is expanded for the algebra's period.
pub fn evaluate<A: Algebra + ?Sized>(
    f: &Formula,
    alg: &A,
    v: &BTreeMap<String, A::Elem>,
) -> Result<A::Elem> {
    let vars: Vec<String> = f.vars().into_iter().collect();
    if let Some(missing) = vars.iter().find(|x| !v.contains_key(*x)) {
        return Err(Error::UnboundVariable(missing.clone()));
    }
    let prog = Program::compile_with_vars(&[f], alg.period(), vars.clone())?;
    let assign = vars
        .iter()
        .map(|x| {
            alg.index_of(v[x])
                .ok_or_else(|| Error::usage(format!("value of `{x}` is not in {}", alg.name())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(prog.run(alg, &assign)?[0])
}

/// All |A|^|vars| assignments of universe indices, lexicographic with the
/// first variable most significant.
#[derive(Debug, Clone)]
pub struct Valuations {
    base: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for Valuations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let mut cur = self.current.take().unwrap();
        let mut i = cur.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < self.base {
                self.current = Some(cur);
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    }
}

pub fn enumerate_valuations(vars: usize, universe: usize, budget: u128) -> Result<Valuations> {
    let total = (universe as u128).checked_pow(vars as u32);
    match total {
        Some(t) if t <= budget => Ok(Valuations {
            base: universe,
            current: (t > 0).then(|| vec![0; vars]),
        }),
        _ => Err(Error::resource(
            "valuations",
            format!("{universe}^{vars}"),
            budget,
        )),
    }
}

/// Renders an assignment as var ↦ element string.
pub fn render_valuation<A: Algebra + ?Sized>(
    alg: &A,
    vars: &[String],
    assign: &[usize],
) -> BTreeMap<String, String> {
    vars.iter()
        .zip(assign)
        .map(|(v, &i)| (v.clone(), alg.format(alg.element(i))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;
    use crate::base::BaseFamily;
    use crate::product::{AlgElement, CyclicAlgebra};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn alg(f: BaseFamily, k: usize) -> CyclicAlgebra {
        CyclicAlgebra::full(f, k).unwrap()
    }

    fn val(a: &CyclicAlgebra, pairs: &[(&str, &str)]) -> BTreeMap<String, AlgElement> {
        pairs
            .iter()
            .map(|(v, e)| (v.to_string(), a.parse_element(e).unwrap()))
            .collect()
    }

    #[test]
    fn expansion_examples() {
        let p = var("p");
        let q = var("q");
        assert_eq!(
            expand(&delta(p.clone(), q.clone()), 1),
            expand(&iff(p.clone(), q.clone()), 1)
        );
        assert_eq!(
            expand(&nabla(p.clone()), 3),
            neg(and(neg(p.clone()), star(p.clone())))
        );
        let base = and(
            or(neg(p.clone()), p.clone()),
            star(and(p.clone(), neg(p.clone()))),
        );
        assert_eq!(expand(&circ(p.clone()), 1), and(base.clone(), t(base)));
        assert_eq!(expand(&tpow(5, p.clone()), 2), t(p.clone()));
        assert!(expand(&parse("delta(p ~> q, o(tri(p)))").unwrap(), 3).is_primitive());
    }

    #[test]
    fn evaluation_examples() {
        let t4 = alg(BaseFamily::Four, 1);
        let c = evaluate(&circ(var("p")), &t4, &val(&t4, &[("p", "a")])).unwrap();
        assert_eq!(t4.format(c), "0");
        let d = evaluate(
            &parse("delta(p,q)").unwrap(),
            &t4,
            &val(&t4, &[("p", "a"), ("q", "b")]),
        )
        .unwrap();
        assert_eq!(t4.format(d), "0");
        let top = evaluate(&Formula::Top, &t4, &BTreeMap::new()).unwrap();
        assert_eq!(top, t4.one());
        assert!(matches!(
            evaluate(&var("p"), &t4, &BTreeMap::new()),
            Err(Error::UnboundVariable(v)) if v == "p"
        ));
    }

    #[test]
    fn valuation_counts() {
        assert_eq!(
            enumerate_valuations(1, 3, DEFAULT_WORK_BUDGET)
                .unwrap()
                .count(),
            3
        );
        assert_eq!(
            enumerate_valuations(2, 16, DEFAULT_WORK_BUDGET)
                .unwrap()
                .count(),
            256
        );
        let zero: Vec<_> = enumerate_valuations(0, 16, DEFAULT_WORK_BUDGET)
            .unwrap()
            .collect();
        assert_eq!(zero, vec![Vec::<usize>::new()]);
        let order: Vec<_> = enumerate_valuations(2, 2, DEFAULT_WORK_BUDGET)
            .unwrap()
            .collect();
        assert_eq!(order, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert!(matches!(
            enumerate_valuations(8, 64, DEFAULT_WORK_BUDGET),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn sugar_shortcuts_agree_with_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let formulas: Vec<Formula> = (0..60)
            .map(|_| random_formula(&mut rng, &["p", "q"], 4, true))
            .collect();
        for fam in [BaseFamily::Three, BaseFamily::Four] {
            for k in 1..=2 {
                let a = alg(fam, k);
                for f in &formulas {
                    let vars: Vec<String> = f.vars().into_iter().collect();
                    let prog = Program::compile_with_vars(&[f], k, vars.clone()).unwrap();
                    let tree =
                        Program::compile_with_vars(&[&expand(f, k)], k, vars.clone()).unwrap();
                    for assign in enumerate_valuations(vars.len(), a.size(), 1 << 20).unwrap() {
                        let v: BTreeMap<String, AlgElement> = vars
                            .iter()
                            .zip(&assign)
                            .map(|(x, &i)| (x.clone(), a.element(i)))
                            .collect();
                        let direct = evaluate_direct(f, &a, &v).unwrap();
                        assert_eq!(
                            prog.run(&a, &assign).unwrap()[0],
                            direct,
                            "{f} on {}",
                            a.label()
                        );
                        assert_eq!(tree.run(&a, &assign).unwrap()[0], direct);
                    }
                }
            }
        }
    }

    #[test]
    fn circ_detects_boolean_elements() {
        for fam in [BaseFamily::Two, BaseFamily::Three, BaseFamily::Four] {
            for k in 1..=3 {
                let a = alg(fam, k);
                let prog = Program::compile(&[&circ(var("p"))], k).unwrap();
                for i in 0..a.size() {
                    let x = a.element(i);
                    let boolean = a.meet(x, a.neg(x)) == a.zero();
                    assert_eq!(prog.run(&a, &[i]).unwrap()[0] == a.one(), boolean);
                }
            }
        }
    }

    #[test]
    fn search_finds_least_index() {
        let a = alg(BaseFamily::Four, 1);
        let f = parse("p /\\ q").unwrap();
        let prog = Program::compile(&[&f], 1).unwrap();
        let one = a.one();
        let found = prog
            .search(&a, DEFAULT_WORK_BUDGET, |_, _| false, |r| r(0) == one)
            .unwrap()
            .unwrap();
        assert_eq!(found, vec![3, 3]);
        let none = prog
            .search(&a, DEFAULT_WORK_BUDGET, |d, _| d == 1, |_| true)
            .unwrap();
        assert!(none.is_none());
    }
}
