//! Filters, c-filters, cyclic deductive systems and congruences of a finite
//! 𝒞ₖ-algebra, together with the simplicity and maximality criteria that
//! connect them.
//!
//! Everything here works on table algebras and universe indices. Several
//! objects are computed along independent routes and cross-checked; a
//! disagreement surfaces as an [`Error::Inconsistency`].

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::algebra::{cyclic_box, cyclic_implication as cyc_imp, Algebra};
use crate::error::{Error, Result};
use crate::finite::FiniteAlgebra;
use crate::subset::AlgSubset;

/// Default cap on algebras for checks that scan filters or subsets.
pub const DEFAULT_FILTER_SCAN_LIMIT: usize = 256;

/// A named condition with its verdict and, when it fails, an offending element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub condition: String,
    pub holds: bool,
    pub witness: Option<String>,
}

impl ConditionReport {
    fn new(condition: &str, witness: Option<String>) -> Self {
        ConditionReport {
            condition: condition.to_string(),
            holds: witness.is_none(),
            witness,
        }
    }
}

fn elems(a: &FiniteAlgebra) -> std::ops::Range<u32> {
    0..a.size() as u32
}

/// ⋀ of a nonempty subset.
fn meet_of(a: &FiniteAlgebra, s: &AlgSubset) -> u32 {
    s.iter().fold(a.one(), |m, x| a.meet(m, x as u32))
}

pub fn principal_filter(a: &FiniteAlgebra, x: u32) -> AlgSubset {
    AlgSubset::from_predicate(a.size(), |y| a.le(x, y as u32))
}

pub fn is_filter(a: &FiniteAlgebra, s: &AlgSubset) -> bool {
    if s.universe_size() != a.size() || s.is_empty() {
        return false;
    }
    s.iter().all(|x| {
        let x = x as u32;
        elems(a).all(|y| !a.le(x, y) || s.contains(y as usize))
            && s.iter().all(|y| s.contains(a.meet(x, y as u32) as usize))
    })
}

pub fn is_proper(a: &FiniteAlgebra, s: &AlgSubset) -> bool {
    !s.contains(a.zero() as usize)
}

pub fn is_prime_filter(a: &FiniteAlgebra, s: &AlgSubset) -> bool {
    is_filter(a, s)
        && is_proper(a, s)
        && elems(a).all(|x| {
            elems(a).all(|y| {
                !s.contains(a.join(x, y) as usize)
                    || s.contains(x as usize)
                    || s.contains(y as usize)
            })
        })
}

/// Maximal proper filter: every strictly larger filter contains 0.
pub fn is_ultrafilter(a: &FiniteAlgebra, s: &AlgSubset) -> bool {
    if !is_filter(a, s) || !is_proper(a, s) {
        return false;
    }
    let m = meet_of(a, s);
    elems(a).all(|x| s.contains(x as usize) || a.meet(m, x) == a.zero())
}

/// All lattice filters; in a finite lattice these are the principal ones.
pub fn all_filters(a: &FiniteAlgebra) -> Vec<AlgSubset> {
    elems(a).map(|x| principal_filter(a, x)).collect()
}

pub fn prime_filters(a: &FiniteAlgebra) -> Vec<AlgSubset> {
    all_filters(a)
        .into_iter()
        .filter(|f| is_prime_filter(a, f))
        .collect()
}

pub fn ultrafilters(a: &FiniteAlgebra) -> Vec<AlgSubset> {
    all_filters(a)
        .into_iter()
        .filter(|f| is_ultrafilter(a, f))
        .collect()
}

/// Image of a subset under tⁱ.
pub fn shift_image(a: &FiniteAlgebra, s: &AlgSubset, i: usize) -> AlgSubset {
    s.map(|x| a.shift_pow(x as u32, i) as usize)
}

/// φ(P) = A ∖ ∼P
pub fn birula_rasiowa(a: &FiniteAlgebra, p: &AlgSubset) -> Result<AlgSubset> {
    p.check_universe(a.size())?;
    if !is_prime_filter(a, p) {
        return Err(Error::usage(
            "the Birula–Rasiowa transform needs a prime filter",
        ));
    }
    let negated = p.map(|x| a.neg(x as u32) as usize);
    Ok(negated.complement())
}

/// A filter closed under △ and t.
pub fn is_c_filter(a: &FiniteAlgebra, s: &AlgSubset) -> bool {
    is_filter(a, s)
        && s.iter().all(|x| {
            let x = x as u32;
            s.contains(a.triangle(x) as usize) && s.contains(a.shift(x) as usize)
        })
}

pub fn c_filters(a: &FiniteAlgebra) -> Vec<AlgSubset> {
    let mut out: Vec<AlgSubset> = all_filters(a)
        .into_iter()
        .filter(|f| is_c_filter(a, f))
        .collect();
    out.sort_by_key(|f| f.count());
    out
}

pub fn cyclic_implication(a: &FiniteAlgebra, x: u32, y: u32) -> u32 {
    cyc_imp(a, x, y)
}

/// (D_c1) 1 ∈ S and (D_c2) x, x⇀y ∈ S imply y ∈ S.
pub fn is_cyclic_deductive(a: &FiniteAlgebra, s: &AlgSubset) -> bool {
    s.universe_size() == a.size()
        && s.contains(a.one() as usize)
        && s.iter().all(|x| {
            elems(a)
                .all(|y| !s.contains(cyc_imp(a, x as u32, y) as usize) || s.contains(y as usize))
        })
}

/// Least cyclic deductive system containing `seeds`, by modus ponens to fixpoint.
fn mp_closure(a: &FiniteAlgebra, seeds: impl IntoIterator<Item = u32>) -> AlgSubset {
    let mut s = AlgSubset::empty(a.size());
    s.insert(a.one() as usize);
    for x in seeds {
        s.insert(x as usize);
    }
    loop {
        let mut grew = false;
        for x in s.members() {
            for y in elems(a) {
                if !s.contains(y as usize) && s.contains(cyc_imp(a, x as u32, y) as usize) {
                    s.insert(y as usize);
                    grew = true;
                }
            }
        }
        if !grew {
            return s;
        }
    }
}

/// Least c-filter containing `seeds`: up-closure, meets, △ and t to fixpoint.
pub fn c_filter_generated(a: &FiniteAlgebra, seeds: &[u32]) -> AlgSubset {
    let mut m = seeds.iter().fold(a.one(), |m, &x| a.meet(m, x));
    loop {
        let next = a.meet(a.meet(m, a.triangle(m)), a.shift(m));
        if next == m {
            return principal_filter(a, m);
        }
        m = next;
    }
}

/// D(H ∪ {a}), computed by modus-ponens closure and cross-checked against
/// the characterisations through ⋀ tʲ△a and through a⇀x ∈ D(H).
pub fn deductive_generated(a: &FiniteAlgebra, h: &[u32], extra: Option<u32>) -> Result<AlgSubset> {
    if let Some(&bad) = h
        .iter()
        .chain(extra.iter())
        .find(|&&x| x as usize >= a.size())
    {
        return Err(Error::usage(format!(
            "element index {bad} is outside the algebra"
        )));
    }
    let naive = mp_closure(a, h.iter().copied().chain(extra));
    let via_filters = c_filter_generated(a, &h.iter().copied().chain(extra).collect::<Vec<_>>());
    let mut routes = vec![("c-filter generation", via_filters)];
    if let Some(x) = extra {
        let dh = mp_closure(a, h.iter().copied());
        routes.push((
            "x with a ⇀ x in D(H)",
            AlgSubset::from_predicate(a.size(), |y| dh.contains(cyc_imp(a, x, y as u32) as usize)),
        ));
        let bx = cyclic_box(a, x);
        routes.push((
            "x above d ∧ ⋀ tʲ△a",
            AlgSubset::from_predicate(a.size(), |y| {
                dh.iter().any(|d| a.le(a.meet(d as u32, bx), y as u32))
            }),
        ));
        if h.is_empty() {
            routes.push(("[⋀ tʲ△a)", c_filter_generated(a, &[bx])));
            routes.push((
                "a ⇀ x = 1",
                AlgSubset::from_predicate(a.size(), |y| cyc_imp(a, x, y as u32) == a.one()),
            ));
        }
    }
    for (name, set) in routes {
        if set != naive {
            return Err(Error::inconsistency(format!(
                "deductive closure via {name} differs from modus-ponens closure"
            )));
        }
    }
    Ok(naive)
}

/// An equivalence relation on the universe, stored as the least member of
/// each element's class.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    classes: Vec<u32>,
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n as u32).collect())
    }
    fn find(&mut self, x: u32) -> u32 {
        let mut r = x;
        while self.0[r as usize] != r {
            r = self.0[r as usize];
        }
        let mut c = x;
        while self.0[c as usize] != r {
            let next = self.0[c as usize];
            self.0[c as usize] = r;
            c = next;
        }
        r
    }
    /// True if the classes were distinct.
    fn union(&mut self, x: u32, y: u32) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.0[hi as usize] = lo;
        true
    }
    fn into_classes(mut self) -> Vec<u32> {
        (0..self.0.len() as u32).map(|x| self.find(x)).collect()
    }
}

impl Congruence {
    pub fn identity(n: usize) -> Self {
        Congruence {
            classes: (0..n as u32).collect(),
        }
    }

    pub fn total(n: usize) -> Self {
        Congruence {
            classes: vec![0; n],
        }
    }

    /// Builds from arbitrary class labels and checks the substitution property.
    pub fn from_labels(a: &FiniteAlgebra, labels: &[u32]) -> Result<Self> {
        if labels.len() != a.size() {
            return Err(Error::usage("partition does not match the universe"));
        }
        let mut uf = UnionFind::new(labels.len());
        let mut first = std::collections::HashMap::new();
        for (x, &l) in labels.iter().enumerate() {
            let rep = *first.entry(l).or_insert(x as u32);
            uf.union(rep, x as u32);
        }
        let c = Congruence {
            classes: uf.into_classes(),
        };
        if !c.is_compatible(a) {
            return Err(Error::usage("partition is not a congruence"));
        }
        Ok(c)
    }

    fn is_compatible(&self, a: &FiniteAlgebra) -> bool {
        let same = |x: u32, y: u32| self.related(x, y);
        elems(a).all(|x| {
            elems(a).filter(|&y| y > x && same(x, y)).all(|y| {
                same(a.neg(x), a.neg(y))
                    && same(a.pseudo(x), a.pseudo(y))
                    && same(a.shift(x), a.shift(y))
                    && elems(a).all(|z| {
                        same(a.meet(x, z), a.meet(y, z)) && same(a.join(x, z), a.join(y, z))
                    })
            })
        })
    }

    pub fn related(&self, x: u32, y: u32) -> bool {
        self.classes[x as usize] == self.classes[y as usize]
    }

    pub fn class_of(&self, x: u32) -> u32 {
        self.classes[x as usize]
    }

    pub fn labels(&self) -> &[u32] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes
            .iter()
            .enumerate()
            .filter(|(i, &c)| c as usize == *i)
            .count()
    }

    pub fn is_identity(&self) -> bool {
        self.class_count() == self.classes.len()
    }

    pub fn is_total(&self) -> bool {
        self.class_count() == 1
    }

    /// θ ⊆ ψ
    pub fn le(&self, other: &Congruence) -> bool {
        (0..self.classes.len() as u32).all(|x| other.related(x, self.classes[x as usize]))
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        let n = self.classes.len();
        let mut uf = UnionFind::new(n);
        for x in 0..n as u32 {
            for y in 0..x {
                if self.related(x, y) && other.related(x, y) {
                    uf.union(x, y);
                }
            }
        }
        Congruence {
            classes: uf.into_classes(),
        }
    }

    /// Join in the lattice of equivalences, which is again a congruence.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::new(self.classes.len());
        for (x, (&c1, &c2)) in self.classes.iter().zip(&other.classes).enumerate() {
            uf.union(x as u32, c1);
            uf.union(x as u32, c2);
        }
        Congruence {
            classes: uf.into_classes(),
        }
    }

    /// Classes as lists of element labels.
    pub fn blocks(&self, a: &FiniteAlgebra) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = Vec::new();
        let mut index = std::collections::BTreeMap::new();
        for (x, &c) in self.classes.iter().enumerate() {
            let slot = *index.entry(c).or_insert_with(|| {
                out.push(Vec::new());
                out.len() - 1
            });
            out[slot].push(a.format(x as u32));
        }
        out
    }

    /// The 1-class, a c-filter.
    pub fn filter(&self, a: &FiniteAlgebra) -> AlgSubset {
        AlgSubset::from_predicate(a.size(), |x| self.related(x as u32, a.one()))
    }
}

/// Cg(pairs): closes the pairs under the basic translations with union-find.
/// Stops early once 0 ≡ 1 (the relation is then total) when `stop_at_total`.
fn generated_congruence(
    a: &FiniteAlgebra,
    pairs: &[(u32, u32)],
    stop_at_total: bool,
) -> Congruence {
    let n = a.size();
    let mut uf = UnionFind::new(n);
    let mut work: Vec<(u32, u32)> = Vec::new();
    for &(x, y) in pairs {
        if uf.union(x, y) {
            work.push((x, y));
        }
    }
    while let Some((x, y)) = work.pop() {
        if stop_at_total && uf.find(a.zero()) == uf.find(a.one()) {
            return Congruence::total(n);
        }
        let link = |p: u32, q: u32, uf: &mut UnionFind, work: &mut Vec<(u32, u32)>| {
            if uf.union(p, q) {
                work.push((p, q));
            }
        };
        link(a.neg(x), a.neg(y), &mut uf, &mut work);
        link(a.pseudo(x), a.pseudo(y), &mut uf, &mut work);
        link(a.shift(x), a.shift(y), &mut uf, &mut work);
        for z in elems(a) {
            link(a.meet(x, z), a.meet(y, z), &mut uf, &mut work);
            link(a.join(x, z), a.join(y, z), &mut uf, &mut work);
        }
    }
    if stop_at_total && uf.find(a.zero()) == uf.find(a.one()) {
        return Congruence::total(n);
    }
    Congruence {
        classes: uf.into_classes(),
    }
}

pub fn principal_congruence(a: &FiniteAlgebra, x: u32, y: u32) -> Congruence {
    generated_congruence(a, &[(x, y)], false)
}

/// Con(A): principal congruences closed under joins, sorted by class count
/// (finest first).
pub fn congruence_lattice(a: &FiniteAlgebra) -> Result<Vec<Congruence>> {
    if a.size() > DEFAULT_FILTER_SCAN_LIMIT {
        return Err(Error::resource(
            "congruence lattice universe",
            a.size(),
            DEFAULT_FILTER_SCAN_LIMIT,
        ));
    }
    let mut found: BTreeSet<Congruence> = BTreeSet::new();
    found.insert(Congruence::identity(a.size()));
    for x in elems(a) {
        for y in elems(a).filter(|&y| y > x) {
            found.insert(principal_congruence(a, x, y));
        }
    }
    let mut frontier: Vec<Congruence> = found.iter().cloned().collect();
    while !frontier.is_empty() {
        let all: Vec<Congruence> = found.iter().cloned().collect();
        let mut next = Vec::new();
        for c in &frontier {
            for d in &all {
                let j = c.join(d);
                if found.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Congruence> = found.into_iter().collect();
    out.sort_by(|p, q| q.class_count().cmp(&p.class_count()).then_with(|| p.cmp(q)));
    Ok(out)
}

/// R(F) = {(x,y) : x∧f = y∧f for some f ∈ F}, for a c-filter F.
pub fn congruence_from_filter(a: &FiniteAlgebra, f: &AlgSubset) -> Result<Congruence> {
    f.check_universe(a.size())?;
    if !is_c_filter(a, f) {
        return Err(Error::usage("R(F) is only defined for c-filters"));
    }
    let mut uf = UnionFind::new(a.size());
    for x in elems(a) {
        for y in elems(a).filter(|&y| y > x) {
            if f.iter().any(|w| a.meet(x, w as u32) == a.meet(y, w as u32)) {
                uf.union(x, y);
            }
        }
    }
    let c = Congruence {
        classes: uf.into_classes(),
    };
    // transitivity was imposed by union-find; confirm no pair was added by it
    for x in elems(a) {
        for y in elems(a).filter(|&y| y > x && c.related(x, y)) {
            if !f.iter().any(|w| a.meet(x, w as u32) == a.meet(y, w as u32)) {
                return Err(Error::inconsistency("R(F) is not transitive"));
            }
        }
    }
    if !c.is_compatible(a) {
        return Err(Error::inconsistency("R(F) is not a congruence"));
    }
    Ok(c)
}

/// Poset comparison of c-filters and congruences under F ↦ R(F).
#[derive(Debug, Clone, Serialize)]
pub struct CorrespondenceReport {
    pub c_filters: usize,
    pub congruences: usize,
    pub bijective: bool,
    pub order_isomorphism: bool,
    pub inverse_is_one_class: bool,
}

impl CorrespondenceReport {
    pub fn holds(&self) -> bool {
        self.bijective && self.order_isomorphism && self.inverse_is_one_class
    }
}

pub fn filter_congruence_correspondence(a: &FiniteAlgebra) -> Result<CorrespondenceReport> {
    let filters = c_filters(a);
    let cons = congruence_lattice(a)?;
    let images: Vec<Congruence> = filters
        .iter()
        .map(|f| congruence_from_filter(a, f))
        .collect::<Result<_>>()?;
    let image_set: HashSet<&Congruence> = images.iter().collect();
    let con_set: HashSet<&Congruence> = cons.iter().collect();
    let bijective = image_set.len() == images.len() && image_set == con_set;
    let order_isomorphism = filters.iter().zip(&images).all(|(f, rf)| {
        filters
            .iter()
            .zip(&images)
            .all(|(g, rg)| f.is_subset(g) == rf.le(rg))
    });
    let inverse_is_one_class = filters
        .iter()
        .zip(&images)
        .all(|(f, rf)| &rf.filter(a) == f);
    Ok(CorrespondenceReport {
        c_filters: filters.len(),
        congruences: cons.len(),
        bijective,
        order_isomorphism,
        inverse_is_one_class,
    })
}

/// Maximal proper c-filters.
pub fn maximal_c_filters(a: &FiniteAlgebra) -> Vec<AlgSubset> {
    let proper: Vec<AlgSubset> = c_filters(a)
        .into_iter()
        .filter(|f| is_proper(a, f))
        .collect();
    proper
        .iter()
        .filter(|f| !proper.iter().any(|g| g != *f && f.is_subset(g)))
        .cloned()
        .collect()
}

/// ⋂_{i<k} tⁱU ∩ φ(tⁱU)
pub fn recompose(a: &FiniteAlgebra, u: &AlgSubset) -> Result<AlgSubset> {
    let mut acc = AlgSubset::full(a.size());
    for i in 0..a.period() {
        let tu = shift_image(a, u, i);
        acc = acc.intersection(&tu).intersection(&birula_rasiowa(a, &tu)?);
    }
    Ok(acc)
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    pub ultrafilter: AlgSubset,
    /// {tⁱU, φ(tⁱU)}, deduplicated.
    pub orbit: Vec<AlgSubset>,
    /// Every ultrafilter that recomposes to N.
    pub representing: Vec<AlgSubset>,
}

fn orbit_of(a: &FiniteAlgebra, u: &AlgSubset) -> Result<Vec<AlgSubset>> {
    let mut out: Vec<AlgSubset> = Vec::new();
    for i in 0..a.period() {
        let tu = shift_image(a, u, i);
        for s in [birula_rasiowa(a, &tu)?, tu] {
            if !out.contains(&s) {
                out.push(s);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Finds the ultrafilter U with N = ⋂ tⁱU ∩ φ(tⁱU) and checks that every
/// such U lies in one orbit.
pub fn ultrafilter_decomposition(a: &FiniteAlgebra, n: &AlgSubset) -> Result<Decomposition> {
    n.check_universe(a.size())?;
    if !maximal_c_filters(a).contains(n) {
        return Err(Error::usage("decomposition needs a maximal c-filter"));
    }
    let mut representing = Vec::new();
    for u in ultrafilters(a) {
        if &recompose(a, &u)? == n {
            representing.push(u);
        }
    }
    let Some(first) = representing.first().cloned() else {
        return Err(Error::inconsistency(
            "no ultrafilter recomposes the maximal c-filter",
        ));
    };
    let orbit = orbit_of(a, &first)?;
    if representing.iter().any(|u| !orbit.contains(u)) {
        return Err(Error::inconsistency(
            "ultrafilters from different orbits recompose the same maximal c-filter",
        ));
    }
    Ok(Decomposition {
        ultrafilter: first,
        orbit,
        representing,
    })
}

/// Least d ≥ 1 with tᵈN = N.
pub fn filter_period(a: &FiniteAlgebra, n: &AlgSubset) -> Result<usize> {
    n.check_universe(a.size())?;
    let k = a.period();
    for d in 1..=k {
        if &shift_image(a, n, d) == n {
            if !k.is_multiple_of(d) {
                return Err(Error::inconsistency(format!(
                    "filter period {d} does not divide {k}"
                )));
            }
            return Ok(d);
        }
    }
    Err(Error::inconsistency(format!(
        "tᵏ does not fix the filter (k = {k})"
    )))
}

/// K(A) = {x : tx = x = ∇x}
pub fn k_set(a: &FiniteAlgebra) -> AlgSubset {
    AlgSubset::from_predicate(a.size(), |x| {
        let x = x as u32;
        a.shift(x) == x && a.nabla(x) == x
    })
}

/// B(A) = {x : x ∧ ∼x = 0}
pub fn b_set(a: &FiniteAlgebra) -> AlgSubset {
    AlgSubset::from_predicate(a.size(), |x| {
        let x = x as u32;
        a.meet(x, a.neg(x)) == a.zero()
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SimplicityReport {
    pub algebra: String,
    pub simple: bool,
    pub conditions: Vec<ConditionReport>,
}

/// Evaluates the three simplicity criteria independently and insists they agree:
/// (i) Con(A) = {Δ, ∇}; (ii) ⋀_{j=1}^{k} tʲ△a = 0 for a ≠ 1; (iii) K(A) = {0, 1}.
pub fn is_simple(a: &FiniteAlgebra) -> Result<SimplicityReport> {
    let nontrivial = a.size() > 1;
    // (i) every comparable pair u < v generates the total congruence
    let cong = if !nontrivial {
        Some("trivial algebra".to_string())
    } else {
        elems(a)
            .flat_map(|u| elems(a).map(move |v| (u, v)))
            .filter(|&(u, v)| u != v && a.le(u, v))
            .find(|&(u, v)| !generated_congruence(a, &[(u, v)], true).is_total())
            .map(|(u, v)| format!("Cg({}, {}) is proper", a.format(u), a.format(v)))
    };
    let boxes = if !nontrivial {
        Some("trivial algebra".to_string())
    } else {
        elems(a)
            .find(|&x| x != a.one() && cyclic_box(a, x) != a.zero())
            .map(|x| a.format(x))
    };
    let k = k_set(a);
    let kset = if !nontrivial {
        Some("trivial algebra".to_string())
    } else {
        k.iter()
            .map(|x| x as u32)
            .find(|&x| x != a.zero() && x != a.one())
            .map(|x| a.format(x))
    };
    let conditions = vec![
        ConditionReport::new("congruences are only identity and total", cong),
        ConditionReport::new("meet of t^j(tri a) is 0 for every a != 1", boxes),
        ConditionReport::new("K(A) = {0, 1}", kset),
    ];
    let simple = conditions[0].holds;
    if conditions.iter().any(|c| c.holds != simple) {
        return Err(Error::inconsistency(format!(
            "simplicity criteria disagree on {}: {:?}",
            a.name(),
            conditions.iter().map(|c| c.holds).collect::<Vec<_>>()
        )));
    }
    Ok(SimplicityReport {
        algebra: a.name(),
        simple,
        conditions,
    })
}

/// The five equivalent maximality conditions for a cyclic deductive system M.
pub fn maximality_equivalents(a: &FiniteAlgebra, m: &AlgSubset) -> Result<Vec<ConditionReport>> {
    m.check_universe(a.size())?;
    if !is_cyclic_deductive(a, m) {
        return Err(Error::usage("M must be a cyclic deductive system"));
    }
    if m.contains(a.zero() as usize) {
        return Err(Error::usage("M is improper"));
    }
    let inside = |x: u32| m.contains(x as usize);
    let fmt = |x: u32| a.format(x);

    let maximal = {
        let bigger = c_filters(a)
            .into_iter()
            .find(|g| is_proper(a, g) && m.is_subset(g) && g != m);
        bigger.map(|g| {
            let extra = g.iter().find(|&x| !m.contains(x)).unwrap() as u32;
            format!("extends by {}", fmt(extra))
        })
    };
    let c2 = elems(a)
        .filter(|&x| !inside(x))
        .find(|&x| {
            let b = cyclic_box(a, x);
            !m.iter().any(|w| a.meet(b, w as u32) == a.zero())
        })
        .map(fmt);
    let c3 = elems(a)
        .flat_map(|x| elems(a).map(move |y| (x, y)))
        .find(|&(x, y)| inside(a.join(cyclic_box(a, x), y)) && !inside(x) && !inside(y))
        .map(|(x, y)| format!("a={}, b={}", fmt(x), fmt(y)));
    let c4 = elems(a)
        .filter(|&x| !inside(x))
        .find(|&x| {
            let mut meet = a.one();
            for j in 1..=a.period() {
                meet = a.meet(meet, a.shift_pow(x, j));
            }
            !inside(a.neg(a.triangle(meet)))
        })
        .map(fmt);
    let c5 = elems(a)
        .flat_map(|x| elems(a).map(move |y| (x, y)))
        .find(|&(x, y)| {
            !inside(x) && !inside(y) && !(inside(cyc_imp(a, x, y)) && inside(cyc_imp(a, y, x)))
        })
        .map(|(x, y)| format!("a={}, b={}", fmt(x), fmt(y)));

    let reports = vec![
        ConditionReport::new("(1) M is maximal", maximal),
        ConditionReport::new(
            "(2) a not in M gives m in M with meet t^j(tri a) /\\ m = 0",
            c2,
        ),
        ConditionReport::new("(3) meet t^j(tri a) \\/ b in M gives a or b in M", c3),
        ConditionReport::new("(4) a not in M gives ~tri(meet t^j a) in M", c4),
        ConditionReport::new("(5) a, b not in M give a ~> b and b ~> a in M", c5),
    ];
    if reports.iter().any(|r| r.holds != reports[0].holds) {
        return Err(Error::inconsistency(format!(
            "maximality conditions disagree: {:?}",
            reports.iter().map(|r| r.holds).collect::<Vec<_>>()
        )));
    }
    Ok(reports)
}

/// Ω(F): the largest congruence compatible with F, found by filtering Con(A).
pub fn leibniz(a: &FiniteAlgebra, f: &AlgSubset) -> Result<Congruence> {
    f.check_universe(a.size())?;
    if !is_filter(a, f) {
        return Err(Error::usage("the Leibniz congruence is taken of a filter"));
    }
    let compatible: Vec<Congruence> = congruence_lattice(a)?
        .into_iter()
        .filter(|c| {
            elems(a).all(|x| {
                elems(a)
                    .all(|y| !c.related(x, y) || f.contains(x as usize) == f.contains(y as usize))
            })
        })
        .collect();
    compatible
        .iter()
        .find(|c| compatible.iter().all(|d| d.le(c)))
        .cloned()
        .ok_or_else(|| Error::inconsistency("compatible congruences have no largest element"))
}

/// Ω(F) from its definition through unary polynomials:
/// x Ω y iff p(x) ∈ F ⟺ p(y) ∈ F for every unary polynomial p.
pub fn leibniz_by_polynomials(
    a: &FiniteAlgebra,
    f: &AlgSubset,
    max_functions: usize,
) -> Result<Congruence> {
    f.check_universe(a.size())?;
    let n = a.size();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut funcs: Vec<Vec<u32>> = Vec::new();
    let add =
        |p: Vec<u32>, seen: &mut HashSet<Vec<u32>>, funcs: &mut Vec<Vec<u32>>| -> Result<()> {
            if seen.insert(p.clone()) {
                if funcs.len() >= max_functions {
                    return Err(Error::resource(
                        "unary polynomial functions",
                        funcs.len() + 1,
                        max_functions,
                    ));
                }
                funcs.push(p);
            }
            Ok(())
        };
    add(elems(a).collect(), &mut seen, &mut funcs)?;
    for c in elems(a) {
        add(vec![c; n], &mut seen, &mut funcs)?;
    }
    let mut i = 0;
    while i < funcs.len() {
        let p = funcs[i].clone();
        for op in [
            FiniteAlgebra::neg,
            FiniteAlgebra::pseudo,
            FiniteAlgebra::shift,
        ] {
            add(p.iter().map(|&v| op(a, v)).collect(), &mut seen, &mut funcs)?;
        }
        for j in 0..=i {
            let q = funcs[j].clone();
            add(
                p.iter().zip(&q).map(|(&x, &y)| a.meet(x, y)).collect(),
                &mut seen,
                &mut funcs,
            )?;
            add(
                p.iter().zip(&q).map(|(&x, &y)| a.join(x, y)).collect(),
                &mut seen,
                &mut funcs,
            )?;
        }
        i += 1;
    }
    let mut uf = UnionFind::new(n);
    for x in elems(a) {
        for y in elems(a).filter(|&y| y > x) {
            if funcs
                .iter()
                .all(|p| f.contains(p[x as usize] as usize) == f.contains(p[y as usize] as usize))
            {
                uf.union(x, y);
            }
        }
    }
    Ok(Congruence {
        classes: uf.into_classes(),
    })
}

/// Ω̃ over a family of filters: the intersection of their Leibniz congruences.
pub fn tarski(a: &FiniteAlgebra, filters: &[AlgSubset]) -> Result<Congruence> {
    let mut it = filters.iter();
    let first = it
        .next()
        .ok_or_else(|| Error::usage("the Tarski congruence needs at least one filter"))?;
    let mut acc = leibniz(a, first)?;
    for f in it {
        acc = acc.meet(&leibniz(a, f)?);
    }
    Ok(acc)
}

/// Semisimplicity at finite scale: the maximal cyclic deductive systems meet
/// in {1}, and each deductive system is the meet of the maximal ones above it.
pub fn check_semisimplicity(a: &FiniteAlgebra) -> Vec<ConditionReport> {
    let maxes = maximal_c_filters(a);
    let meet_all = maxes
        .iter()
        .fold(AlgSubset::full(a.size()), |acc, m| acc.intersection(m));
    let one_only = AlgSubset::from_indices(a.size(), [a.one() as usize]).unwrap();
    let w1 = (meet_all != one_only).then(|| format!("{:?}", meet_all.members()));
    let w2 = c_filters(a)
        .into_iter()
        .find(|d| {
            let above = maxes
                .iter()
                .filter(|m| d.is_subset(m))
                .fold(AlgSubset::full(a.size()), |acc, m| acc.intersection(m));
            &above != d
        })
        .map(|d| format!("{:?}", d.members()));
    vec![
        ConditionReport::new("maximal deductive systems meet in {1}", w1),
        ConditionReport::new("each deductive system is a meet of maximal ones", w2),
    ]
}

/// Subset given by element labels.
pub fn subset_by_labels(a: &FiniteAlgebra, labels: &[&str]) -> Result<AlgSubset> {
    let mut s = AlgSubset::empty(a.size());
    for l in labels {
        let i = a
            .find(l)
            .ok_or_else(|| Error::usage(format!("`{l}` is not an element of {}", a.name())))?;
        s.insert(i as usize);
    }
    Ok(s)
}

pub fn subset_labels(a: &FiniteAlgebra, s: &AlgSubset) -> Vec<String> {
    s.iter().map(|x| a.format(x as u32)).collect()
}
