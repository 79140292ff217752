//! Table-driven finite algebras: products, subalgebras and quotients of the
//! packed algebras, on which the filter and congruence machinery runs.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::subset::AlgSubset;

/// Largest table algebra we are willing to build (n² entries per table).
pub const MAX_TABLE_SIZE: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    k: usize,
    name: String,
    labels: Vec<String>,
    meet: Vec<u32>,
    join: Vec<u32>,
    neg: Vec<u32>,
    pseudo: Vec<u32>,
    shift: Vec<u32>,
    zero: u32,
    one: u32,
}

impl FiniteAlgebra {
    /// Tabulates any algebra, keeping its element order.
    pub fn from_algebra<A: Algebra>(alg: &A) -> Self {
        let n = alg.size();
        assert!(n <= MAX_TABLE_SIZE, "algebra too large to tabulate");
        let idx = |x| alg.index_of(x).expect("operation left the universe") as u32;
        let elems = alg.elements();
        let mut meet = Vec::with_capacity(n * n);
        let mut join = Vec::with_capacity(n * n);
        for &x in &elems {
            for &y in &elems {
                meet.push(idx(alg.meet(x, y)));
                join.push(idx(alg.join(x, y)));
            }
        }
        FiniteAlgebra {
            k: alg.period(),
            name: alg.name(),
            labels: elems.iter().map(|&x| alg.format(x)).collect(),
            meet,
            join,
            neg: elems.iter().map(|&x| idx(alg.neg(x))).collect(),
            pseudo: elems.iter().map(|&x| idx(alg.pseudo(x))).collect(),
            shift: elems.iter().map(|&x| idx(alg.shift(x))).collect(),
            zero: idx(alg.zero()),
            one: idx(alg.one()),
        }
    }

    /// Direct product A × B of two algebras with the same period; pairs in
    /// lexicographic order.
    pub fn product(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<Self> {
        if a.k != b.k {
            return Err(Error::usage(format!(
                "cannot multiply algebras of periods {} and {}",
                a.k, b.k
            )));
        }
        let (na, nb) = (a.size(), b.size());
        let n = na * nb;
        if n > MAX_TABLE_SIZE {
            return Err(Error::resource("product table size", n, MAX_TABLE_SIZE));
        }
        let pair = |i: u32, j: u32| i * nb as u32 + j;
        let split = |x: usize| ((x / nb) as u32, (x % nb) as u32);
        let mut meet = Vec::with_capacity(n * n);
        let mut join = Vec::with_capacity(n * n);
        for x in 0..n {
            let (xa, xb) = split(x);
            for y in 0..n {
                let (ya, yb) = split(y);
                meet.push(pair(a.meet(xa, ya), b.meet(xb, yb)));
                join.push(pair(a.join(xa, ya), b.join(xb, yb)));
            }
        }
        let unary = |fa: &dyn Fn(u32) -> u32, fb: &dyn Fn(u32) -> u32| -> Vec<u32> {
            (0..n)
                .map(|x| {
                    let (xa, xb) = split(x);
                    pair(fa(xa), fb(xb))
                })
                .collect()
        };
        Ok(FiniteAlgebra {
            k: a.k,
            name: format!("{} × {}", a.name, b.name),
            labels: (0..n)
                .map(|x| {
                    let (xa, xb) = split(x);
                    format!("<{},{}>", a.labels[xa as usize], b.labels[xb as usize])
                })
                .collect(),
            meet,
            join,
            neg: unary(&|x| a.neg(x), &|x| b.neg(x)),
            pseudo: unary(&|x| a.pseudo(x), &|x| b.pseudo(x)),
            shift: unary(&|x| a.shift(x), &|x| b.shift(x)),
            zero: pair(a.zero, b.zero),
            one: pair(a.one, b.one),
        })
    }

    /// Restriction to a subuniverse; errors if `s` is not closed.
    pub fn subalgebra(&self, s: &AlgSubset, name: impl Into<String>) -> Result<Self> {
        s.check_universe(self.size())?;
        if !self.is_subuniverse(s) {
            return Err(Error::usage("subset is not closed under the operations"));
        }
        let members = s.members();
        let mut pos = vec![u32::MAX; self.size()];
        for (i, &m) in members.iter().enumerate() {
            pos[m] = i as u32;
        }
        let n = members.len();
        let mut meet = Vec::with_capacity(n * n);
        let mut join = Vec::with_capacity(n * n);
        for &x in &members {
            for &y in &members {
                meet.push(pos[self.meet(x as u32, y as u32) as usize]);
                join.push(pos[self.join(x as u32, y as u32) as usize]);
            }
        }
        let unary = |t: &[u32]| members.iter().map(|&x| pos[t[x] as usize]).collect();
        Ok(FiniteAlgebra {
            k: self.k,
            name: name.into(),
            labels: members.iter().map(|&x| self.labels[x].clone()).collect(),
            meet,
            join,
            neg: unary(&self.neg),
            pseudo: unary(&self.pseudo),
            shift: unary(&self.shift),
            zero: pos[self.zero as usize],
            one: pos[self.one as usize],
        })
    }

    /// Quotient by a partition given as class labels (assumed a congruence);
    /// each class is represented by its least member.
    pub fn quotient(&self, classes: &[u32], name: impl Into<String>) -> Result<Self> {
        if classes.len() != self.size() {
            return Err(Error::usage("partition does not match the universe"));
        }
        let mut reps: Vec<usize> = Vec::new();
        let mut class_pos = std::collections::HashMap::new();
        for (x, &c) in classes.iter().enumerate() {
            class_pos.entry(c).or_insert_with(|| {
                reps.push(x);
                reps.len() as u32 - 1
            });
        }
        let q = |x: u32| class_pos[&classes[x as usize]];
        let n = reps.len();
        let mut meet = Vec::with_capacity(n * n);
        let mut join = Vec::with_capacity(n * n);
        for &x in &reps {
            for &y in &reps {
                meet.push(q(self.meet(x as u32, y as u32)));
                join.push(q(self.join(x as u32, y as u32)));
            }
        }
        let unary = |t: &[u32]| reps.iter().map(|&x| q(t[x])).collect();
        Ok(FiniteAlgebra {
            k: self.k,
            name: name.into(),
            labels: reps
                .iter()
                .map(|&x| format!("[{}]", self.labels[x]))
                .collect(),
            meet,
            join,
            neg: unary(&self.neg),
            pseudo: unary(&self.pseudo),
            shift: unary(&self.shift),
            zero: q(self.zero),
            one: q(self.one),
        })
    }

    pub fn is_subuniverse(&self, s: &AlgSubset) -> bool {
        let has = |x: u32| s.contains(x as usize);
        has(self.zero)
            && has(self.one)
            && s.iter().all(|x| {
                let x = x as u32;
                has(self.neg(x))
                    && has(self.pseudo(x))
                    && has(self.shift(x))
                    && s.iter()
                        .all(|y| has(self.meet(x, y as u32)) && has(self.join(x, y as u32)))
            })
    }

    /// Least subuniverse containing `seeds`.
    pub fn generate(&self, seeds: &[u32]) -> AlgSubset {
        let mut set = AlgSubset::empty(self.size());
        let mut order: Vec<u32> = Vec::new();
        let push = |x: u32, set: &mut AlgSubset, order: &mut Vec<u32>| {
            if set.insert(x as usize) {
                order.push(x);
            }
        };
        push(self.zero, &mut set, &mut order);
        push(self.one, &mut set, &mut order);
        for &s in seeds {
            push(s, &mut set, &mut order);
        }
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            for y in [self.neg(x), self.pseudo(x), self.shift(x)] {
                push(y, &mut set, &mut order);
            }
            for j in 0..=i {
                let z = order[j];
                push(self.meet(x, z), &mut set, &mut order);
                push(self.join(x, z), &mut set, &mut order);
            }
            i += 1;
        }
        set
    }

    pub fn label(&self, x: u32) -> &str {
        &self.labels[x as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn find(&self, label: &str) -> Option<u32> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| i as u32)
    }
}

impl Algebra for FiniteAlgebra {
    type Elem = u32;

    fn period(&self) -> usize {
        self.k
    }
    fn size(&self) -> usize {
        self.labels.len()
    }
    fn element(&self, index: usize) -> u32 {
        index as u32
    }
    fn index_of(&self, x: u32) -> Option<usize> {
        ((x as usize) < self.size()).then_some(x as usize)
    }
    fn zero(&self) -> u32 {
        self.zero
    }
    fn one(&self) -> u32 {
        self.one
    }
    #[inline]
    fn meet(&self, x: u32, y: u32) -> u32 {
        self.meet[x as usize * self.labels.len() + y as usize]
    }
    #[inline]
    fn join(&self, x: u32, y: u32) -> u32 {
        self.join[x as usize * self.labels.len() + y as usize]
    }
    #[inline]
    fn neg(&self, x: u32) -> u32 {
        self.neg[x as usize]
    }
    #[inline]
    fn pseudo(&self, x: u32) -> u32 {
        self.pseudo[x as usize]
    }
    #[inline]
    fn shift(&self, x: u32) -> u32 {
        self.shift[x as usize]
    }
    fn format(&self, x: u32) -> String {
        self.labels[x as usize].clone()
    }
    fn name(&self) -> String {
        self.name.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::BaseFamily;
    use crate::product::CyclicAlgebra;

    #[test]
    fn tabulation_matches_packed_ops() {
        let t = CyclicAlgebra::full(BaseFamily::Four, 2).unwrap();
        let f = t.to_finite();
        for i in 0..t.size() {
            let x = t.element(i);
            assert_eq!(f.format(i as u32), t.format(x));
            assert_eq!(f.neg(i as u32) as usize, t.index_of(t.neg(x)).unwrap());
            assert_eq!(f.shift(i as u32) as usize, t.index_of(t.shift(x)).unwrap());
        }
    }

    #[test]
    fn product_and_subalgebra() {
        let t4 = CyclicAlgebra::full(BaseFamily::Four, 1)
            .unwrap()
            .to_finite();
        let t3 = CyclicAlgebra::full(BaseFamily::Three, 1)
            .unwrap()
            .to_finite();
        let p = FiniteAlgebra::product(&t4, &t3).unwrap();
        assert_eq!(p.size(), 12);
        assert_eq!(p.format(p.one()), "<1,1>");
        let diag = p.generate(&[]);
        assert_eq!(diag.count(), 2);
        let sub = p.subalgebra(&diag, "2").unwrap();
        assert_eq!(sub.size(), 2);
        let t22 = CyclicAlgebra::full(BaseFamily::Two, 2).unwrap().to_finite();
        assert!(FiniteAlgebra::product(&t4, &t22).is_err());
    }
}
