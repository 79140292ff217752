//! The signature shared by every finite 𝒞ₖ-algebra in the crate, plus the
//! derived operations that are defined as terms over it.

use std::fmt::Debug;
use std::hash::Hash;

/// A finite algebra of type (∧, ∨, ∼, *, t, 0, 1) whose automorphism `t`
/// satisfies tᵏ = id for the algebra's period `k`.
pub trait Algebra: Sync {
    type Elem: Copy + Eq + Hash + Debug + Send + Sync;

    /// The `k` of the ambient variety 𝒞ₖ.
    fn period(&self) -> usize;
    fn size(&self) -> usize;
    /// Universe in its canonical order.
    fn element(&self, index: usize) -> Self::Elem;
    fn index_of(&self, x: Self::Elem) -> Option<usize>;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn meet(&self, x: Self::Elem, y: Self::Elem) -> Self::Elem;
    fn join(&self, x: Self::Elem, y: Self::Elem) -> Self::Elem;
    fn neg(&self, x: Self::Elem) -> Self::Elem;
    fn pseudo(&self, x: Self::Elem) -> Self::Elem;
    fn shift(&self, x: Self::Elem) -> Self::Elem;

    fn format(&self, x: Self::Elem) -> String;
    fn name(&self) -> String;

    fn nabla(&self, x: Self::Elem) -> Self::Elem {
        self.neg(self.meet(self.neg(x), self.pseudo(x)))
    }

    fn triangle(&self, x: Self::Elem) -> Self::Elem {
        self.neg(self.nabla(self.neg(x)))
    }

    fn le(&self, x: Self::Elem, y: Self::Elem) -> bool {
        self.meet(x, y) == x
    }

    /// tⁱ(x), with i reduced modulo the period.
    fn shift_pow(&self, mut x: Self::Elem, i: usize) -> Self::Elem {
        for _ in 0..i % self.period() {
            x = self.shift(x);
        }
        x
    }

    fn elements(&self) -> Vec<Self::Elem> {
        (0..self.size()).map(|i| self.element(i)).collect()
    }
}

/// a ⇀ b = ⋁_{i=1}^{k} ∇(∼tⁱa) ∨ b
pub fn cyclic_implication<A: Algebra + ?Sized>(alg: &A, a: A::Elem, b: A::Elem) -> A::Elem {
    let mut acc = b;
    let mut ta = a;
    for _ in 0..alg.period() {
        ta = alg.shift(ta);
        acc = alg.join(acc, alg.nabla(alg.neg(ta)));
    }
    acc
}

/// ⋀_{j=1}^{k} tʲ(△a), the generator of the deductive system D(a).
pub fn cyclic_box<A: Algebra + ?Sized>(alg: &A, a: A::Elem) -> A::Elem {
    let tri = alg.triangle(a);
    let mut acc = alg.one();
    let mut cur = tri;
    for _ in 0..alg.period() {
        cur = alg.shift(cur);
        acc = alg.meet(acc, cur);
    }
    acc
}

/// x → y = ∼((∼(x∨y))* ∧ (x∨y)) ∨ ((∼(x∧y))* ∧ (x∧y))
pub fn arrow<A: Algebra + ?Sized>(alg: &A, x: A::Elem, y: A::Elem) -> A::Elem {
    let j = alg.join(x, y);
    let m = alg.meet(x, y);
    let left = alg.neg(alg.meet(alg.pseudo(alg.neg(j)), j));
    let right = alg.meet(alg.pseudo(alg.neg(m)), m);
    alg.join(left, right)
}

/// x ⇒ y = (x → y) ∧ (∼y → ∼x); the same term serves as x ↔ y.
pub fn biconditional<A: Algebra + ?Sized>(alg: &A, x: A::Elem, y: A::Elem) -> A::Elem {
    alg.meet(arrow(alg, x, y), arrow(alg, alg.neg(y), alg.neg(x)))
}

/// δ(p,q) = ⋀_{i=0}^{k-1} (tⁱp ⇒ tⁱq)
pub fn delta<A: Algebra + ?Sized>(alg: &A, p: A::Elem, q: A::Elem) -> A::Elem {
    let mut acc = alg.one();
    let (mut tp, mut tq) = (p, q);
    for i in 0..alg.period() {
        if i > 0 {
            tp = alg.shift(tp);
            tq = alg.shift(tq);
        }
        acc = alg.meet(acc, biconditional(alg, tp, tq));
    }
    acc
}

/// ∘x = ⋀_{i=0}^{k} tⁱ((∼x ∨ x) ∧ (x ∧ ∼x)*). The i = k conjunct repeats i = 0.
pub fn circ<A: Algebra + ?Sized>(alg: &A, x: A::Elem) -> A::Elem {
    let nx = alg.neg(x);
    let base = alg.meet(alg.join(nx, x), alg.pseudo(alg.meet(x, nx)));
    let mut acc = alg.one();
    let mut cur = base;
    for i in 0..=alg.period() {
        if i > 0 {
            cur = alg.shift(cur);
        }
        acc = alg.meet(acc, cur);
    }
    acc
}

/// Least d ≥ 1 with tᵈx = x.
pub fn orbit_length<A: Algebra + ?Sized>(alg: &A, x: A::Elem) -> usize {
    let mut cur = alg.shift(x);
    let mut d = 1;
    while cur != x {
        cur = alg.shift(cur);
        d += 1;
    }
    d
}

/// Whether x has a lattice complement.
pub fn is_complemented<A: Algebra + ?Sized>(alg: &A, x: A::Elem) -> bool {
    (0..alg.size()).any(|i| {
        let y = alg.element(i);
        alg.meet(x, y) == alg.zero() && alg.join(x, y) == alg.one()
    })
}
