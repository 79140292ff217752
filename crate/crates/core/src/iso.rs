//! Isomorphism search between finite 𝒞ₖ-algebras.
//!
//! A small generating set of the source is chosen greedily; candidate images
//! of each generator are filtered by an invariant vector, and every partial
//! assignment is immediately propagated through the closure so that
//! conflicts prune the search early.

use crate::algebra::{orbit_length, Algebra};
use crate::finite::FiniteAlgebra;
use crate::subset::AlgSubset;

/// Per-element data preserved by any isomorphism.
fn invariants(a: &FiniteAlgebra) -> Vec<(usize, bool, bool, usize, usize)> {
    let n = a.size() as u32;
    let below = |x: u32| (0..n).filter(|&y| a.le(y, x)).count();
    (0..n)
        .map(|x| {
            (
                orbit_length(a, x),
                a.neg(x) == x,
                a.pseudo(x) == a.zero(),
                below(x),
                below(a.triangle(x)),
            )
        })
        .collect()
}

/// Greedy generating set: repeatedly add the least element outside the
/// current closure.
fn generators(a: &FiniteAlgebra) -> Vec<u32> {
    let mut gens = Vec::new();
    let mut closed = a.generate(&gens);
    while !closed.is_full() {
        let next = (0..a.size()).find(|&i| !closed.contains(i)).unwrap() as u32;
        gens.push(next);
        closed = a.generate(&gens);
    }
    gens
}

/// Extends a partial map along the operations; false on a conflict or a
/// non-injective assignment.
fn propagate(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    map: &mut [u32],
    used: &mut AlgSubset,
    order: &mut Vec<u32>,
    start: usize,
) -> bool {
    let assign = |x: u32, y: u32, map: &mut [u32], used: &mut AlgSubset, order: &mut Vec<u32>| {
        let cur = map[x as usize];
        if cur == u32::MAX {
            if used.contains(y as usize) {
                return false;
            }
            map[x as usize] = y;
            used.insert(y as usize);
            order.push(x);
            true
        } else {
            cur == y
        }
    };
    let mut i = start;
    while i < order.len() {
        let x = order[i];
        let fx = map[x as usize];
        if !assign(a.neg(x), b.neg(fx), map, used, order)
            || !assign(a.pseudo(x), b.pseudo(fx), map, used, order)
            || !assign(a.shift(x), b.shift(fx), map, used, order)
        {
            return false;
        }
        for j in 0..=i {
            let z = order[j];
            let fz = map[z as usize];
            if !assign(a.meet(x, z), b.meet(fx, fz), map, used, order)
                || !assign(a.join(x, z), b.join(fx, fz), map, used, order)
            {
                return false;
            }
        }
        i += 1;
    }
    true
}

struct Search<'a> {
    a: &'a FiniteAlgebra,
    b: &'a FiniteAlgebra,
    gens: Vec<u32>,
    candidates: Vec<Vec<u32>>,
}

impl Search<'_> {
    fn new<'a>(a: &'a FiniteAlgebra, b: &'a FiniteAlgebra) -> Option<Search<'a>> {
        if a.size() != b.size() {
            return None;
        }
        let (ia, ib) = (invariants(a), invariants(b));
        let mut sa = ia.clone();
        let mut sb = ib.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return None;
        }
        let gens = generators(a);
        let candidates = gens
            .iter()
            .map(|&g| {
                (0..b.size() as u32)
                    .filter(|&y| ib[y as usize] == ia[g as usize])
                    .collect()
            })
            .collect();
        Some(Search {
            a,
            b,
            gens,
            candidates,
        })
    }

    /// Depth-first over generator images; `emit` returns false to stop.
    fn run(&self, emit: &mut dyn FnMut(&[u32]) -> bool) {
        let n = self.a.size();
        let mut map = vec![u32::MAX; n];
        let mut used = AlgSubset::empty(n);
        let mut order = Vec::new();
        let ok = {
            let mut seed = |x: u32, y: u32| {
                if map[x as usize] == u32::MAX {
                    if used.contains(y as usize) {
                        return false;
                    }
                    map[x as usize] = y;
                    used.insert(y as usize);
                    order.push(x);
                    true
                } else {
                    map[x as usize] == y
                }
            };
            seed(self.a.zero(), self.b.zero()) && seed(self.a.one(), self.b.one())
        };
        if !ok || !propagate(self.a, self.b, &mut map, &mut used, &mut order, 0) {
            return;
        }
        self.step(0, map, used, order, emit);
    }

    fn step(
        &self,
        depth: usize,
        map: Vec<u32>,
        used: AlgSubset,
        order: Vec<u32>,
        emit: &mut dyn FnMut(&[u32]) -> bool,
    ) -> bool {
        if depth == self.gens.len() {
            return if order.len() == self.a.size() {
                emit(&map)
            } else {
                true
            };
        }
        let g = self.gens[depth];
        if map[g as usize] != u32::MAX {
            return self.step(depth + 1, map, used, order, emit);
        }
        for &y in &self.candidates[depth] {
            if used.contains(y as usize) {
                continue;
            }
            let mut m = map.clone();
            let mut u = used.clone();
            let mut o = order.clone();
            m[g as usize] = y;
            u.insert(y as usize);
            o.push(g);
            // entries before the new generator are already closed
            let start = o.len() - 1;
            if propagate(self.a, self.b, &mut m, &mut u, &mut o, start)
                && !self.step(depth + 1, m, u, o, emit)
            {
                return false;
            }
        }
        true
    }
}

/// An isomorphism `a → b` as an index map, if one exists.
pub fn is_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Option<Vec<u32>> {
    let search = Search::new(a, b)?;
    let mut found = None;
    search.run(&mut |m| {
        found = Some(m.to_vec());
        false
    });
    found
}

/// All automorphisms, in search order.
pub fn automorphisms(a: &FiniteAlgebra) -> Vec<Vec<u32>> {
    let Some(search) = Search::new(a, a) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    search.run(&mut |m| {
        out.push(m.to_vec());
        true
    });
    out
}

pub fn aut_count(a: &FiniteAlgebra) -> usize {
    automorphisms(a).len()
}

/// Checks that `map` is a bijective homomorphism; used to audit search results.
pub fn is_isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra, map: &[u32]) -> bool {
    let n = a.size();
    if map.len() != n || b.size() != n {
        return false;
    }
    let mut seen = AlgSubset::empty(n);
    for &y in map {
        if (y as usize) >= n || !seen.insert(y as usize) {
            return false;
        }
    }
    let f = |x: u32| map[x as usize];
    f(a.zero()) == b.zero()
        && f(a.one()) == b.one()
        && (0..n as u32).all(|x| {
            f(a.neg(x)) == b.neg(f(x))
                && f(a.pseudo(x)) == b.pseudo(f(x))
                && f(a.shift(x)) == b.shift(f(x))
                && (0..n as u32).all(|y| {
                    f(a.meet(x, y)) == b.meet(f(x), f(y)) && f(a.join(x, y)) == b.join(f(x), f(y))
                })
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::BaseFamily::*;
    use crate::product::CyclicAlgebra;

    fn fin(f: crate::base::BaseFamily, k: usize) -> FiniteAlgebra {
        CyclicAlgebra::full(f, k).unwrap().to_finite()
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(aut_count(&fin(Two, 3)), 3);
        assert_eq!(aut_count(&fin(Four, 2)), 4);
        assert_eq!(aut_count(&fin(Four, 1)), 2);
        assert_eq!(aut_count(&fin(Three, 2)), 2);
        for m in automorphisms(&fin(Four, 2)) {
            assert!(is_isomorphism(&fin(Four, 2), &fin(Four, 2), &m));
        }
    }

    #[test]
    fn isomorphism_examples() {
        let diag = CyclicAlgebra::diagonal(Two, 2, 1).unwrap().to_finite();
        let m = is_isomorphic(&fin(Two, 1), &diag).unwrap();
        assert!(is_isomorphism(&fin(Two, 1), &diag, &m));
        let tw = CyclicAlgebra::twisted(2, 1).unwrap().to_finite();
        let t4_diag = CyclicAlgebra::diagonal(Four, 2, 1).unwrap().to_finite();
        assert!(is_isomorphic(&tw, &t4_diag).is_none());
        assert!(is_isomorphic(&fin(Three, 1), &fin(Two, 1)).is_none());
    }

    #[test]
    fn twisted_has_two_automorphisms() {
        let tw = CyclicAlgebra::twisted(2, 1).unwrap().to_finite();
        assert_eq!(aut_count(&tw), 2);
    }
}
