//! Cardinalities of finitely generated free 𝒞ₖ-algebras.
//!
//! `formula` evaluates the inclusion–exclusion counting over the divisor
//! lattice of k; `oracle` recomputes the same numbers by brute force, once by
//! closing generators inside a big product and once by counting
//! epimorphisms onto the simple algebras.

mod factored;
mod formula;
mod oracle;

use std::collections::BTreeMap;

pub use factored::FactoredInteger;
pub use formula::{
    alpha, free_cardinality_formula, k1_closed_form, k2_closed_form, prime_closed_form, AlphaEntry,
    FormulaResult,
};
pub use oracle::{
    closure_oracle, closure_oracle_with_budget, epi_oracle, ClosureBudget, ClosureResult, EpiEntry,
    EpiResult, DEFAULT_EPI_BOUND,
};

/// Exact rational arithmetic used for exponents.
pub type ExactRational = num_rational::BigRational;

/// Sorted positive divisors of `k`.
pub fn divisors(k: usize) -> Vec<usize> {
    (1..=k).filter(|d| k.is_multiple_of(*d)).collect()
}

pub fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|p| p * p <= n)
            .all(|p| !n.is_multiple_of(p))
}

/// Div(k) ordered by divisibility, with the maximal proper divisors of each
/// member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorLattice {
    pub k: usize,
    pub divisors: Vec<usize>,
    pub maximal_proper: BTreeMap<usize, Vec<usize>>,
}

impl DivisorLattice {
    pub fn new(k: usize) -> Self {
        let divs = divisors(k);
        let maximal_proper = divs
            .iter()
            .map(|&d| (d, maximal_proper_divisors(d)))
            .collect();
        DivisorLattice {
            k,
            divisors: divs,
            maximal_proper,
        }
    }

    /// M(d); empty for d = 1.
    pub fn m(&self, d: usize) -> &[usize] {
        &self.maximal_proper[&d]
    }
}

/// Maximal elements of the proper divisors of `d`, i.e. d/p for primes p | d.
pub fn maximal_proper_divisors(d: usize) -> Vec<usize> {
    let proper: Vec<usize> = divisors(d).into_iter().filter(|&x| x != d).collect();
    proper
        .iter()
        .copied()
        .filter(|&x| !proper.iter().any(|&y| y != x && y % x == 0))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_lattice() {
        let l = DivisorLattice::new(12);
        assert_eq!(l.divisors, vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(l.m(12), &[4, 6]);
        assert_eq!(l.m(1), &[] as &[usize]);
        assert_eq!(l.m(4), &[2]);
        assert_eq!(maximal_proper_divisors(30), vec![6, 10, 15]);
        assert!(is_prime(5) && !is_prime(1) && !is_prime(9));
    }
}
