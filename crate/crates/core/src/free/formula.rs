use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use serde::Serialize;

use super::{is_prime, DivisorLattice, FactoredInteger};
use crate::error::{Error, Result};

/// Subset sums over M(d)×M(d) enumerate 2^|M|² subsets; refuse beyond this.
const MAX_PAIR_SUBSET_BITS: usize = 20;

fn big_pow(base: u64, exp: u64) -> BigInt {
    Pow::pow(BigInt::from(base), exp as u32)
}

fn gcd_all(items: impl IntoIterator<Item = usize>) -> usize {
    items.into_iter().fold(0, |g, x| g.gcd(&x))
}

/// Σ_{∅≠W⊆M} (−1)^{|W|−1} (base^{gcd W})^n
fn subset_sum(m: &[usize], base: u64, n: u64) -> BigInt {
    let mut total = BigInt::zero();
    for mask in 1u64..(1 << m.len()) {
        let members = m.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0);
        let g = gcd_all(members.map(|(_, &x)| x));
        let term = big_pow(base, g as u64 * n);
        if mask.count_ones() % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// Σ_{∅≠H⊆M×M} (−1)^{|H|−1} (2^{gcd(H₁∪H₂)})^n, enumerated literally.
fn pair_subset_sum(m: &[usize], n: u64) -> Result<BigInt> {
    let pairs: Vec<(usize, usize)> = m
        .iter()
        .flat_map(|&x| m.iter().map(move |&y| (x, y)))
        .collect();
    if pairs.len() > MAX_PAIR_SUBSET_BITS {
        return Err(Error::resource(
            "subsets of M(d)×M(d)",
            format!("2^{}", pairs.len()),
            format!("2^{MAX_PAIR_SUBSET_BITS}"),
        ));
    }
    let mut total = BigInt::zero();
    for mask in 1u64..(1 << pairs.len()) {
        let chosen = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .flat_map(|(_, &(x, y))| [x, y]);
        let term = big_pow(2, gcd_all(chosen) as u64 * n);
        if mask.count_ones() % 2 == 1 {
            total += term;
        } else {
            total -= term;
        }
    }
    Ok(total)
}

/// α_{i,d} for the free algebra on `n` generators in 𝒞ₖ, exactly as displayed
/// in the counting theorem. May be non-integral.
pub fn alpha(i: u32, d: usize, n: u64, k: usize) -> Result<BigRational> {
    if k == 0 || d == 0 || !k.is_multiple_of(d) {
        return Err(Error::usage(format!("{d} does not divide {k}")));
    }
    let lattice = DivisorLattice::new(d);
    let m = lattice.m(d);
    let dd = d as u64;
    let numer = match i {
        2 => big_pow(2, dd * n) - subset_sum(m, 2, n),
        3 => big_pow(3, dd * n) - big_pow(2, dd * n) - subset_sum(m, 3, n) + pair_subset_sum(m, n)?,
        4 => big_pow(4, dd * n) - subset_sum(m, 4, n) - big_pow(2, dd * n) + pair_subset_sum(m, n)?,
        _ => return Err(Error::usage(format!("no generator T{i}"))),
    };
    let denom = if i == 4 { 2 * d } else { d };
    Ok(BigRational::new(numer, BigInt::from(denom)))
}

#[derive(Debug, Clone, Serialize)]
pub struct AlphaEntry {
    pub i: u32,
    pub d: usize,
    /// Exact value as "p" or "p/q".
    pub value: String,
    pub integral: bool,
    #[serde(skip)]
    pub exact: BigRational,
}

#[derive(Debug, Clone, Serialize)]
pub struct FormulaResult {
    pub k: usize,
    pub n: u64,
    pub factored: FactoredInteger,
    pub alphas: Vec<AlphaEntry>,
    pub warnings: Vec<String>,
}

fn rational_text(q: &BigRational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// |F(n)| = ∏_{d|k} ∏_{i} (i^d)^{α_{i,d}}, with exact rational exponents.
pub fn free_cardinality_formula(k: usize, n: u64) -> Result<FormulaResult> {
    if k == 0 {
        return Err(Error::usage("k must be at least 1"));
    }
    let lattice = DivisorLattice::new(k);
    let mut factored = FactoredInteger::one();
    let mut alphas = Vec::new();
    let mut warnings = Vec::new();
    for &d in &lattice.divisors {
        for i in [2u32, 3, 4] {
            let a = alpha(i, d, n, k)?;
            let base = (i as u64)
                .checked_pow(d as u32)
                .ok_or_else(|| Error::resource("base i^d", format!("{i}^{d}"), u64::MAX))?;
            factored.mul_pow(base, &a);
            if !a.is_integer() {
                warnings.push(format!(
                    "alpha({i},{d}) = {} is not an integer (k={k}, n={n})",
                    rational_text(&a)
                ));
            }
            alphas.push(AlphaEntry {
                i,
                d,
                value: rational_text(&a),
                integral: a.is_integer(),
                exact: a,
            });
        }
    }
    if !factored.is_integral() {
        return Err(Error::inconsistency(format!(
            "free cardinality for k={k}, n={n} has a non-integral exponent: {factored}"
        )));
    }
    Ok(FormulaResult {
        k,
        n,
        factored,
        alphas,
        warnings,
    })
}

fn q(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// 2^{2^r} · 3^{3^r−2^r} · 4^{2^{r−1}(2^r−1)}
pub fn k1_closed_form(r: u64) -> FactoredInteger {
    let mut f = FactoredInteger::one();
    f.mul_pow(2, &q(big_pow(2, r)));
    f.mul_pow(3, &q(big_pow(3, r) - big_pow(2, r)));
    // 2^{r−1}(2^r − 1) written without a negative power at r = 0
    let e4 = BigRational::new(big_pow(2, r) * (big_pow(2, r) - 1), BigInt::from(2));
    f.mul_pow(4, &e4);
    f
}

/// The final k = 2 display:
/// 2^{2^r} · 4^{3(4^r−2^r)/2} · 3^{3^r−2^r} · 9^{(9^r−3^r−4^r+2^r)/2} · 16^{(16^r−3·4^r+2·2^r)/4}
pub fn k2_closed_form(r: u64) -> FactoredInteger {
    let p = |b: u64| big_pow(b, r);
    let mut f = FactoredInteger::one();
    f.mul_pow(2, &q(p(2)));
    f.mul_pow(
        4,
        &BigRational::new(BigInt::from(3) * (p(4) - p(2)), BigInt::from(2)),
    );
    f.mul_pow(3, &q(p(3) - p(2)));
    f.mul_pow(
        9,
        &BigRational::new(p(9) - p(3) - p(4) + p(2), BigInt::from(2)),
    );
    f.mul_pow(
        16,
        &BigRational::new(
            p(16) - BigInt::from(3) * p(4) + BigInt::from(2) * p(2),
            BigInt::from(4),
        ),
    );
    f
}

/// The closed form for prime k:
/// 2^{2^r} (2^k)^{(2^{kr}−2^r)/k} 3^{3^r−2^r} (3^k)^{(3^{kr}−3^r−2^{kr}+2^r)/k}
///   4^{(4^r−2^r)/2} (4^k)^{(4^{kr}−4^r−2^{kr}+2^r)/(2k)}
pub fn prime_closed_form(k: usize, r: u64) -> Result<FactoredInteger> {
    if !is_prime(k) {
        return Err(Error::usage(format!("{k} is not prime")));
    }
    let kk = k as u64;
    let p = |b: u64| big_pow(b, r);
    let pk = |b: u64| big_pow(b, kk * r);
    let kq = BigInt::from(k);
    let mut f = FactoredInteger::one();
    f.mul_pow(2, &q(p(2)));
    f.mul_pow(
        2u64.pow(k as u32),
        &BigRational::new(pk(2) - p(2), kq.clone()),
    );
    f.mul_pow(3, &q(p(3) - p(2)));
    f.mul_pow(
        3u64.pow(k as u32),
        &BigRational::new(pk(3) - p(3) - pk(2) + p(2), kq.clone()),
    );
    f.mul_pow(4, &BigRational::new(p(4) - p(2), BigInt::from(2)));
    f.mul_pow(
        4u64.pow(k as u32),
        &BigRational::new(pk(4) - p(4) - pk(2) + p(2), BigInt::from(2) * kq),
    );
    Ok(f)
}

impl FormulaResult {
    pub fn alpha_of(&self, i: u32, d: usize) -> Option<&BigRational> {
        self.alphas
            .iter()
            .find(|a| a.i == i && a.d == d)
            .map(|a| &a.exact)
    }

    pub fn is_one(&self) -> bool {
        self.factored.exponents().is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn alpha_examples() {
        for n in 0..4u64 {
            assert_eq!(alpha(2, 1, n, 6).unwrap(), rat(2i64.pow(n as u32), 1));
            assert_eq!(
                alpha(3, 1, n, 6).unwrap(),
                rat(3i64.pow(n as u32) - 2i64.pow(n as u32), 1)
            );
        }
        assert_eq!(alpha(4, 2, 1, 2).unwrap(), rat(5, 2));
        assert!(matches!(alpha(2, 3, 1, 4), Err(Error::Usage(_))));
    }

    #[test]
    fn small_cardinalities() {
        let r = free_cardinality_formula(1, 1).unwrap();
        assert_eq!(r.factored.to_biguint(64).unwrap(), BigUint::from(48u32));
        assert!(r.warnings.is_empty());
        let r = free_cardinality_formula(1, 2).unwrap();
        assert_eq!(
            r.factored.to_biguint(64).unwrap(),
            BigUint::from(15_925_248u32)
        );
        let r = free_cardinality_formula(2, 1).unwrap();
        assert_eq!(
            r.factored.to_biguint(64).unwrap(),
            BigUint::from(15_925_248u32)
        );
        assert_eq!(r.warnings.len(), 1);
        assert!(r.warnings[0].contains("alpha(4,2) = 5/2"));
    }

    #[test]
    fn special_displays_agree() {
        for r in 0..=3 {
            assert_eq!(
                free_cardinality_formula(1, r).unwrap().factored,
                k1_closed_form(r)
            );
            assert_eq!(
                free_cardinality_formula(2, r).unwrap().factored,
                k2_closed_form(r)
            );
        }
        for k in [2, 3, 5] {
            for r in 0..=3 {
                assert_eq!(
                    free_cardinality_formula(k, r).unwrap().factored,
                    prime_closed_form(k, r).unwrap()
                );
            }
        }
        assert!(prime_closed_form(4, 1).is_err());
    }
}
