use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

/// A positive number as ∏ pᵉ with exact rational exponents. Intermediate
/// products may carry fractional exponents; only integral ones convert back
/// to an integer.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FactoredInteger {
    exponents: BTreeMap<u64, BigRational>,
}

fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl FactoredInteger {
    pub fn one() -> Self {
        Self::default()
    }

    /// Multiplies in baseᵉˣᵖ.
    pub fn mul_pow(&mut self, base: u64, exp: &BigRational) {
        assert!(base >= 1, "base must be positive");
        for (p, e) in factor(base) {
            let add = exp * BigRational::from_integer(BigInt::from(e));
            let slot = self.exponents.entry(p).or_insert_with(BigRational::zero);
            *slot += add;
        }
        self.exponents.retain(|_, e| !e.is_zero());
    }

    pub fn pow_of(base: u64, exp: &BigRational) -> Self {
        let mut f = Self::one();
        f.mul_pow(base, exp);
        f
    }

    pub fn mul(&mut self, other: &FactoredInteger) {
        for (&p, e) in &other.exponents {
            *self.exponents.entry(p).or_insert_with(BigRational::zero) += e;
        }
        self.exponents.retain(|_, e| !e.is_zero());
    }

    pub fn exponent(&self, p: u64) -> BigRational {
        self.exponents
            .get(&p)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn exponents(&self) -> &BTreeMap<u64, BigRational> {
        &self.exponents
    }

    pub fn is_integral(&self) -> bool {
        self.exponents
            .values()
            .all(|e| e.is_integer() && !e.is_negative())
    }

    /// log₂ of the value, approximately.
    pub fn log2(&self) -> f64 {
        self.exponents
            .iter()
            .map(|(&p, e)| (p as f64).log2() * e.to_f64().unwrap_or(f64::INFINITY))
            .sum()
    }

    /// The integer value, when integral and at most `max_bits` bits long.
    pub fn to_biguint(&self, max_bits: u64) -> Option<BigUint> {
        if !self.is_integral() || self.log2() > max_bits as f64 {
            return None;
        }
        let mut acc = BigUint::one();
        for (&p, e) in &self.exponents {
            let e = e.to_integer().to_u32()?;
            acc *= BigUint::from(p).pow(e);
        }
        Some(acc)
    }
}

fn fmt_exp(e: &BigRational) -> String {
    if e.is_integer() {
        e.to_integer().to_string()
    } else {
        format!("({}/{})", e.numer(), e.denom())
    }
}

impl fmt::Display for FactoredInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .exponents
            .iter()
            .map(|(p, e)| format!("{p}^{}", fmt_exp(e)))
            .collect();
        f.write_str(&parts.join(" · "))
    }
}

/// Serialises as {"2": "16", "3": "5"}; exponents are strings because they
/// can be huge or fractional.
impl Serialize for FactoredInteger {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.exponents.len()))?;
        for (p, e) in &self.exponents {
            let text = if e.is_integer() {
                e.to_integer().to_string()
            } else {
                format!("{}/{}", e.numer(), e.denom())
            };
            map.serialize_entry(&p.to_string(), &text)?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn fractional_powers_combine() {
        let mut f = FactoredInteger::pow_of(16, &q(5, 2));
        assert_eq!(f.exponent(2), q(10, 1));
        f.mul_pow(12, &q(1, 1));
        assert_eq!(f.to_string(), "2^12 · 3^1");
        assert_eq!(f.to_biguint(64).unwrap(), BigUint::from(12288u32));
        let g = FactoredInteger::pow_of(2, &q(1, 2));
        assert!(!g.is_integral());
        assert_eq!(g.to_string(), "2^(1/2)");
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"2":"1/2"}"#);
    }
}
