//! The three subdirectly irreducible mpM-algebras T2, T3 and T4.
//!
//! Every element is a 2-bit code. The codes are chosen so that the lattice
//! order is bitwise inclusion: `0 = 00`, `a`/`c = 01`, `b = 10`, `1 = 11`.
//! Meet and join are therefore bitwise AND/OR in every family, and the De
//! Morgan negation is "complement then swap the two bits". Only the
//! pseudocomplement differs between the chain T3 and the Boolean-shaped T2, T4.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const ZERO: u8 = 0b00;
pub const LOW: u8 = 0b01;
pub const HIGH: u8 = 0b10;
pub const ONE: u8 = 0b11;

/// Which generator a coordinate lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BaseFamily {
    Two,
    Three,
    Four,
}

impl BaseFamily {
    pub const ALL: [BaseFamily; 3] = [BaseFamily::Two, BaseFamily::Three, BaseFamily::Four];

    pub fn size(self) -> usize {
        self.codes().len()
    }

    /// Legal codes in lattice-index order.
    pub fn codes(self) -> &'static [u8] {
        match self {
            BaseFamily::Two => &[ZERO, ONE],
            BaseFamily::Three => &[ZERO, LOW, ONE],
            BaseFamily::Four => &[ZERO, LOW, HIGH, ONE],
        }
    }

    pub fn is_legal(self, code: u8) -> bool {
        self.codes().contains(&code)
    }

    /// 2, 3 or 4, the index used in the names T_{i,k}.
    pub fn index(self) -> u32 {
        match self {
            BaseFamily::Two => 2,
            BaseFamily::Three => 3,
            BaseFamily::Four => 4,
        }
    }

    pub fn from_index(i: u32) -> Option<BaseFamily> {
        match i {
            2 => Some(BaseFamily::Two),
            3 => Some(BaseFamily::Three),
            4 => Some(BaseFamily::Four),
            _ => None,
        }
    }

    pub fn meet_table(self) -> &'static [[u8; 4]; 4] {
        &MEET
    }

    pub fn join_table(self) -> &'static [[u8; 4]; 4] {
        &JOIN
    }

    pub fn neg_table(self) -> &'static [u8; 4] {
        &NEG
    }

    pub fn pseudo_table(self) -> &'static [u8; 4] {
        match self {
            BaseFamily::Three => &PSEUDO_CHAIN,
            BaseFamily::Two | BaseFamily::Four => &PSEUDO_BOOLEAN,
        }
    }

    /// Report symbol for a code. T3's middle element prints as `c`.
    pub fn symbol(self, code: u8) -> &'static str {
        match (self, code) {
            (_, ZERO) => "0",
            (_, ONE) => "1",
            (BaseFamily::Three, LOW) => "c",
            (BaseFamily::Four, LOW) => "a",
            (BaseFamily::Four, HIGH) => "b",
            _ => "?",
        }
    }

    pub fn parse_symbol(self, s: &str) -> Option<u8> {
        self.codes().iter().copied().find(|&c| self.symbol(c) == s)
    }
}

impl fmt::Display for BaseFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.index())
    }
}

// Codes 1 and 2 are unreachable for T2, code 2 for T3.
const MEET: [[u8; 4]; 4] = [[0, 0, 0, 0], [0, 1, 0, 1], [0, 0, 2, 2], [0, 1, 2, 3]];
const JOIN: [[u8; 4]; 4] = [[0, 1, 2, 3], [1, 1, 3, 3], [2, 3, 2, 3], [3, 3, 3, 3]];
const NEG: [u8; 4] = [ONE, LOW, HIGH, ZERO];
const PSEUDO_BOOLEAN: [u8; 4] = [ONE, HIGH, LOW, ZERO];
const PSEUDO_CHAIN: [u8; 4] = [ONE, ZERO, ZERO, ZERO];

/// A single point of T2, T3 or T4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BaseElement {
    family: BaseFamily,
    code: u8,
}

impl BaseElement {
    pub fn new(family: BaseFamily, code: u8) -> Result<Self> {
        if family.is_legal(code) {
            Ok(BaseElement { family, code })
        } else {
            Err(Error::usage(format!(
                "code {code} is not an element of {family}"
            )))
        }
    }

    pub fn zero(family: BaseFamily) -> Self {
        BaseElement { family, code: ZERO }
    }

    pub fn one(family: BaseFamily) -> Self {
        BaseElement { family, code: ONE }
    }

    pub fn family(self) -> BaseFamily {
        self.family
    }

    pub fn code(self) -> u8 {
        self.code
    }

    pub fn all(family: BaseFamily) -> impl Iterator<Item = BaseElement> {
        family
            .codes()
            .iter()
            .map(move |&code| BaseElement { family, code })
    }

    fn same_family(self, other: BaseElement) -> Result<()> {
        if self.family == other.family {
            Ok(())
        } else {
            Err(Error::usage(format!(
                "family mismatch: {} vs {}",
                self.family, other.family
            )))
        }
    }

    pub fn le(self, other: BaseElement) -> Result<bool> {
        Ok(base_meet(self, other)? == self)
    }
}

impl fmt::Display for BaseElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.family.symbol(self.code))
    }
}

pub fn base_meet(x: BaseElement, y: BaseElement) -> Result<BaseElement> {
    x.same_family(y)?;
    let code = x.family.meet_table()[x.code as usize][y.code as usize];
    Ok(BaseElement { code, ..x })
}

pub fn base_join(x: BaseElement, y: BaseElement) -> Result<BaseElement> {
    x.same_family(y)?;
    let code = x.family.join_table()[x.code as usize][y.code as usize];
    Ok(BaseElement { code, ..x })
}

pub fn base_neg(x: BaseElement) -> BaseElement {
    BaseElement {
        code: x.family.neg_table()[x.code as usize],
        ..x
    }
}

pub fn base_pseudo(x: BaseElement) -> BaseElement {
    BaseElement {
        code: x.family.pseudo_table()[x.code as usize],
        ..x
    }
}

/// ∇x = ∼(∼x ∧ x*)
pub fn base_nabla(x: BaseElement) -> BaseElement {
    let inner = base_meet(base_neg(x), base_pseudo(x)).expect("same family");
    base_neg(inner)
}

/// △x = ∼∇∼x
pub fn base_triangle(x: BaseElement) -> BaseElement {
    base_neg(base_nabla(base_neg(x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(f: BaseFamily, s: &str) -> BaseElement {
        BaseElement::new(f, f.parse_symbol(s).unwrap()).unwrap()
    }

    #[test]
    fn table_examples() {
        let four = BaseFamily::Four;
        assert_eq!(base_neg(el(four, "a")), el(four, "a"));
        assert_eq!(base_pseudo(el(four, "a")), el(four, "b"));
        let three = BaseFamily::Three;
        assert_eq!(
            base_meet(el(three, "c"), el(three, "0")).unwrap(),
            el(three, "0")
        );
    }

    #[test]
    fn modal_examples() {
        for f in BaseFamily::ALL {
            assert_eq!(base_triangle(BaseElement::one(f)), BaseElement::one(f));
            assert_eq!(base_triangle(BaseElement::zero(f)), BaseElement::zero(f));
        }
        assert_eq!(
            base_nabla(el(BaseFamily::Three, "c")),
            el(BaseFamily::Three, "1")
        );
        assert_eq!(
            base_triangle(el(BaseFamily::Four, "a")),
            el(BaseFamily::Four, "0")
        );
    }

    #[test]
    fn family_mismatch_is_usage_error() {
        let x = BaseElement::one(BaseFamily::Three);
        let y = BaseElement::one(BaseFamily::Four);
        assert!(matches!(base_meet(x, y), Err(Error::Usage(_))));
        assert!(BaseElement::new(BaseFamily::Three, HIGH).is_err());
    }

    #[test]
    fn order_shapes() {
        let f = BaseFamily::Four;
        assert!(!el(f, "a").le(el(f, "b")).unwrap());
        assert!(!el(f, "b").le(el(f, "a")).unwrap());
        let t = BaseFamily::Three;
        assert!(el(t, "0").le(el(t, "c")).unwrap());
        assert!(el(t, "c").le(el(t, "1")).unwrap());
    }

    #[test]
    fn de_morgan_and_pseudocomplement_laws() {
        for f in BaseFamily::ALL {
            for x in BaseElement::all(f) {
                assert_eq!(base_neg(base_neg(x)), x);
                // (tm) x ∨ ∼x ≤ x ∨ x*
                let lhs = base_join(x, base_neg(x)).unwrap();
                let rhs = base_join(x, base_pseudo(x)).unwrap();
                assert!(lhs.le(rhs).unwrap(), "(tm) fails at {x} in {f}");
                // TMA conditions
                let nx = base_nabla(x);
                assert_eq!(base_join(nx, base_neg(x)).unwrap(), BaseElement::one(f));
                assert_eq!(
                    base_meet(nx, base_neg(x)).unwrap(),
                    base_meet(base_neg(x), x).unwrap()
                );
                for y in BaseElement::all(f) {
                    assert_eq!(
                        base_neg(base_meet(x, y).unwrap()),
                        base_join(base_neg(x), base_neg(y)).unwrap()
                    );
                    let disjoint = base_meet(x, y).unwrap() == BaseElement::zero(f);
                    assert_eq!(disjoint, y.le(base_pseudo(x)).unwrap());
                }
            }
        }
    }
}
