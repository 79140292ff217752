//! Bit-packed coordinate words.
//!
//! A word holds whole groups of `k` coordinates, two bits per coordinate,
//! coordinate `j` of group `g` at bit `2(g·k + j)`. Within a group the cyclic
//! shift moves coordinate `j` to `j + 1` and the last coordinate to the
//! front. All operations are a handful of bitwise instructions per word.

use crate::base::BaseFamily;

const EVEN: u64 = 0x5555_5555_5555_5555;

#[inline(always)]
fn swap_pairs(x: u64) -> u64 {
    ((x >> 1) & EVEN) | ((x & EVEN) << 1)
}

/// Layout of one 64-bit word: all of its groups share a family and a period.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordLayout {
    pub family: BaseFamily,
    pub k: usize,
    pub groups: usize,
    mask: u64,
    low: u64,
}

impl WordLayout {
    /// Largest number of groups of period `k` that fit in one word.
    pub fn capacity(k: usize) -> usize {
        32 / k
    }

    pub fn new(family: BaseFamily, k: usize, groups: usize) -> Self {
        assert!(
            k >= 1 && groups >= 1 && groups * k <= 32,
            "layout does not fit a word"
        );
        let cells = groups * k;
        let mask = if cells == 32 {
            u64::MAX
        } else {
            (1u64 << (2 * cells)) - 1
        };
        let mut low = 0u64;
        for g in 0..groups {
            low |= 0b11 << (2 * g * k);
        }
        WordLayout {
            family,
            k,
            groups,
            mask,
            low,
        }
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    #[inline(always)]
    pub fn meet(&self, x: u64, y: u64) -> u64 {
        x & y
    }

    #[inline(always)]
    pub fn join(&self, x: u64, y: u64) -> u64 {
        x | y
    }

    #[inline(always)]
    pub fn neg(&self, x: u64) -> u64 {
        swap_pairs(!x) & self.mask
    }

    #[inline(always)]
    pub fn pseudo(&self, x: u64) -> u64 {
        match self.family {
            BaseFamily::Three => !(x | swap_pairs(x)) & self.mask,
            BaseFamily::Two | BaseFamily::Four => !x & self.mask,
        }
    }

    #[inline(always)]
    pub fn shift(&self, x: u64) -> u64 {
        ((x << 2) & !self.low & self.mask) | ((x >> (2 * (self.k - 1))) & self.low)
    }

    /// Every coordinate set to `code`.
    pub fn constant(&self, code: u8) -> u64 {
        let mut w = 0u64;
        for c in 0..self.groups * self.k {
            w |= (code as u64) << (2 * c);
        }
        w
    }

    pub fn cell(&self, x: u64, index: usize) -> u8 {
        ((x >> (2 * index)) & 0b11) as u8
    }

    pub fn with_cell(&self, x: u64, index: usize, code: u8) -> u64 {
        (x & !(0b11 << (2 * index))) | ((code as u64) << (2 * index))
    }
}

/// A sequence of words, used for elements of large direct products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductLayout {
    words: Vec<WordLayout>,
}

impl ProductLayout {
    /// Lays out `count` groups of period `k` from `family`, after any groups
    /// already present.
    pub fn push_groups(&mut self, family: BaseFamily, k: usize, mut count: usize) {
        let cap = WordLayout::capacity(k);
        while count > 0 {
            let g = count.min(cap);
            self.words.push(WordLayout::new(family, k, g));
            count -= g;
        }
    }

    pub fn new() -> Self {
        ProductLayout { words: Vec::new() }
    }

    pub fn words(&self) -> &[WordLayout] {
        &self.words
    }

    pub fn width(&self) -> usize {
        self.words.len()
    }

    pub fn meet_into(&self, x: &[u64], y: &[u64], out: &mut [u64]) {
        for i in 0..self.words.len() {
            out[i] = x[i] & y[i];
        }
    }

    pub fn join_into(&self, x: &[u64], y: &[u64], out: &mut [u64]) {
        for i in 0..self.words.len() {
            out[i] = x[i] | y[i];
        }
    }

    pub fn neg_into(&self, x: &[u64], out: &mut [u64]) {
        for (i, w) in self.words.iter().enumerate() {
            out[i] = w.neg(x[i]);
        }
    }

    pub fn pseudo_into(&self, x: &[u64], out: &mut [u64]) {
        for (i, w) in self.words.iter().enumerate() {
            out[i] = w.pseudo(x[i]);
        }
    }

    pub fn shift_into(&self, x: &[u64], out: &mut [u64]) {
        for (i, w) in self.words.iter().enumerate() {
            out[i] = w.shift(x[i]);
        }
    }

    pub fn constant(&self, code: u8) -> Vec<u64> {
        self.words.iter().map(|w| w.constant(code)).collect()
    }
}

impl Default for ProductLayout {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::{BaseElement, *};

    #[test]
    fn packed_ops_match_base_tables() {
        for fam in BaseFamily::ALL {
            let w = WordLayout::new(fam, 1, 1);
            for x in BaseElement::all(fam) {
                let c = x.code() as u64;
                assert_eq!(w.neg(c), base_neg(x).code() as u64);
                assert_eq!(w.pseudo(c), base_pseudo(x).code() as u64);
                for y in BaseElement::all(fam) {
                    let d = y.code() as u64;
                    assert_eq!(w.meet(c, d), base_meet(x, y).unwrap().code() as u64);
                    assert_eq!(w.join(c, d), base_join(x, y).unwrap().code() as u64);
                }
            }
        }
    }

    #[test]
    fn shift_rotates_each_group_independently() {
        let w = WordLayout::new(BaseFamily::Four, 3, 2);
        // group 0 = (0, a, 1), group 1 = (b, 0, 0)
        let mut x = 0;
        x = w.with_cell(x, 1, LOW);
        x = w.with_cell(x, 2, ONE);
        x = w.with_cell(x, 3, HIGH);
        let y = w.shift(x);
        let cells: Vec<u8> = (0..6).map(|i| w.cell(y, i)).collect();
        assert_eq!(cells, vec![ONE, ZERO, LOW, ZERO, HIGH, ZERO]);
        let mut z = x;
        for _ in 0..3 {
            z = w.shift(z);
        }
        assert_eq!(z, x);
    }

    #[test]
    fn full_word_layout() {
        let w = WordLayout::new(BaseFamily::Three, 16, 2);
        assert_eq!(w.mask(), u64::MAX);
        let one = w.constant(ONE);
        assert_eq!(w.shift(one), one);
        assert_eq!(w.neg(one), 0);
    }
}
