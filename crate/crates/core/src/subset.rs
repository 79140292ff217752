//! Bitmask subsets of an algebra's universe, indexed by canonical position.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgSubset {
    size: usize,
    bits: Vec<u64>,
}

impl AlgSubset {
    pub fn empty(size: usize) -> Self {
        AlgSubset {
            size,
            bits: vec![0; size.div_ceil(64)],
        }
    }

    pub fn full(size: usize) -> Self {
        let mut s = Self::empty(size);
        for i in 0..size {
            s.insert(i);
        }
        s
    }

    pub fn from_predicate(size: usize, mut pred: impl FnMut(usize) -> bool) -> Self {
        let mut s = Self::empty(size);
        for i in 0..size {
            if pred(i) {
                s.insert(i);
            }
        }
        s
    }

    pub fn from_indices(size: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(size);
        for i in indices {
            if i >= size {
                return Err(Error::usage(format!(
                    "index {i} outside a universe of {size}"
                )));
            }
            s.insert(i);
        }
        Ok(s)
    }

    /// Size of the universe this subset lives in.
    pub fn universe_size(&self) -> usize {
        self.size
    }

    pub fn check_universe(&self, size: usize) -> Result<()> {
        if self.size == size {
            Ok(())
        } else {
            Err(Error::usage(format!(
                "subset of a {}-element universe used with a {size}-element algebra",
                self.size
            )))
        }
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.size && self.bits[i / 64] & (1 << (i % 64)) != 0
    }

    #[inline]
    pub fn insert(&mut self, i: usize) -> bool {
        let fresh = !self.contains(i);
        self.bits[i / 64] |= 1 << (i % 64);
        fresh
    }

    pub fn remove(&mut self, i: usize) {
        self.bits[i / 64] &= !(1 << (i % 64));
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.size
    }

    pub fn members(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b)
            })
        })
    }

    pub fn is_subset(&self, other: &AlgSubset) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &AlgSubset) -> AlgSubset {
        AlgSubset {
            size: self.size,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn intersection(&self, other: &AlgSubset) -> AlgSubset {
        AlgSubset {
            size: self.size,
            bits: self
                .bits
                .iter()
                .zip(&other.bits)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn complement(&self) -> AlgSubset {
        AlgSubset::from_predicate(self.size, |i| !self.contains(i))
    }

    /// Image under an index map.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> AlgSubset {
        let mut out = AlgSubset::empty(self.size);
        for i in self.iter() {
            out.insert(f(i));
        }
        out
    }
}

impl fmt::Debug for AlgSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgSubset{:?}", self.members())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_set_algebra() {
        let a = AlgSubset::from_indices(70, [0, 3, 65]).unwrap();
        let b = AlgSubset::from_indices(70, [3, 69]).unwrap();
        assert_eq!(a.union(&b).members(), vec![0, 3, 65, 69]);
        assert_eq!(a.intersection(&b).members(), vec![3]);
        assert_eq!(a.complement().count(), 67);
        assert!(!a.is_subset(&b));
        assert!(a.intersection(&b).is_subset(&b));
        assert!(AlgSubset::from_indices(3, [3]).is_err());
        assert!(a.check_universe(71).is_err());
    }
}
