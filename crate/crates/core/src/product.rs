//! The product algebras T_{i,k} = T_i^k with the cyclic shift, and their
//! subuniverses.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{orbit_length, Algebra};
use crate::base::{BaseElement, BaseFamily};
use crate::error::{Error, Result};
use crate::finite::FiniteAlgebra;
use crate::iso;
use crate::subset::AlgSubset;

/// Hard cap on the period: one word packs 32 coordinates, we allow half.
pub const MAX_PERIOD: usize = 16;
/// Largest universe `CyclicAlgebra::full` will materialise.
pub const DEFAULT_UNIVERSE_BUDGET: usize = 1 << 20;
/// Default bound on `k` for subalgebra enumeration.
pub const DEFAULT_ENUMERATION_BOUND: usize = 4;

/// A length-k word of base symbols, coordinate `j` at bits `2j..2j+2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgElement(u64);

impl AlgElement {
    pub fn from_bits(bits: u64) -> Self {
        AlgElement(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn from_coords(coords: &[BaseElement]) -> Result<Self> {
        if coords.is_empty() || coords.len() > MAX_PERIOD {
            return Err(Error::usage(format!(
                "word length {} out of range",
                coords.len()
            )));
        }
        let family = coords[0].family();
        let mut bits = 0u64;
        for (j, c) in coords.iter().enumerate() {
            if c.family() != family {
                return Err(Error::usage("coordinates from different families"));
            }
            bits |= (c.code() as u64) << (2 * j);
        }
        Ok(AlgElement(bits))
    }

    pub fn coord(self, j: usize) -> u8 {
        ((self.0 >> (2 * j)) & 0b11) as u8
    }

    pub fn coords(self, k: usize) -> Vec<u8> {
        (0..k).map(|j| self.coord(j)).collect()
    }

    pub fn constant(code: u8, k: usize) -> Self {
        let mut bits = 0;
        for j in 0..k {
            bits |= (code as u64) << (2 * j);
        }
        AlgElement(bits)
    }

    pub fn render(self, family: BaseFamily, k: usize) -> String {
        if k == 1 {
            return family.symbol(self.coord(0)).to_string();
        }
        let parts: Vec<&str> = (0..k).map(|j| family.symbol(self.coord(j))).collect();
        format!("({})", parts.join(","))
    }

    /// Parses `a`, `(a,b)` or `(0, c, 1)` style words.
    pub fn parse(family: BaseFamily, k: usize, text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .unwrap_or(t);
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        let parts = if parts.len() == 1 && k > 1 {
            // a bare symbol denotes the constant word
            vec![parts[0]; k]
        } else {
            parts
        };
        if parts.len() != k {
            return Err(Error::usage(format!(
                "element `{text}` has {} coordinates, expected {k}",
                parts.len()
            )));
        }
        let mut bits = 0u64;
        for (j, p) in parts.iter().enumerate() {
            let code = family
                .parse_symbol(p)
                .ok_or_else(|| Error::usage(format!("`{p}` is not a symbol of {family}")))?;
            bits |= (code as u64) << (2 * j);
        }
        Ok(AlgElement(bits))
    }
}

fn swap_ab(bits: u64) -> u64 {
    // exchange codes 01 and 10 in every cell, leave 00 and 11 alone
    let even = 0x5555_5555_5555_5555u64;
    ((bits >> 1) & even) | ((bits & even) << 1)
}

/// Raw single-word operations for one family and period.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct WordOps {
    layout: crate::packed::WordLayout,
}

impl WordOps {
    pub(crate) fn new(family: BaseFamily, k: usize) -> Self {
        WordOps {
            layout: crate::packed::WordLayout::new(family, k, 1),
        }
    }

    #[inline(always)]
    pub(crate) fn meet(&self, x: u64, y: u64) -> u64 {
        x & y
    }
    #[inline(always)]
    pub(crate) fn join(&self, x: u64, y: u64) -> u64 {
        x | y
    }
    #[inline(always)]
    pub(crate) fn neg(&self, x: u64) -> u64 {
        self.layout.neg(x)
    }
    #[inline(always)]
    pub(crate) fn pseudo(&self, x: u64) -> u64 {
        self.layout.pseudo(x)
    }
    #[inline(always)]
    pub(crate) fn shift(&self, x: u64) -> u64 {
        self.layout.shift(x)
    }
    pub(crate) fn zero(&self) -> u64 {
        0
    }
    pub(crate) fn one(&self) -> u64 {
        self.layout.mask()
    }
}

/// Membership structure for closures: dense bitmask for small periods,
/// hash set otherwise.
enum CodeSet {
    Dense(Vec<u64>),
    Sparse(HashSet<u64>),
}

impl CodeSet {
    fn new(k: usize) -> Self {
        if k <= 8 {
            CodeSet::Dense(vec![0; (1usize << (2 * k)).div_ceil(64)])
        } else {
            CodeSet::Sparse(HashSet::new())
        }
    }

    /// Inserts and reports whether the code was new.
    fn insert(&mut self, x: u64) -> bool {
        match self {
            CodeSet::Dense(bits) => {
                let (w, b) = ((x / 64) as usize, x % 64);
                let fresh = bits[w] & (1 << b) == 0;
                bits[w] |= 1 << b;
                fresh
            }
            CodeSet::Sparse(set) => set.insert(x),
        }
    }
}

/// Worklist closure under ∧, ∨, ∼, *, t. `closed_prefix` leading entries of
/// `elems` are assumed already closed among themselves.
pub(crate) fn close_words(ops: &WordOps, k: usize, elems: &mut Vec<u64>, closed_prefix: usize) {
    let mut seen = CodeSet::new(k);
    let mut pending = std::mem::take(elems);
    for &x in &pending {
        seen.insert(x);
    }
    // dedupe while keeping order
    let mut dedup = Vec::with_capacity(pending.len());
    let mut again = CodeSet::new(k);
    let mut prefix = 0;
    for (i, x) in pending.drain(..).enumerate() {
        if again.insert(x) {
            if i < closed_prefix {
                prefix += 1;
            }
            dedup.push(x);
        }
    }
    *elems = dedup;
    let mut i = prefix;
    while i < elems.len() {
        let x = elems[i];
        for y in [ops.neg(x), ops.pseudo(x), ops.shift(x)] {
            if seen.insert(y) {
                elems.push(y);
            }
        }
        for j in 0..=i {
            let z = elems[j];
            for y in [ops.meet(x, z), ops.join(x, z)] {
                if seen.insert(y) {
                    elems.push(y);
                }
            }
        }
        i += 1;
    }
}

/// A finite 𝒞ₖ-algebra realised as a subuniverse of T_{i,k}.
#[derive(Debug, Clone)]
pub struct CyclicAlgebra {
    family: BaseFamily,
    k: usize,
    ops: WordOps,
    universe: Vec<AlgElement>,
    index: HashMap<AlgElement, u32>,
    label: String,
}

/// Serialised form used in golden files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraRecord {
    pub version: u32,
    pub family: String,
    pub k: usize,
    pub label: String,
    pub universe: Vec<String>,
}

fn check_period(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::usage("the period k must be at least 1"))
    } else if k > MAX_PERIOD {
        Err(Error::resource("period k", k, MAX_PERIOD))
    } else {
        Ok(())
    }
}

impl CyclicAlgebra {
    /// The full product T_{i,k}.
    pub fn full(family: BaseFamily, k: usize) -> Result<Self> {
        Self::full_with_budget(family, k, DEFAULT_UNIVERSE_BUDGET)
    }

    pub fn full_with_budget(family: BaseFamily, k: usize, budget: usize) -> Result<Self> {
        check_period(k)?;
        let size = (family.size() as u128).pow(k as u32);
        if size > budget as u128 {
            return Err(Error::resource(
                format!("universe of {family},{k}"),
                size,
                budget,
            ));
        }
        let codes = family.codes();
        let mut elems = Vec::with_capacity(size as usize);
        let mut digits = vec![0usize; k];
        loop {
            let mut bits = 0u64;
            for (j, &d) in digits.iter().enumerate() {
                bits |= (codes[d] as u64) << (2 * j);
            }
            elems.push(AlgElement(bits));
            let mut j = 0;
            while j < k {
                digits[j] += 1;
                if digits[j] < codes.len() {
                    break;
                }
                digits[j] = 0;
                j += 1;
            }
            if j == k {
                break;
            }
        }
        Ok(Self::assemble(
            family,
            k,
            elems,
            format!("T{},{}", family.index(), k),
        ))
    }

    /// Wraps a set of words that is already known to be a subuniverse.
    fn assemble(family: BaseFamily, k: usize, mut elems: Vec<AlgElement>, label: String) -> Self {
        let ops = WordOps::new(family, k);
        let period = |x: AlgElement| {
            let mut cur = ops.shift(x.0);
            let mut d = 1;
            while cur != x.0 {
                cur = ops.shift(cur);
                d += 1;
            }
            d
        };
        elems.sort_by_key(|&x| (period(x), x.0));
        elems.dedup();
        let index = elems
            .iter()
            .enumerate()
            .map(|(i, &x)| (x, i as u32))
            .collect();
        CyclicAlgebra {
            family,
            k,
            ops,
            universe: elems,
            index,
            label,
        }
    }

    /// Builds an algebra from an explicit universe, checking closure.
    pub fn from_universe(
        family: BaseFamily,
        k: usize,
        elems: Vec<AlgElement>,
        label: impl Into<String>,
    ) -> Result<Self> {
        check_period(k)?;
        let ops = WordOps::new(family, k);
        for &x in &elems {
            if (0..k).any(|j| !family.is_legal(x.coord(j))) || x.0 & !ops.one() != 0 {
                return Err(Error::usage(format!("{x:?} is not a word of {family},{k}")));
            }
        }
        let alg = Self::assemble(family, k, elems, label.into());
        let closed = alg.index.contains_key(&AlgElement(0))
            && alg.index.contains_key(&AlgElement(ops.one()))
            && alg.universe.iter().all(|&x| {
                [ops.neg(x.0), ops.pseudo(x.0), ops.shift(x.0)]
                    .iter()
                    .all(|y| alg.index.contains_key(&AlgElement(*y)))
                    && alg.universe.iter().all(|&y| {
                        alg.index.contains_key(&AlgElement(x.0 & y.0))
                            && alg.index.contains_key(&AlgElement(x.0 | y.0))
                    })
            });
        if closed {
            Ok(alg)
        } else {
            Err(Error::usage("the given words do not form a subuniverse"))
        }
    }

    /// The subuniverse generated by `seeds` inside T_{i,k}, without
    /// materialising the ambient product.
    pub fn generated(family: BaseFamily, k: usize, seeds: &[AlgElement]) -> Result<Self> {
        check_period(k)?;
        let ops = WordOps::new(family, k);
        let mut elems = vec![ops.zero(), ops.one()];
        elems.extend(seeds.iter().map(|s| s.0));
        close_words(&ops, k, &mut elems, 0);
        let label = format!("<{} gens in T{},{}>", seeds.len(), family.index(), k);
        Ok(Self::assemble(
            family,
            k,
            elems.into_iter().map(AlgElement).collect(),
            label,
        ))
    }

    /// {x : tᵈx = x}, the standard copy of T_{i,d} inside T_{i,k}.
    pub fn diagonal(family: BaseFamily, k: usize, d: usize) -> Result<Self> {
        if d == 0 || !k.is_multiple_of(d) {
            return Err(Error::usage(format!("{d} does not divide {k}")));
        }
        let full = Self::full(family, k)?;
        let elems = full
            .universe
            .iter()
            .copied()
            .filter(|&x| full.shift_pow(x, d) == x)
            .collect();
        Ok(Self::assemble(
            family,
            k,
            elems,
            format!("T{},{} in T{},{}", family.index(), d, family.index(), k),
        ))
    }

    /// {x : tᵈx = swap(x)} in T_{4,k}, where swap exchanges a and b. Needs 2d | k.
    pub fn twisted(k: usize, d: usize) -> Result<Self> {
        if d == 0 || !k.is_multiple_of(2 * d) {
            return Err(Error::usage(format!(
                "twisted copy needs 2·{d} to divide {k}"
            )));
        }
        let full = Self::full(BaseFamily::Four, k)?;
        let elems = full
            .universe
            .iter()
            .copied()
            .filter(|&x| full.shift_pow(x, d).0 == swap_ab(x.0))
            .collect();
        Ok(Self::assemble(
            BaseFamily::Four,
            k,
            elems,
            format!("TW4,{} in T4,{}", d, k),
        ))
    }

    pub fn family(&self) -> BaseFamily {
        self.family
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn universe(&self) -> &[AlgElement] {
        &self.universe
    }

    pub fn contains(&self, x: AlgElement) -> bool {
        self.index.contains_key(&x)
    }

    pub fn parse_element(&self, text: &str) -> Result<AlgElement> {
        let x = AlgElement::parse(self.family, self.k, text)?;
        if self.contains(x) {
            Ok(x)
        } else {
            Err(Error::usage(format!("`{text}` is not in {}", self.label)))
        }
    }

    /// Coordinatewise application of a named operation.
    pub fn lift_op(&self, op: LiftedOp, args: &[AlgElement]) -> Result<AlgElement> {
        if args.len() != op.arity() {
            return Err(Error::usage(format!(
                "{op:?} takes {} arguments, got {}",
                op.arity(),
                args.len()
            )));
        }
        if let Some(bad) = args.iter().find(|a| !self.contains(**a)) {
            return Err(Error::usage(format!(
                "{} is not in {}",
                self.format(*bad),
                self.label
            )));
        }
        Ok(match op {
            LiftedOp::Meet => self.meet(args[0], args[1]),
            LiftedOp::Join => self.join(args[0], args[1]),
            LiftedOp::Neg => self.neg(args[0]),
            LiftedOp::Pseudo => self.pseudo(args[0]),
            LiftedOp::Shift => self.shift(args[0]),
            LiftedOp::Nabla => self.nabla(args[0]),
            LiftedOp::Triangle => self.triangle(args[0]),
        })
    }

    /// Least subuniverse containing `seeds` and the constants.
    pub fn generated_subalgebra(&self, seeds: &[AlgElement]) -> Result<CyclicAlgebra> {
        if let Some(bad) = seeds.iter().find(|a| !self.contains(**a)) {
            return Err(Error::usage(format!(
                "seed {} is not in {}",
                self.format(*bad),
                self.label
            )));
        }
        let mut sub = Self::generated(self.family, self.k, seeds)?;
        sub.label = if seeds.is_empty() {
            format!("[∅] in {}", self.label)
        } else {
            let names: Vec<String> = seeds.iter().map(|s| self.format(*s)).collect();
            format!("[{}] in {}", names.join(", "), self.label)
        };
        Ok(sub)
    }

    /// K(A) = {x : tx = x = ∇x}.
    pub fn k_set(&self) -> AlgSubset {
        AlgSubset::from_predicate(self.size(), |i| {
            let x = self.universe[i];
            self.shift(x) == x && self.nabla(x) == x
        })
    }

    /// B(A) = {x : x ∧ ∼x = 0}.
    pub fn b_set(&self) -> AlgSubset {
        AlgSubset::from_predicate(self.size(), |i| {
            let x = self.universe[i];
            self.meet(x, self.neg(x)) == self.zero()
        })
    }

    pub fn to_finite(&self) -> FiniteAlgebra {
        FiniteAlgebra::from_algebra(self)
    }

    pub fn record(&self) -> AlgebraRecord {
        AlgebraRecord {
            version: 1,
            family: self.family.to_string(),
            k: self.k,
            label: self.label.clone(),
            universe: self.universe.iter().map(|&x| self.format(x)).collect(),
        }
    }
}

impl fmt::Display for CyclicAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Operations available through `lift_op`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftedOp {
    Meet,
    Join,
    Neg,
    Pseudo,
    Shift,
    Nabla,
    Triangle,
}

impl LiftedOp {
    pub fn arity(self) -> usize {
        match self {
            LiftedOp::Meet | LiftedOp::Join => 2,
            _ => 1,
        }
    }
}

impl Algebra for CyclicAlgebra {
    type Elem = AlgElement;

    fn period(&self) -> usize {
        self.k
    }
    fn size(&self) -> usize {
        self.universe.len()
    }
    fn element(&self, index: usize) -> AlgElement {
        self.universe[index]
    }
    fn index_of(&self, x: AlgElement) -> Option<usize> {
        self.index.get(&x).map(|&i| i as usize)
    }
    fn zero(&self) -> AlgElement {
        AlgElement(0)
    }
    fn one(&self) -> AlgElement {
        AlgElement(self.ops.one())
    }
    #[inline]
    fn meet(&self, x: AlgElement, y: AlgElement) -> AlgElement {
        AlgElement(x.0 & y.0)
    }
    #[inline]
    fn join(&self, x: AlgElement, y: AlgElement) -> AlgElement {
        AlgElement(x.0 | y.0)
    }
    #[inline]
    fn neg(&self, x: AlgElement) -> AlgElement {
        AlgElement(self.ops.neg(x.0))
    }
    #[inline]
    fn pseudo(&self, x: AlgElement) -> AlgElement {
        AlgElement(self.ops.pseudo(x.0))
    }
    #[inline]
    fn shift(&self, x: AlgElement) -> AlgElement {
        AlgElement(self.ops.shift(x.0))
    }
    fn format(&self, x: AlgElement) -> String {
        x.render(self.family, self.k)
    }
    fn name(&self) -> String {
        self.label.clone()
    }
}

/// The right rotation t(x₁,…,x_k) = (x_k,x₁,…,x_{k−1}).
pub fn shift(alg: &CyclicAlgebra, x: AlgElement) -> AlgElement {
    alg.shift(x)
}

/// Bitmask over the codes of T_{i,k}; only used for k within the
/// enumeration bound, where 4ᵏ codes fit comfortably.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CodeMask(Vec<u64>);

impl CodeMask {
    fn empty(k: usize) -> Self {
        CodeMask(vec![0; (1usize << (2 * k)).div_ceil(64)])
    }

    fn from_words(k: usize, words: &[u64]) -> Self {
        let mut m = Self::empty(k);
        for &w in words {
            m.0[(w / 64) as usize] |= 1 << (w % 64);
        }
        m
    }

    fn words(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for (i, &chunk) in self.0.iter().enumerate() {
            let mut c = chunk;
            while c != 0 {
                let b = c.trailing_zeros() as u64;
                out.push(i as u64 * 64 + b);
                c &= c - 1;
            }
        }
        out
    }

    fn contains(&self, w: u64) -> bool {
        self.0[(w / 64) as usize] & (1 << (w % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|c| c.count_ones() as usize).sum()
    }

    fn is_subset(&self, other: &CodeMask) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

/// Memoised generation of subuniverses of one T_{i,k}, keyed by bitmask.
pub(crate) struct SubuniverseCloser {
    pub(crate) family: BaseFamily,
    pub(crate) k: usize,
    ops: WordOps,
    extend_cache: HashMap<(CodeMask, u64), CodeMask>,
}

impl SubuniverseCloser {
    pub(crate) fn new(family: BaseFamily, k: usize) -> Self {
        SubuniverseCloser {
            family,
            k,
            ops: WordOps::new(family, k),
            extend_cache: HashMap::new(),
        }
    }

    pub(crate) fn constants(&mut self) -> CodeMask {
        let mut elems = vec![self.ops.zero(), self.ops.one()];
        close_words(&self.ops, self.k, &mut elems, 0);
        CodeMask::from_words(self.k, &elems)
    }

    /// Closure of `base ∪ {x}` where `base` is already a subuniverse.
    pub(crate) fn extend(&mut self, base: &CodeMask, x: u64) -> CodeMask {
        if base.contains(x) {
            return base.clone();
        }
        let key = (base.clone(), x);
        if let Some(hit) = self.extend_cache.get(&key) {
            return hit.clone();
        }
        let mut elems = base.words();
        let prefix = elems.len();
        elems.push(x);
        close_words(&self.ops, self.k, &mut elems, prefix);
        let out = CodeMask::from_words(self.k, &elems);
        self.extend_cache.insert(key, out.clone());
        out
    }

    /// Closure of the union of two subuniverses.
    pub(crate) fn join(&mut self, a: &CodeMask, b: &CodeMask) -> CodeMask {
        if b.is_subset(a) {
            return a.clone();
        }
        if a.is_subset(b) {
            return b.clone();
        }
        let mut elems = a.words();
        let prefix = elems.len();
        elems.extend(b.words().into_iter().filter(|&w| !a.contains(w)));
        close_words(&self.ops, self.k, &mut elems, prefix);
        CodeMask::from_words(self.k, &elems)
    }

    pub(crate) fn to_algebra(&self, mask: &CodeMask, label: String) -> CyclicAlgebra {
        CyclicAlgebra::assemble(
            self.family,
            self.k,
            mask.words().into_iter().map(AlgElement).collect(),
            label,
        )
    }
}

/// One subuniverse found by enumeration, with its isomorphism class.
#[derive(Debug, Clone)]
pub struct SubalgebraEntry {
    pub algebra: CyclicAlgebra,
    pub class: SimpleClass,
}

/// Isomorphism class of a simple 𝒞ₖ-algebra among the known models.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SimpleClass {
    /// T_{i,d} with its rotation.
    Standard {
        family: u32,
        d: usize,
    },
    /// T4^d with t^d acting as the a↔b swap.
    Twisted {
        d: usize,
    },
    Unclassified {
        size: usize,
    },
}

impl SimpleClass {
    pub fn is_listed(&self) -> bool {
        matches!(self, SimpleClass::Standard { .. })
    }

    /// Number of elements.
    pub fn size(&self) -> usize {
        match *self {
            SimpleClass::Standard { family, d } => (family as usize).pow(d as u32),
            SimpleClass::Twisted { d } => 4usize.pow(d as u32),
            SimpleClass::Unclassified { size } => size,
        }
    }
}

impl fmt::Display for SimpleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleClass::Standard { family, d } => write!(f, "T{family},{d}"),
            SimpleClass::Twisted { d } => write!(f, "TW4,{d}"),
            SimpleClass::Unclassified { size } => write!(f, "unclassified({size})"),
        }
    }
}

/// Identifies `alg` up to isomorphism against T_{j,d} (d | k) and the twisted
/// copies, all realised with period `alg.k()`.
pub fn classify_simple(alg: &CyclicAlgebra) -> Result<SimpleClass> {
    let k = alg.k();
    let fin = alg.to_finite();
    let n = alg.size();
    for d in crate::free::divisors(k) {
        for fam in BaseFamily::ALL {
            if fam.size().pow(d as u32) != n {
                continue;
            }
            let model = CyclicAlgebra::diagonal(fam, k, d)?;
            if iso::is_isomorphic(&fin, &model.to_finite()).is_some() {
                return Ok(SimpleClass::Standard {
                    family: fam.index(),
                    d,
                });
            }
        }
        if k.is_multiple_of(2 * d) && 4usize.pow(d as u32) == n {
            let model = CyclicAlgebra::twisted(k, d)?;
            if iso::is_isomorphic(&fin, &model.to_finite()).is_some() {
                return Ok(SimpleClass::Twisted { d });
            }
        }
    }
    Ok(SimpleClass::Unclassified { size: n })
}

/// All subuniverses of T_{i,k}: closures of every single seed, then closed
/// under pairwise joins until nothing new appears.
pub fn enumerate_subalgebras(family: BaseFamily, k: usize) -> Result<Vec<SubalgebraEntry>> {
    enumerate_subalgebras_bounded(family, k, DEFAULT_ENUMERATION_BOUND)
}

pub fn enumerate_subalgebras_bounded(
    family: BaseFamily,
    k: usize,
    bound: usize,
) -> Result<Vec<SubalgebraEntry>> {
    check_period(k)?;
    if k > bound || k > 8 {
        return Err(Error::resource(
            "subalgebra enumeration period",
            k,
            bound.min(8),
        ));
    }
    let full = CyclicAlgebra::full(family, k)?;
    let mut closer = SubuniverseCloser::new(family, k);
    let bottom = closer.constants();
    let mut found: HashSet<CodeMask> = HashSet::new();
    found.insert(bottom.clone());
    for &x in full.universe() {
        found.insert(closer.extend(&bottom, x.bits()));
    }
    let mut frontier: Vec<CodeMask> = found.iter().cloned().collect();
    frontier.sort();
    while !frontier.is_empty() {
        let mut all: Vec<CodeMask> = found.iter().cloned().collect();
        all.sort();
        let mut next = Vec::new();
        for a in &frontier {
            for b in &all {
                let j = closer.join(a, b);
                if found.insert(j.clone()) {
                    next.push(j);
                }
            }
        }
        next.sort();
        frontier = next;
    }
    let mut masks: Vec<CodeMask> = found.into_iter().collect();
    masks.sort_by(|a, b| a.count().cmp(&b.count()).then_with(|| a.cmp(b)));
    masks
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let alg = closer.to_algebra(m, format!("S{}({},{})", i, family, k));
            let class = classify_simple(&alg)?;
            let alg = alg.with_label(format!("{class} ≅ S{i} ⊆ T{},{k}", family.index()));
            Ok(SubalgebraEntry {
                algebra: alg,
                class,
            })
        })
        .collect()
}

/// Exhaustive subset scan; only sensible for universes of at most ~20 elements.
pub fn enumerate_subalgebras_naive(family: BaseFamily, k: usize) -> Result<Vec<Vec<AlgElement>>> {
    let full = CyclicAlgebra::full(family, k)?;
    let n = full.size();
    if n > 20 {
        return Err(Error::resource("naive subset scan", n, 20));
    }
    let mut out = Vec::new();
    for bits in 0u64..(1 << n) {
        let elems: Vec<AlgElement> = (0..n)
            .filter(|i| bits & (1 << i) != 0)
            .map(|i| full.element(i))
            .collect();
        let set: HashSet<AlgElement> = elems.iter().copied().collect();
        let has = |x: AlgElement| set.contains(&x);
        if !has(full.zero()) || !has(full.one()) {
            continue;
        }
        let closed = elems.iter().all(|&x| {
            has(full.neg(x))
                && has(full.pseudo(x))
                && has(full.shift(x))
                && elems
                    .iter()
                    .all(|&y| has(full.meet(x, y)) && has(full.join(x, y)))
        });
        if closed {
            let mut e = elems;
            e.sort();
            out.push(e);
        }
    }
    Ok(out)
}

/// Orbit length of an element under the shift.
pub fn element_period(alg: &CyclicAlgebra, x: AlgElement) -> usize {
    orbit_length(alg, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::base::BaseFamily::*;

    fn el(a: &CyclicAlgebra, s: &str) -> AlgElement {
        a.parse_element(s).unwrap()
    }

    fn words(a: &CyclicAlgebra) -> Vec<String> {
        let mut v: Vec<String> = a.universe().iter().map(|&x| a.format(x)).collect();
        v.sort();
        v
    }

    #[test]
    fn shift_examples() {
        let t43 = CyclicAlgebra::full(Four, 3).unwrap();
        assert_eq!(t43.format(shift(&t43, el(&t43, "(0,a,1)"))), "(1,0,a)");
        let t41 = CyclicAlgebra::full(Four, 1).unwrap();
        for &x in t41.universe() {
            assert_eq!(shift(&t41, x), x);
        }
        let t42 = CyclicAlgebra::full(Four, 2).unwrap();
        assert_eq!(t42.format(shift(&t42, el(&t42, "(a,b)"))), "(b,a)");
    }

    #[test]
    fn lift_examples() {
        let t42 = CyclicAlgebra::full(Four, 2).unwrap();
        let ab = el(&t42, "(a,b)");
        assert_eq!(t42.lift_op(LiftedOp::Neg, &[ab]).unwrap(), ab);
        assert_eq!(
            t42.format(t42.lift_op(LiftedOp::Pseudo, &[ab]).unwrap()),
            "(b,a)"
        );
        let t22 = CyclicAlgebra::full(Two, 2).unwrap();
        let x = el(&t22, "(0,1)");
        assert_eq!(t22.lift_op(LiftedOp::Nabla, &[x]).unwrap(), x);
        assert!(t22.lift_op(LiftedOp::Meet, &[x]).is_err());
    }

    #[test]
    fn generated_examples() {
        let t42 = CyclicAlgebra::full(Four, 2).unwrap();
        // the constants are already closed: t, ∼ and * all fix 0̄ and 1̄
        let g = t42.generated_subalgebra(&[]).unwrap();
        assert_eq!(words(&g), vec!["(0,0)", "(1,1)"]);
        let g = t42.generated_subalgebra(&[el(&t42, "(0,1)")]).unwrap();
        assert_eq!(words(&g), vec!["(0,0)", "(0,1)", "(1,0)", "(1,1)"]);
        let g = t42.generated_subalgebra(&[el(&t42, "(a,b)")]).unwrap();
        assert_eq!(words(&g), vec!["(0,0)", "(1,1)", "(a,b)", "(b,a)"]);
        let g = t42.generated_subalgebra(&[el(&t42, "(a,0)")]).unwrap();
        assert_eq!(g.size(), 16);
    }

    #[test]
    fn k_and_b_sets() {
        for k in 1..=3 {
            let t4 = CyclicAlgebra::full(Four, k).unwrap();
            let ks = t4.k_set();
            assert_eq!(
                ks.members(),
                vec![
                    t4.index_of(t4.zero()).unwrap(),
                    t4.index_of(t4.one()).unwrap()
                ]
            );
        }
        let t41 = CyclicAlgebra::full(Four, 1).unwrap();
        let b: Vec<String> = t41
            .b_set()
            .members()
            .iter()
            .map(|&i| t41.format(t41.element(i)))
            .collect();
        assert_eq!(b, vec!["0", "1"]);
        let t22 = CyclicAlgebra::full(Two, 2).unwrap();
        let ks: Vec<String> = t22
            .k_set()
            .members()
            .iter()
            .map(|&i| t22.format(t22.element(i)))
            .collect();
        assert_eq!(ks, vec!["(0,0)", "(1,1)"]);
    }

    #[test]
    fn enumeration_agrees_with_naive_scan() {
        for fam in BaseFamily::ALL {
            for k in 1..=2 {
                let fast: HashSet<Vec<AlgElement>> = enumerate_subalgebras(fam, k)
                    .unwrap()
                    .into_iter()
                    .map(|e| {
                        let mut u = e.algebra.universe().to_vec();
                        u.sort();
                        u
                    })
                    .collect();
                let slow: HashSet<Vec<AlgElement>> = enumerate_subalgebras_naive(fam, k)
                    .unwrap()
                    .into_iter()
                    .collect();
                assert_eq!(fast, slow, "{fam} k={k}");
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let two2 = enumerate_subalgebras(Two, 2).unwrap();
        let classes: Vec<String> = two2.iter().map(|e| e.class.to_string()).collect();
        assert_eq!(classes, vec!["T2,1", "T2,2"]);

        let four1 = enumerate_subalgebras(Four, 1).unwrap();
        let sizes: Vec<usize> = four1.iter().map(|e| e.algebra.size()).collect();
        assert_eq!(sizes, vec![2, 4]);

        let four2 = enumerate_subalgebras(Four, 2).unwrap();
        let classes: Vec<String> = four2.iter().map(|e| e.class.to_string()).collect();
        assert!(classes.contains(&"TW4,1".to_string()));
        assert!(classes.contains(&"T4,1".to_string()));
        assert!(classes.contains(&"T2,2".to_string()));
        let tw = four2
            .iter()
            .find(|e| e.class == SimpleClass::Twisted { d: 1 })
            .unwrap();
        assert_eq!(words(&tw.algebra), vec!["(0,0)", "(1,1)", "(a,b)", "(b,a)"]);
    }

    #[test]
    fn intersection_of_diagonals_is_gcd_diagonal() {
        for fam in BaseFamily::ALL {
            for k in [4usize, 6] {
                if fam.size().pow(k as u32) > DEFAULT_UNIVERSE_BUDGET {
                    continue;
                }
                let divs = crate::free::divisors(k);
                for &d1 in &divs {
                    for &d2 in &divs {
                        let a = CyclicAlgebra::diagonal(fam, k, d1).unwrap();
                        let b = CyclicAlgebra::diagonal(fam, k, d2).unwrap();
                        let g = CyclicAlgebra::diagonal(fam, k, num_integer::gcd(d1, d2)).unwrap();
                        let inter: HashSet<AlgElement> = a
                            .universe()
                            .iter()
                            .copied()
                            .filter(|x| b.contains(*x))
                            .collect();
                        let expect: HashSet<AlgElement> = g.universe().iter().copied().collect();
                        assert_eq!(inter, expect);
                    }
                }
            }
        }
    }

    #[test]
    fn parse_and_render() {
        let t43 = CyclicAlgebra::full(Three, 3).unwrap();
        let x = el(&t43, "(0, c,1)");
        assert_eq!(t43.format(x), "(0,c,1)");
        assert_eq!(t43.format(el(&t43, "c")), "(c,c,c)");
        assert!(t43.parse_element("(a,0,0)").is_err());
        assert!(t43.parse_element("(0,0)").is_err());
    }

    #[test]
    fn period_guards() {
        assert!(matches!(CyclicAlgebra::full(Two, 0), Err(Error::Usage(_))));
        assert!(matches!(
            CyclicAlgebra::full(Two, 17),
            Err(Error::Resource { .. })
        ));
        assert!(matches!(
            CyclicAlgebra::full(Four, 12),
            Err(Error::Resource { .. })
        ));
        assert!(matches!(
            enumerate_subalgebras(Two, 5),
            Err(Error::Resource { .. })
        ));
        // k > 8 takes the hash-set closure path
        let big = CyclicAlgebra::generated(Two, 10, &[AlgElement::from_bits(0b11)]).unwrap();
        assert_eq!(big.size(), 1 << 10);
    }
}
