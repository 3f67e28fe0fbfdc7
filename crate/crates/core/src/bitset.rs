//! Fixed-universe bit sets.
//!
//! Every subset in this crate (down-sets of a poset, subsets of a monoid,
//! atoms of an algebra) is a `BitSet` over a universe `0..n`. Two sets are
//! only compared or combined when they share the same universe.
//!
//! The total order is the numeric order of the encoding (element `i`
//! contributes `2^i`), which is the canonical order used when printing
//! families of subsets.

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    universe: usize,
    words: Vec<u64>,
}

fn word_count(universe: usize) -> usize {
    universe.div_ceil(64)
}

impl BitSet {
    pub fn empty(universe: usize) -> Self {
        BitSet {
            universe,
            words: vec![0; word_count(universe)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for i in 0..universe {
            s.insert(i);
        }
        s
    }

    pub fn singleton(universe: usize, i: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(i);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, items: I) -> Self {
        let mut s = Self::empty(universe);
        for i in items {
            s.insert(i);
        }
        s
    }

    /// Subset encoded by the low `universe` bits of `mask`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        assert!(universe <= 64, "mask constructor limited to 64 elements");
        let mut s = Self::empty(universe);
        if universe > 0 {
            let keep = if universe == 64 { u64::MAX } else { (1u64 << universe) - 1 };
            s.words[0] = mask & keep;
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe, "element {i} outside universe {}", self.universe);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        if i < self.universe {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.universe
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(move |&i| self.contains(i))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn union(&self, other: &BitSet) -> BitSet {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &BitSet) -> BitSet {
        self.zip(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &BitSet) -> BitSet {
        self.zip(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> BitSet {
        let mut s = BitSet::full(self.universe);
        for (w, &x) in s.words.iter_mut().zip(&self.words) {
            *w &= !x;
        }
        s
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &BitSet) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersects(&self, other: &BitSet) -> bool {
        !self.is_disjoint(other)
    }

    /// Low 64 bits of the encoding; exact when `universe <= 64`.
    pub fn mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    fn zip(&self, other: &BitSet, f: impl Fn(u64, u64) -> u64) -> BitSet {
        self.check_universe(other);
        BitSet {
            universe: self.universe,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    fn check_universe(&self, other: &BitSet) {
        debug_assert_eq!(self.universe, other.universe, "bit sets over different universes");
    }
}

impl Ord for BitSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.universe
            .cmp(&other.universe)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for BitSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// All subsets of `0..universe`, in numeric order. Panics past 30 elements.
pub fn all_subsets(universe: usize) -> impl Iterator<Item = BitSet> {
    assert!(universe <= 30, "refusing to enumerate 2^{universe} subsets");
    (0u64..(1u64 << universe)).map(move |m| BitSet::from_mask(universe, m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_ops() {
        let a = BitSet::from_indices(5, [0, 2]);
        let b = BitSet::from_indices(5, [2, 3]);
        assert_eq!(a.union(&b).to_vec(), vec![0, 2, 3]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2]);
        assert_eq!(a.complement().to_vec(), vec![1, 3, 4]);
        assert!(BitSet::from_indices(5, [2]).is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(BitSet::empty(0).complement(), BitSet::empty(0));
    }

    #[test]
    fn numeric_order() {
        let s0 = BitSet::from_indices(3, [0]);
        let s01 = BitSet::from_indices(3, [0, 1]);
        let s2 = BitSet::from_indices(3, [2]);
        assert!(s0 < s01 && s01 < s2);
    }

    #[test]
    fn wide_universe() {
        let mut a = BitSet::empty(130);
        a.insert(129);
        a.insert(3);
        assert_eq!(a.len(), 2);
        assert_eq!(a.complement().len(), 128);
        assert!(BitSet::singleton(130, 3) < a);
    }

    proptest! {
        #[test]
        fn de_morgan(x in 0u64..256, y in 0u64..256) {
            let a = BitSet::from_mask(8, x);
            let b = BitSet::from_mask(8, y);
            prop_assert_eq!(a.union(&b).complement(), a.complement().intersection(&b.complement()));
            prop_assert_eq!(a.cmp(&b), x.cmp(&y));
        }
    }
}
