//! Galois connection between families of down-sets and relations on points.
//!
//! An element `a` (a down-set) and a pair `(x, y)` are related when
//! `y ∈ a ⇒ x ∈ a`. Closing a family gives the quasiorder `≼_S`; closing a
//! set of pairs gives the bounded sublattice `A_E`.

use crate::bitset::BitSet;

use super::{DownsetLattice, Quasiorder};

/// `x ≼ y ⟺ ∀a ∈ family (y ∈ a ⇒ x ∈ a)`.
pub fn theory_of_family<'a>(points: usize, family: impl IntoIterator<Item = &'a BitSet>) -> Quasiorder {
    let mut rel = vec![vec![true; points]; points];
    for a in family {
        for y in a.iter() {
            for (x, row) in rel.iter_mut().enumerate() {
                if !a.contains(x) {
                    row[y] = false;
                }
            }
        }
    }
    Quasiorder::new(rel).expect("intersection of quasiorders")
}

/// Members `a` of `candidates` with `y ∈ a ⇒ x ∈ a` for every `(x, y)`.
pub fn models_of_pairs(candidates: &[BitSet], pairs: &[(usize, usize)]) -> Vec<BitSet> {
    candidates
        .iter()
        .filter(|a| pairs.iter().all(|&(x, y)| !a.contains(y) || a.contains(x)))
        .cloned()
        .collect()
}

/// Contains `∅` and the full set and is closed under `∪` and `∩`.
pub fn is_bounded_sublattice(universe: usize, family: &[BitSet]) -> bool {
    let has = |s: &BitSet| family.contains(s);
    has(&BitSet::empty(universe))
        && has(&BitSet::full(universe))
        && family
            .iter()
            .all(|a| family.iter().all(|b| has(&a.union(b)) && has(&a.intersection(b))))
}

impl DownsetLattice {
    /// `≼_S` for a set of lattice element indices.
    pub fn quasiorder_of_subset(&self, subset: &[usize]) -> Quasiorder {
        theory_of_family(self.poset.len(), subset.iter().map(|&i| &self.downsets[i]))
    }

    /// `A_E` as lattice element indices.
    pub fn subalgebra_of_relation(&self, pairs: &[(usize, usize)]) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| {
                let a = &self.downsets[i];
                pairs.iter().all(|&(x, y)| !a.contains(y) || a.contains(x))
            })
            .collect()
    }

    /// Compatibility of a quasiorder: whenever `x ⋠ y` some lattice element
    /// that is a `≼`-down-set contains `y` but not `x`. Always true for a
    /// quasiorder extending the order of a finite poset, since `{z | z ≼ y}`
    /// is such an element.
    pub fn is_compatible(&self, q: &Quasiorder) -> bool {
        let n = self.poset.len();
        q.extends(&self.poset)
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    q.related(x, y)
                        || self
                            .downsets
                            .iter()
                            .any(|a| a.contains(y) && !a.contains(x) && q.is_downset(a))
                })
            })
    }
}
