//! Birkhoff duality between finite distributive lattices and finite posets.

use crate::bitset::BitSet;

use super::{FinLattice, OrderError, Poset, Result};

/// The join-irreducible elements of a lattice with their induced order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JoinIrreducibles {
    pub poset: Poset,
    /// `elements[k]` is the lattice index of the `k`-th point of `poset`.
    pub elements: Vec<usize>,
}

/// Lattice indices `p != 0` such that `p = a ∨ b` forces `p ∈ {a, b}`.
/// Scans every decomposition; no distributivity is assumed.
pub(crate) fn join_irreducible_indices(l: &FinLattice) -> Vec<usize> {
    let n = l.len();
    (0..n)
        .filter(|&p| p != l.bottom())
        .filter(|&p| {
            (0..n).all(|a| (0..n).all(|b| l.join(a, b) != p || a == p || b == p))
        })
        .collect()
}

fn poset_on(l: &FinLattice, elements: &[usize]) -> Poset {
    let labels = elements.iter().map(|&e| l.labels()[e].clone()).collect();
    let leq = elements
        .iter()
        .map(|&a| elements.iter().map(|&b| l.leq(a, b)).collect())
        .collect();
    Poset::new(labels, leq).expect("restriction of a partial order is a partial order")
}

pub fn join_irreducibles(l: &FinLattice) -> Result<JoinIrreducibles> {
    if !l.is_distributive() {
        let n = l.len();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if l.meet(a, l.join(b, c)) != l.join(l.meet(a, b), l.meet(a, c)) {
                        return Err(OrderError::NotDistributive(a, b, c));
                    }
                }
            }
        }
    }
    let elements = join_irreducible_indices(l);
    Ok(JoinIrreducibles { poset: poset_on(l, &elements), elements })
}

/// The lattice of down-sets of a poset, keeping the down-sets themselves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DownsetLattice {
    pub poset: Poset,
    /// Element `i` of `lattice` is the down-set `downsets[i]`.
    pub downsets: Vec<BitSet>,
    pub lattice: FinLattice,
}

impl DownsetLattice {
    pub fn index_of(&self, d: &BitSet) -> Option<usize> {
        self.downsets.binary_search(d).ok()
    }

    pub fn len(&self) -> usize {
        self.downsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.downsets.is_empty()
    }
}

fn set_label(p: &Poset, s: &BitSet) -> String {
    let names: Vec<&str> = s.iter().map(|i| p.labels()[i].as_str()).collect();
    format!("{{{}}}", names.join(","))
}

pub fn downset_lattice(p: &Poset) -> DownsetLattice {
    let downsets = p.downsets();
    let labels = downsets.iter().map(|d| set_label(p, d)).collect();
    let lattice = FinLattice::of_sets(labels, &downsets, true)
        .expect("down-sets form a distributive lattice under inclusion");
    DownsetLattice { poset: p.clone(), downsets, lattice }
}

/// `a ↦ ↓a ∩ J(L)`, verified to be a lattice isomorphism.
#[derive(Debug, Clone)]
pub struct BirkhoffIso {
    pub irreducibles: JoinIrreducibles,
    pub target: DownsetLattice,
    /// `map[a]` is the index in `target` of the image of lattice element `a`.
    pub map: Vec<usize>,
}

pub fn birkhoff_iso(l: &FinLattice) -> Result<BirkhoffIso> {
    let elements = join_irreducible_indices(l);
    let irreducibles = JoinIrreducibles { poset: poset_on(l, &elements), elements };
    let target = downset_lattice(&irreducibles.poset);
    let k = irreducibles.elements.len();
    let images: Vec<BitSet> = (0..l.len())
        .map(|a| {
            BitSet::from_indices(k, (0..k).filter(|&i| l.leq(irreducibles.elements[i], a)))
        })
        .collect();
    let mut map = Vec::with_capacity(l.len());
    for img in &images {
        let idx = target
            .index_of(img)
            .expect("↓a ∩ J(L) is always a down-set of J(L)");
        map.push(idx);
    }
    let n = l.len();
    for a in 0..n {
        for b in (a + 1)..n {
            if map[a] == map[b] {
                return Err(OrderError::Birkhoff(format!(
                    "not injective: {} and {} both map to {}",
                    l.labels()[a],
                    l.labels()[b],
                    target.lattice.labels()[map[a]]
                )));
            }
        }
    }
    if let Some(missed) = (0..target.len()).find(|t| !map.contains(t)) {
        return Err(OrderError::Birkhoff(format!(
            "not surjective: down-set {} is not hit",
            target.lattice.labels()[missed]
        )));
    }
    for a in 0..n {
        for b in 0..n {
            if l.leq(a, b) != images[a].is_subset(&images[b]) {
                return Err(OrderError::Birkhoff(format!(
                    "order not reflected at ({}, {})",
                    l.labels()[a],
                    l.labels()[b]
                )));
            }
        }
    }
    Ok(BirkhoffIso { irreducibles, target, map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::iso::poset_isomorphism;

    fn boolean(n: usize) -> FinLattice {
        downset_lattice(&Poset::antichain(n)).lattice
    }

    // independent brute force: p is join-irreducible iff it is not bottom and
    // not the join of two strictly smaller elements
    fn brute_irreducibles(l: &FinLattice) -> Vec<usize> {
        (0..l.len())
            .filter(|&p| p != l.bottom())
            .filter(|&p| {
                let below: Vec<usize> = (0..l.len()).filter(|&x| x != p && l.leq(x, p)).collect();
                !below.iter().any(|&a| below.iter().any(|&b| l.join(a, b) == p))
            })
            .collect()
    }

    #[test]
    fn atoms_of_boolean_lattices() {
        let j = join_irreducibles(&boolean(2)).unwrap();
        assert_eq!(j.elements.len(), 2);
        assert!(!j.poset.leq(0, 1) && !j.poset.leq(1, 0));
        let j3 = join_irreducibles(&boolean(3)).unwrap();
        assert!(poset_isomorphism(&j3.poset, &Poset::antichain(3)).is_some());
    }

    #[test]
    fn three_chain() {
        let l = FinLattice::new(
            vec!["0".into(), "a".into(), "1".into()],
            vec![vec![true, true, true], vec![false, true, true], vec![false, false, true]],
            true,
        )
        .unwrap();
        let j = join_irreducibles(&l).unwrap();
        assert_eq!(j.elements, brute_irreducibles(&l));
        assert_eq!(j.elements, vec![1, 2]);
        assert!(j.poset.leq(0, 1) && !j.poset.leq(1, 0));
        let iso = birkhoff_iso(&l).unwrap();
        let lbl = |a: usize| iso.target.lattice.labels()[iso.map[a]].clone();
        assert_eq!(lbl(1), "{a}");
        assert_eq!(lbl(2), "{a,1}");
        assert_eq!(lbl(0), "{}");
    }

    #[test]
    fn downset_lattice_sizes() {
        assert_eq!(downset_lattice(&Poset::antichain(0)).len(), 1);
        assert_eq!(downset_lattice(&Poset::antichain(2)).len(), 4);
        let c = downset_lattice(&Poset::chain(2));
        // brute force: subsets of {0,1} that are down-closed in 0 < 1
        let brute: Vec<u64> = (0u64..4).filter(|m| m & 2 == 0 || m & 1 == 1).collect();
        assert_eq!(c.len(), brute.len());
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn boolean_square_map() {
        let l = boolean(2);
        let iso = birkhoff_iso(&l).unwrap();
        let top = iso.map[l.top()];
        assert_eq!(iso.target.downsets[top].len(), 2);
        for a in 0..l.len() {
            if iso.irreducibles.elements.contains(&a) {
                assert_eq!(iso.target.downsets[iso.map[a]].len(), 1);
            }
        }
    }

    #[test]
    fn diamond_fails_surjectivity() {
        // M3: 0 < a, b, c < 1
        let up = [vec![0, 1, 2, 3, 4], vec![1, 4], vec![2, 4], vec![3, 4], vec![4]];
        let leq = (0..5).map(|i| (0..5).map(|j| up[i].contains(&j)).collect()).collect();
        let l = FinLattice::new((0..5).map(|i| i.to_string()).collect(), leq, false).unwrap();
        let err = birkhoff_iso(&l).unwrap_err();
        assert!(matches!(&err, OrderError::Birkhoff(m) if m.contains("not surjective")), "{err}");
        assert!(matches!(join_irreducibles(&l), Err(OrderError::NotDistributive(..))));
    }

    #[test]
    fn irreducibles_match_brute_force_on_downset_lattices() {
        for n in 0..=4 {
            for p in crate::order::iso::all_posets(n) {
                let l = downset_lattice(&p).lattice;
                assert_eq!(join_irreducible_indices(&l), brute_irreducibles(&l));
            }
        }
    }
}
