//! Dual spaces, the ternary relation of concatenation, and the monoid it
//! defines when functional.

use std::collections::BTreeSet;

use crate::bitset::BitSet;
use crate::lang::FiniteMonoid;
use crate::order::{self, theory_of_family, OrderRelation, Poset};

use super::{FiniteResAlg, ResAlgError, Result};

/// Points are the atoms of the Boolean closure. The order is discrete for
/// a Boolean carrier and otherwise `x ≤ y` when every member containing
/// `y` contains `x`; members are then exactly the down-sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSpace {
    pub points: Vec<BitSet>,
    pub order: Poset,
}

pub fn dual_space(c: &FiniteResAlg) -> DualSpace {
    let k = c.atom_count();
    let labels: Vec<String> = c.atoms().iter().map(|a| c.describe(a)).collect();
    let q = match c.lattice_members() {
        None => order::Quasiorder::discrete(k),
        Some(members) => theory_of_family(k, members.iter()),
    };
    let order = Poset::new(labels, q.matrix().to_vec()).expect("members separate the atoms");
    DualSpace { points: c.atoms().to_vec(), order }
}

/// A ternary relation `R(x, y, z)` on the points of an ordered space; `z`
/// is the output coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryRel {
    pub order: Poset,
    pub triples: BTreeSet<[usize; 3]>,
}

impl TernaryRel {
    pub fn points(&self) -> usize {
        self.order.len()
    }

    pub fn contains(&self, x: usize, y: usize, z: usize) -> bool {
        self.triples.contains(&[x, y, z])
    }

    /// `{z | R(x, y, z)}` in increasing order.
    pub fn outputs(&self, x: usize, y: usize) -> Vec<usize> {
        self.triples.range([x, y, 0]..=[x, y, usize::MAX]).map(|t| t[2]).collect()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.order.labels()[x]
    }

    pub fn to_order_relation(&self) -> OrderRelation {
        OrderRelation::new(self.order.clone(), 2, self.triples.iter().map(|t| t.to_vec())).expect("indices in range")
    }

    pub fn check_order_compatible(&self) -> order::Result<()> {
        self.to_order_relation().check_order_compatible()
    }
}

/// Smallest member containing `atoms` (atom indices), as atom indices.
fn hull(c: &FiniteResAlg, atoms: &BitSet) -> BitSet {
    match c.lattice_members() {
        None => atoms.clone(),
        Some(members) => members
            .iter()
            .filter(|m| atoms.is_subset(m))
            .fold(BitSet::full(c.atom_count()), |acc, m| acc.intersection(m)),
    }
}

/// `R(x, y, z)` when `z` lies in the smallest member containing the
/// product of the smallest members containing `x` and `y`, i.e. when every
/// member `c` with `↓x·↓y ⊆ c` contains `z`. For a Boolean carrier `↓x = x`.
pub fn dual_relation(c: &FiniteResAlg) -> TernaryRel {
    let k = c.atom_count();
    let mon = c.morphism().monoid();
    let down: Vec<BitSet> = (0..k).map(|x| c.union_of_atoms(&hull(c, &BitSet::singleton(k, x)))).collect();
    let mut triples = BTreeSet::new();
    for x in 0..k {
        for y in 0..k {
            let product = mon.set_product(&down[x], &down[y]);
            let mut touched = BitSet::empty(k);
            for m in product.iter() {
                touched.insert(c.atom_containing(m));
            }
            for z in hull(c, &touched).iter() {
                triples.insert([x, y, z]);
            }
        }
    }
    TernaryRel { order: dual_space(c).order, triples }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Functionality {
    /// `table[x][y]` is the largest output, below which all outputs lie.
    Functional(Vec<Vec<usize>>),
    NotFunctional { x: usize, y: usize, maximal: Vec<usize> },
}

impl Functionality {
    pub fn is_functional(&self) -> bool {
        matches!(self, Functionality::Functional(_))
    }

    pub fn table(&self) -> Option<&[Vec<usize>]> {
        match self {
            Functionality::Functional(t) => Some(t),
            Functionality::NotFunctional { .. } => None,
        }
    }
}

/// Functional means each `{z | R(x, y, z)}` is the down-set of a single
/// point; in the discrete case, exactly one output.
pub fn is_functional(r: &TernaryRel) -> Functionality {
    let k = r.points();
    let mut table = vec![vec![0; k]; k];
    for x in 0..k {
        for y in 0..k {
            let outs = r.outputs(x, y);
            let maximal: Vec<usize> =
                outs.iter().copied().filter(|&z| !outs.iter().any(|&w| w != z && r.order.leq(z, w))).collect();
            let principal = maximal.len() == 1 && outs.iter().all(|&z| r.order.leq(z, maximal[0]));
            let exact = principal && (0..k).all(|z| !r.order.leq(z, maximal[0]) || outs.contains(&z));
            if !exact {
                return Functionality::NotFunctional { x, y, maximal };
            }
            table[x][y] = maximal[0];
        }
    }
    Functionality::Functional(table)
}

/// Whether `{c | x·y ⊆ c}` is the principal filter of an atom for every
/// pair of atoms. Decided through residuals, independently of
/// [`dual_relation`]: `x·y ⊆ c ⟺ y ⊆ x\c`, and an up-closed family `F` in
/// a finite Boolean algebra is `↑z` exactly when `z ∈ F` and `M∖z ∉ F`.
pub fn preserves_joins_at_primes(c: &FiniteResAlg) -> Result<bool> {
    if !c.is_boolean() {
        return Err(ResAlgError::NotBoolean);
    }
    let mon = c.morphism().monoid();
    let in_filter = |x: &BitSet, y: &BitSet, q: &BitSet| y.is_subset(&mon.left_residual(x, q));
    Ok(c.atoms().iter().all(|x| {
        c.atoms()
            .iter()
            .all(|y| c.atoms().iter().any(|z| in_filter(x, y, z) && !in_filter(x, y, &z.complement())))
    }))
}

/// The monoid carried by the atoms of a Boolean algebra whose dual
/// relation is functional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractedMonoid {
    pub monoid: FiniteMonoid,
    /// `projection[m]` is the atom containing element `m`.
    pub projection: Vec<usize>,
}

pub fn extract_monoid(c: &FiniteResAlg) -> Result<ExtractedMonoid> {
    if !c.is_boolean() {
        return Err(ResAlgError::NotBoolean);
    }
    let r = dual_relation(c);
    let table = match is_functional(&r) {
        Functionality::Functional(t) => t,
        Functionality::NotFunctional { x, y, maximal } => {
            return Err(ResAlgError::NotFunctional { x, y, outputs: maximal })
        }
    };
    let identity = c.atom_containing(c.morphism().monoid().identity());
    let labels = r.order.labels().to_vec();
    let monoid = FiniteMonoid::new(labels, table, identity).map_err(|e| ResAlgError::MonoidLaw(e.to_string()))?;
    let projection = (0..c.monoid_size()).map(|m| c.atom_containing(m)).collect();
    Ok(ExtractedMonoid { monoid, projection })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{syntactic_morphism, Alphabet, RegularLanguage};
    use crate::resalg::generate_boolean_subalgebra;

    fn z3() -> crate::lang::RecognizingMorphism {
        let a = Alphabet::parse("a").unwrap();
        syntactic_morphism(&RegularLanguage::parse("(aaa)*", &a).unwrap())
    }

    fn s(v: &[usize]) -> BitSet {
        BitSet::from_indices(3, v.iter().copied())
    }

    #[test]
    fn trivial_algebra() {
        let ab = Alphabet::parse("ab").unwrap();
        let c = generate_boolean_subalgebra(&ab, &[]).unwrap();
        let r = dual_relation(&c);
        assert_eq!(r.triples.len(), 1);
        assert!(is_functional(&r).is_functional());
        assert!(preserves_joins_at_primes(&c).unwrap());
        assert_eq!(extract_monoid(&c).unwrap().monoid.len(), 1);
    }

    #[test]
    fn coarse_mod_three_relation() {
        let c = FiniteResAlg::from_partition(z3(), vec![s(&[0]), s(&[1, 2])]).unwrap();
        let r = dual_relation(&c);
        // atoms: 0 = L0, 1 = complement of L0
        let expected: BTreeSet<[usize; 3]> = [[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0], [1, 1, 1]].into_iter().collect();
        assert_eq!(r.triples, expected);
        assert_eq!(is_functional(&r), Functionality::NotFunctional { x: 1, y: 1, maximal: vec![0, 1] });
        assert!(!preserves_joins_at_primes(&c).unwrap());
        assert!(matches!(extract_monoid(&c), Err(ResAlgError::NotFunctional { x: 1, y: 1, .. })));
        assert!(r.check_order_compatible().is_ok());
    }

    #[test]
    fn full_mod_three_is_the_group() {
        let c = FiniteResAlg::from_partition(z3(), vec![s(&[0]), s(&[1]), s(&[2])]).unwrap();
        assert!(preserves_joins_at_primes(&c).unwrap());
        let e = extract_monoid(&c).unwrap();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(e.monoid.mul(x, y), (x + y) % 3);
            }
        }
    }

    #[test]
    fn lattice_dual_is_ordered() {
        // the chain ∅ ⊂ L0 ⊂ M: point L0 lies below its complement
        let c = FiniteResAlg::from_family(z3(), &[s(&[]), s(&[0]), s(&[0, 1, 2])]).unwrap();
        let d = dual_space(&c);
        assert!(d.order.leq(0, 1) && !d.order.leq(1, 0));
        let r = dual_relation(&c);
        assert!(r.check_order_compatible().is_ok());
        assert!(matches!(preserves_joins_at_primes(&c), Err(ResAlgError::NotBoolean)));
    }
}
