//! Residuation ideals, relational congruences and quotients.

use std::collections::BTreeSet;
use std::fmt;

use crate::bitset::BitSet;
use crate::lang::FiniteMonoid;
use crate::order::{Poset, Quasiorder};

use super::dual::{is_functional, Functionality, TernaryRel};
use super::{check_sublattice, FiniteResAlg, ResAlgError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `b\c`
    Left,
    /// `c/b`
    Right,
}

/// A residual of a sub-family member that falls outside the sub-family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealWitness {
    pub divisor: BitSet,
    pub numerator: BitSet,
    pub side: Side,
    pub result: BitSet,
}

impl IdealWitness {
    pub fn describe(&self, c: &FiniteResAlg) -> String {
        let (b, n, r) = (c.describe(&self.divisor), c.describe(&self.numerator), c.describe(&self.result));
        match self.side {
            Side::Left => format!("{b}\\{n} = {r} is not in the sub-family"),
            Side::Right => format!("{n}/{b} = {r} is not in the sub-family"),
        }
    }
}

/// First `b\c` or `c/b` with `c` in `sub` and `b` in the carrier of `c_alg`
/// that leaves `sub`, checking `b\c` before `c/b` for each `b`.
///
/// Both residuals send unions in `b` to intersections and `sub` is closed
/// under intersection, so for a Boolean carrier only atoms `b` are tried.
pub fn residuation_ideal_witness(sub: &[BitSet], c_alg: &FiniteResAlg) -> Result<Option<IdealWitness>> {
    let n = c_alg.monoid_size();
    for q in sub {
        if !c_alg.contains(q) {
            return Err(ResAlgError::NotMember(c_alg.describe(q)));
        }
    }
    let set: BTreeSet<BitSet> = sub.iter().cloned().collect();
    check_sublattice(n, &set)?;
    let mon = c_alg.morphism().monoid();
    let divisors = if c_alg.is_boolean() { c_alg.atoms().to_vec() } else { c_alg.carrier()? };
    for q in &set {
        for b in &divisors {
            let left = mon.left_residual(b, q);
            if !set.contains(&left) {
                return Ok(Some(IdealWitness { divisor: b.clone(), numerator: q.clone(), side: Side::Left, result: left }));
            }
            let right = mon.right_residual(q, b);
            if !set.contains(&right) {
                return Ok(Some(IdealWitness { divisor: b.clone(), numerator: q.clone(), side: Side::Right, result: right }));
            }
        }
    }
    Ok(None)
}

pub fn is_residuation_ideal(sub: &[BitSet], c_alg: &FiniteResAlg) -> Result<bool> {
    Ok(residuation_ideal_witness(sub, c_alg)?.is_none())
}

/// `R(x, y, z)` holds and `x ⪯ x′`, `y ⪯ y′`, but no `z′ ⪰ z` has
/// `R(x′, y′, z′)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceWitness {
    pub tuple: [usize; 3],
    pub moved: [usize; 2],
}

impl fmt::Display for CongruenceWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.tuple;
        let [x2, y2] = self.moved;
        write!(f, "R({x}, {y}, {z}) holds but R({x2}, {y2}, z') fails for every z' above {z}")
    }
}

/// Checks that `q` extends the order of `r` and that raising the inputs
/// along `q` can always be matched by raising the output.
pub fn check_relational_congruence(q: &Quasiorder, r: &TernaryRel) -> Result<()> {
    if q.len() != r.points() || !q.extends(&r.order) {
        return Err(ResAlgError::NotExtending);
    }
    let k = r.points();
    for &[x, y, z] in &r.triples {
        for x2 in (0..k).filter(|&x2| q.related(x, x2)) {
            for y2 in (0..k).filter(|&y2| q.related(y, y2)) {
                if !(0..k).any(|z2| q.related(z, z2) && r.contains(x2, y2, z2)) {
                    return Err(ResAlgError::NotCongruence(CongruenceWitness { tuple: [x, y, z], moved: [x2, y2] }));
                }
            }
        }
    }
    Ok(())
}

pub fn is_relational_congruence(q: &Quasiorder, r: &TernaryRel) -> bool {
    check_relational_congruence(q, r).is_ok()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    /// Points of the quotient, each a `⪯ ∩ ⪰` block of original points.
    pub blocks: Vec<Vec<usize>>,
    pub relation: TernaryRel,
    /// Present when the quotient relation is functional and the extracted
    /// operation is a monoid with the block of `identity` as unit.
    pub monoid: Option<FiniteMonoid>,
}

/// `S([x], [y], [z])` when `x′ ⪯ x`, `y′ ⪯ y`, `R(x′, y′, z′)` and `z ⪯ z′`
/// for some `x′`, `y′`, `z′`. Requires a relational congruence;
/// `identity` names the point used as unit for the quotient monoid.
pub fn quotient(r: &TernaryRel, q: &Quasiorder, identity: Option<usize>) -> Result<Quotient> {
    check_relational_congruence(q, r)?;
    let blocks = q.blocks();
    let block_of = q.block_of();
    let b = blocks.len();
    let labels: Vec<String> = blocks
        .iter()
        .map(|blk| {
            let names: Vec<&str> = blk.iter().map(|&x| r.label(x)).collect();
            if names.len() == 1 {
                names[0].to_string()
            } else {
                format!("[{}]", names.join(" "))
            }
        })
        .collect();
    let order = Poset::new(
        labels.clone(),
        (0..b).map(|i| (0..b).map(|j| q.related(blocks[i][0], blocks[j][0])).collect()).collect(),
    )
    .expect("blocks of a quasiorder form a poset");
    let k = r.points();
    let mut triples = BTreeSet::new();
    for &[x2, y2, z2] in &r.triples {
        for x in (0..k).filter(|&x| q.related(x2, x)) {
            for y in (0..k).filter(|&y| q.related(y2, y)) {
                for z in (0..k).filter(|&z| q.related(z, z2)) {
                    triples.insert([block_of[x], block_of[y], block_of[z]]);
                }
            }
        }
    }
    let relation = TernaryRel { order, triples };
    let monoid = match (is_functional(&relation), identity) {
        (Functionality::Functional(table), Some(id)) => FiniteMonoid::new(labels, table, block_of[id]).ok(),
        _ => None,
    };
    Ok(Quotient { blocks, relation, monoid })
}

/// `h(c) = φ⁻¹(c)`: the Boolean map dual to a map of points `φ`.
pub fn dual_boolean_map(phi: &[usize], c: &BitSet) -> BitSet {
    BitSet::from_indices(phi.len(), (0..phi.len()).filter(|&x| c.contains(phi[x])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{syntactic_morphism, Alphabet, RegularLanguage};
    use crate::resalg::{dual_relation, extract_monoid, generate_boolean_subalgebra};

    fn s(v: &[usize]) -> BitSet {
        BitSet::from_indices(3, v.iter().copied())
    }

    fn full_z3() -> FiniteResAlg {
        let a = Alphabet::parse("a").unwrap();
        let eta = syntactic_morphism(&RegularLanguage::parse("(aaa)*", &a).unwrap());
        FiniteResAlg::from_partition(eta, vec![s(&[0]), s(&[1]), s(&[2])]).unwrap()
    }

    #[test]
    fn coarse_family_is_not_an_ideal() {
        let b = full_z3();
        let sub = [s(&[]), s(&[0]), s(&[1, 2]), s(&[0, 1, 2])];
        let w = residuation_ideal_witness(&sub, &b).unwrap().unwrap();
        assert_eq!(w, IdealWitness { divisor: s(&[1]), numerator: s(&[0]), side: Side::Left, result: s(&[2]) });
        assert_eq!(w.describe(&b), "{a}\\{1} = {aa} is not in the sub-family");
        assert!(is_residuation_ideal(&b.carrier().unwrap(), &b).unwrap());
        assert!(is_residuation_ideal(&[s(&[]), s(&[0, 1, 2])], &b).unwrap());
        assert!(matches!(is_residuation_ideal(&[s(&[0])], &b), Err(ResAlgError::NotSublattice(_))));
    }

    #[test]
    fn congruences_on_z3() {
        let r = dual_relation(&full_z3());
        assert!(is_relational_congruence(&Quasiorder::discrete(3), &r));
        assert!(is_relational_congruence(&Quasiorder::total(3), &r));
        // merging 1 and 2 only: 1+1 = 2 but 2+1 = 0
        let merge = Quasiorder::closure_of(3, &[(1, 2), (2, 1)]);
        assert!(matches!(check_relational_congruence(&merge, &r), Err(ResAlgError::NotCongruence(_))));
        let q = quotient(&r, &Quasiorder::total(3), Some(0)).unwrap();
        assert_eq!(q.blocks.len(), 1);
        assert_eq!(q.monoid.unwrap().len(), 1);
        let same = quotient(&r, &Quasiorder::discrete(3), Some(0)).unwrap();
        assert_eq!(same.relation.triples, r.triples);
    }

    #[test]
    fn merging_an_idempotent_with_zero() {
        let ab = Alphabet::parse("ab").unwrap();
        let l = |re: &str| RegularLanguage::parse(re, &ab).unwrap();
        let c = generate_boolean_subalgebra(&ab, &[l("a*"), l("b*")]).unwrap();
        let r = dual_relation(&c);
        // atoms: 0 = {1}, 1 = a+, 2 = b+, 3 = zero
        let merge = Quasiorder::closure_of(4, &[(1, 3), (3, 1)]);
        let q = quotient(&r, &merge, Some(0)).unwrap();
        let m = q.monoid.expect("functional quotient");
        assert_eq!(m.len(), 3);
        let e = extract_monoid(&c).unwrap().monoid;
        let block_of = merge.block_of();
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(m.mul(block_of[x], block_of[y]), block_of[e.mul(x, y)]);
            }
        }
    }

    #[test]
    fn dual_map_is_preimage() {
        let h = dual_boolean_map(&[0, 1, 1], &BitSet::singleton(2, 1));
        assert_eq!(h.to_vec(), vec![1, 2]);
    }
}
