//! Finite residuation algebras of recognizable languages.
//!
//! Every algebra sits inside a surjective [`RecognizingMorphism`]
//! `η: A* → M`; a subset `Q ⊆ M` stands for the language `η⁻¹(Q)`. Because
//! `η` is onto, language operations (Boolean operations, residuals by any
//! recognizable language) become operations on subsets of `M`.
//!
//! The carrier is described by its atoms, a partition of `M`. A Boolean
//! algebra contains every union of atoms; a lattice keeps an explicit list
//! of members (as sets of atom indices) and its atoms are those of its
//! Boolean closure.

mod congruence;
mod dual;
pub mod io;

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::bitset::BitSet;
use crate::config;
use crate::lang::{product_of, syntactic_morphism, Alphabet, LangError, RecognizingMorphism, RegularLanguage};

pub use congruence::{
    check_relational_congruence, dual_boolean_map, is_relational_congruence, is_residuation_ideal, quotient, residuation_ideal_witness,
    CongruenceWitness, IdealWitness, Quotient, Side,
};
pub use dual::{
    dual_relation, dual_space, extract_monoid, is_functional, preserves_joins_at_primes, DualSpace, ExtractedMonoid,
    Functionality, TernaryRel,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResAlgError {
    #[error(transparent)]
    Lang(#[from] LangError),
    #[error("{0} is not a member of the carrier")]
    NotMember(String),
    #[error("not a bounded sublattice: {0}")]
    NotSublattice(String),
    #[error("atoms do not partition the monoid: {0}")]
    NotPartition(String),
    #[error("the morphism is not surjective")]
    NotSurjective,
    #[error("the carrier is not closed under complement")]
    NotBoolean,
    #[error("relation is not functional at ({x}, {y}): maximal outputs {outputs:?}")]
    NotFunctional { x: usize, y: usize, outputs: Vec<usize> },
    #[error("extracted operation breaks a monoid law: {0}")]
    MonoidLaw(String),
    #[error("not a relational congruence: {0}")]
    NotCongruence(CongruenceWitness),
    #[error("quasiorder does not extend the order of the dual space")]
    NotExtending,
    #[error("{atoms} atoms exceed the limit of {limit}")]
    TooLarge { atoms: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, ResAlgError>;

/// A bounded sublattice of `P(M)` for a surjective morphism onto `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteResAlg {
    morphism: RecognizingMorphism,
    atoms: Vec<BitSet>,
    atom_of: Vec<usize>,
    /// Members as sets of atom indices; `None` for all unions of atoms.
    lattice: Option<Vec<BitSet>>,
}

fn sorted_partition(blocks: impl IntoIterator<Item = BitSet>) -> Vec<BitSet> {
    let mut v: Vec<BitSet> = blocks.into_iter().filter(|b| !b.is_empty()).collect();
    v.sort();
    v
}

/// Classes of elements agreeing on membership in every set of `family`.
fn separation_classes(n: usize, family: &[BitSet]) -> Vec<BitSet> {
    let mut by_profile: HashMap<Vec<bool>, BitSet> = HashMap::new();
    for m in 0..n {
        let profile: Vec<bool> = family.iter().map(|s| s.contains(m)).collect();
        by_profile.entry(profile).or_insert_with(|| BitSet::empty(n)).insert(m);
    }
    sorted_partition(by_profile.into_values())
}

impl FiniteResAlg {
    fn build(morphism: RecognizingMorphism, atoms: Vec<BitSet>, lattice: Option<Vec<BitSet>>) -> Self {
        let mut atom_of = vec![0; morphism.monoid().len()];
        for (i, a) in atoms.iter().enumerate() {
            for m in a.iter() {
                atom_of[m] = i;
            }
        }
        FiniteResAlg { morphism, atoms, atom_of, lattice }
    }

    /// The Boolean algebra whose atoms are the given blocks.
    pub fn from_partition(morphism: RecognizingMorphism, blocks: Vec<BitSet>) -> Result<Self> {
        if !morphism.is_surjective() {
            return Err(ResAlgError::NotSurjective);
        }
        let n = morphism.monoid().len();
        let mut seen = BitSet::empty(n);
        for b in &blocks {
            if b.universe() != n {
                return Err(ResAlgError::NotPartition(format!("block {b} has the wrong universe")));
            }
            if b.intersects(&seen) {
                return Err(ResAlgError::NotPartition(format!("block {b} overlaps another block")));
            }
            seen = seen.union(b);
        }
        if !seen.is_full() {
            return Err(ResAlgError::NotPartition(format!("{} is not covered", seen.complement())));
        }
        Ok(FiniteResAlg::build(morphism, sorted_partition(blocks), None))
    }

    /// The sublattice with the listed members. Members must include `∅`
    /// and `M` and be closed under union and intersection; a
    /// complement-closed family becomes a Boolean algebra.
    pub fn from_family(morphism: RecognizingMorphism, members: &[BitSet]) -> Result<Self> {
        if !morphism.is_surjective() {
            return Err(ResAlgError::NotSurjective);
        }
        let n = morphism.monoid().len();
        if let Some(b) = members.iter().find(|b| b.universe() != n) {
            return Err(ResAlgError::NotSublattice(format!("{b} has the wrong universe")));
        }
        let set: BTreeSet<BitSet> = members.iter().cloned().collect();
        check_sublattice(n, &set)?;
        let atoms = separation_classes(n, members);
        let alg = FiniteResAlg::build(morphism, atoms, None);
        let boolean = set.iter().all(|m| set.contains(&m.complement()));
        if boolean {
            return Ok(alg);
        }
        let lattice = set.iter().map(|m| alg.atoms_of(m).expect("member is a union of classes")).collect();
        Ok(FiniteResAlg { lattice: Some(lattice), ..alg })
    }

    pub fn morphism(&self) -> &RecognizingMorphism {
        &self.morphism
    }

    pub fn monoid_size(&self) -> usize {
        self.morphism.monoid().len()
    }

    /// Atoms of the Boolean closure, sorted by their bit encoding.
    pub fn atoms(&self) -> &[BitSet] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    /// Index of the atom containing element `m`.
    pub fn atom_containing(&self, m: usize) -> usize {
        self.atom_of[m]
    }

    pub fn is_boolean(&self) -> bool {
        self.lattice.is_none()
    }

    pub fn boolean_closure(&self) -> FiniteResAlg {
        FiniteResAlg { lattice: None, ..self.clone() }
    }

    /// Members as atom-index sets, when the carrier is not all unions.
    pub fn lattice_members(&self) -> Option<&[BitSet]> {
        self.lattice.as_deref()
    }

    /// Splits `q` into atoms; `None` if it is not a union of atoms.
    pub fn atoms_of(&self, q: &BitSet) -> Option<BitSet> {
        let mut out = BitSet::empty(self.atoms.len());
        for m in q.iter() {
            out.insert(self.atom_of[m]);
        }
        (self.union_of_atoms(&out) == *q).then_some(out)
    }

    pub fn union_of_atoms(&self, atom_set: &BitSet) -> BitSet {
        let mut out = BitSet::empty(self.monoid_size());
        for i in atom_set.iter() {
            out = out.union(&self.atoms[i]);
        }
        out
    }

    pub fn contains(&self, q: &BitSet) -> bool {
        if q.universe() != self.monoid_size() {
            return false;
        }
        match (self.atoms_of(q), &self.lattice) {
            (None, _) => false,
            (Some(_), None) => true,
            (Some(a), Some(members)) => members.contains(&a),
        }
    }

    /// Every member, as subsets of `M` in bit order. Exponential in the
    /// number of atoms, hence bounded.
    pub fn carrier(&self) -> Result<Vec<BitSet>> {
        let mut out: Vec<BitSet> = match &self.lattice {
            Some(members) => members.iter().map(|a| self.union_of_atoms(a)).collect(),
            None => {
                let k = self.atoms.len();
                let limit = config::enumeration_limit();
                if k > limit {
                    return Err(ResAlgError::TooLarge { atoms: k, limit });
                }
                crate::bitset::all_subsets(k).map(|a| self.union_of_atoms(&a)).collect()
            }
        };
        out.sort();
        Ok(out)
    }

    pub fn carrier_size(&self) -> u128 {
        match &self.lattice {
            Some(m) => m.len() as u128,
            None => 1u128.checked_shl(self.atoms.len() as u32).unwrap_or(u128::MAX),
        }
    }

    pub fn language_of(&self, q: &BitSet) -> RegularLanguage {
        self.morphism.preimage(q)
    }

    /// `η(L)` when `L` is recognized by this algebra's morphism.
    pub fn saturated_image(&self, l: &RegularLanguage) -> Result<BitSet> {
        let img = crate::lang::image(&self.morphism, l)?;
        if self.morphism.preimage(&img) == *l {
            Ok(img)
        } else {
            Err(ResAlgError::NotMember(format!("{l} (not recognized by the morphism)")))
        }
    }

    /// Labels of the elements of `q`, like `{1,ab}`.
    pub fn describe(&self, q: &BitSet) -> String {
        let m = self.morphism.monoid();
        let names: Vec<&str> = q.iter().map(|x| m.label(x)).collect();
        format!("{{{}}}", names.join(","))
    }

    fn require_member(&self, q: &BitSet) -> Result<()> {
        if self.contains(q) {
            Ok(())
        } else {
            Err(ResAlgError::NotMember(self.describe(q)))
        }
    }

    /// `(a\c, c/a)` for members `a`, `c`.
    pub fn residuals_in(&self, a: &BitSet, c: &BitSet) -> Result<(BitSet, BitSet)> {
        self.require_member(a)?;
        self.require_member(c)?;
        let m = self.morphism.monoid();
        Ok((m.left_residual(a, c), m.right_residual(c, a)))
    }

    /// Closed under `b\c` and `c/b` for members `b`, `c`. Since both
    /// residuals turn unions in `b` into intersections, it suffices to let
    /// `b` range over join-irreducible members when the carrier is Boolean.
    pub fn is_residuation_closed(&self) -> Result<bool> {
        let carrier = self.carrier()?;
        let m = self.morphism.monoid();
        let divisors: Vec<BitSet> = if self.is_boolean() { self.atoms.clone() } else { carrier.clone() };
        for c in &carrier {
            for b in &divisors {
                if !self.contains(&m.left_residual(b, c)) || !self.contains(&m.right_residual(c, b)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn check_sublattice(n: usize, set: &BTreeSet<BitSet>) -> Result<()> {
    if !set.contains(&BitSet::empty(n)) {
        return Err(ResAlgError::NotSublattice("∅ is missing".into()));
    }
    if !set.contains(&BitSet::full(n)) {
        return Err(ResAlgError::NotSublattice("the whole monoid is missing".into()));
    }
    for a in set {
        for b in set {
            if !set.contains(&a.union(b)) {
                return Err(ResAlgError::NotSublattice(format!("{a} ∪ {b} is missing")));
            }
            if !set.contains(&a.intersection(b)) {
                return Err(ResAlgError::NotSublattice(format!("{a} ∩ {b} is missing")));
            }
        }
    }
    Ok(())
}

/// The Boolean algebra generated by `langs` inside their joint syntactic
/// morphism. Its atoms are the nonempty intersections of generators and
/// complements.
pub fn generate_boolean_subalgebra(alphabet: &Alphabet, langs: &[RegularLanguage]) -> Result<FiniteResAlg> {
    let morphisms: Vec<RecognizingMorphism> = langs.iter().map(syntactic_morphism).collect();
    let refs: Vec<&RecognizingMorphism> = morphisms.iter().collect();
    let joint = product_of(alphabet, &refs)?;
    let gens: Vec<BitSet> =
        morphisms.iter().enumerate().map(|(i, eta)| joint.pullback(i, eta.accepting())).collect();
    let n = joint.joint.monoid().len();
    let atoms = separation_classes(n, &gens);
    FiniteResAlg::from_partition(joint.joint, atoms)
}

/// Least Boolean algebra containing `generators` and closed under `N\c` and
/// `c/N` for every `N ⊆ M`, i.e. under residuation by every language the
/// ambient morphism recognizes.
///
/// `N\c` is the intersection of the `{n}\c = {m | n·m ∈ c}` over `n ∈ N`, so
/// the closure is the Boolean algebra generated by the sets
/// `{m | s·m·t ∈ g}`. Its atoms are the classes of the relation "agree on
/// `s·_·t ∈ g` for all `s`, `t` and generators `g`".
pub fn generate_residuation_ideal(generators: &[BitSet], ambient: &RecognizingMorphism) -> Result<FiniteResAlg> {
    let mon = ambient.monoid();
    let n = mon.len();
    if let Some(g) = generators.iter().find(|g| g.universe() != n) {
        return Err(ResAlgError::NotMember(format!("{g} (wrong universe)")));
    }
    let mut family = Vec::with_capacity(generators.len() * n * n);
    for g in generators {
        for s in 0..n {
            for t in 0..n {
                family.push(BitSet::from_indices(n, (0..n).filter(|&m| g.contains(mon.mul(mon.mul(s, m), t)))));
            }
        }
    }
    FiniteResAlg::from_partition(ambient.clone(), separation_classes(n, &family))
}

/// Re-checks closure of a Boolean algebra under `N\c` and `c/N` by direct
/// scan. All `N ⊆ M` are tried when `2^|M|` is at most `subset_budget`;
/// otherwise singletons, which generate every `N\c` by intersection.
/// Returns the first failing `(N, c)`.
pub fn audit_residuation_closure(alg: &FiniteResAlg, subset_budget: usize) -> Result<Option<(BitSet, BitSet)>> {
    let n = alg.monoid_size();
    let mon = alg.morphism().monoid();
    let divisors: Vec<BitSet> = if n < usize::BITS as usize && (1usize << n) <= subset_budget && n <= 30 {
        crate::bitset::all_subsets(n).collect()
    } else {
        (0..n).map(|m| BitSet::singleton(n, m)).collect()
    };
    for c in alg.carrier()? {
        for d in &divisors {
            if !alg.contains(&mon.left_residual(d, &c)) || !alg.contains(&mon.right_residual(&c, d)) {
                return Ok(Some((d.clone(), c)));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(s: &str) -> Alphabet {
        Alphabet::parse(s).unwrap()
    }

    fn lang(re: &str, a: &Alphabet) -> RegularLanguage {
        RegularLanguage::parse(re, a).unwrap()
    }

    #[test]
    fn two_stars_give_four_atoms() {
        let ab = alpha("ab");
        let alg = generate_boolean_subalgebra(&ab, &[lang("a*", &ab), lang("b*", &ab)]).unwrap();
        assert_eq!(alg.atom_count(), 4);
        let langs: Vec<RegularLanguage> = alg.atoms().iter().map(|a| alg.language_of(a)).collect();
        assert_eq!(langs[0], lang("1", &ab));
        assert_eq!(langs[1], lang("a+", &ab));
        assert_eq!(langs[2], lang("b+", &ab));
        assert_eq!(langs[3], lang("a*|b*", &ab).complement());
        assert!(alg.is_residuation_closed().unwrap());
    }

    #[test]
    fn no_generators() {
        let ab = alpha("ab");
        let alg = generate_boolean_subalgebra(&ab, &[]).unwrap();
        assert_eq!(alg.atom_count(), 1);
        assert_eq!(alg.carrier().unwrap().len(), 2);
        assert_eq!(alg.language_of(&alg.atoms()[0]), RegularLanguage::universal(&ab));
    }

    #[test]
    fn mod_three_classes() {
        let a = alpha("a");
        let gens = [lang("(aaa)*", &a), lang("a(aaa)*", &a), lang("aa(aaa)*", &a)];
        let alg = generate_boolean_subalgebra(&a, &gens).unwrap();
        assert_eq!(alg.atom_count(), 3);
        assert_eq!(alg.carrier().unwrap().len(), 8);
    }

    #[test]
    fn residuals_at_monoid_level() {
        let ab = alpha("ab");
        let (ka, kb) = (lang("a*", &ab), lang("b*", &ab));
        let alg = generate_boolean_subalgebra(&ab, &[ka.clone(), kb.clone()]).unwrap();
        let qa = alg.saturated_image(&ka).unwrap();
        let qb = alg.saturated_image(&kb).unwrap();
        let (left, right) = alg.residuals_in(&qb, &qa).unwrap();
        assert!(left.is_empty() && right.is_empty());
        let whole = BitSet::full(alg.monoid_size());
        let (l2, _) = alg.residuals_in(&whole, &qa).unwrap();
        let direct = BitSet::from_indices(4, (0..4).filter(|&m| (0..4).all(|x| qa.contains(alg.morphism().monoid().mul(x, m)))));
        assert_eq!(l2, direct);
        let unit = alg.atoms()[alg.atom_containing(alg.morphism().monoid().identity())].clone();
        for c in alg.carrier().unwrap() {
            assert_eq!(alg.residuals_in(&unit, &c).unwrap(), (c.clone(), c));
        }
        assert!(alg.residuals_in(&BitSet::singleton(3, 0), &qa).is_err());
    }

    #[test]
    fn family_validation() {
        let a = alpha("a");
        let eta = syntactic_morphism(&lang("(aaa)*", &a));
        let s = |v: &[usize]| BitSet::from_indices(3, v.iter().copied());
        let err = FiniteResAlg::from_family(eta.clone(), &[s(&[]), s(&[0]), s(&[1]), s(&[0, 1, 2])]).unwrap_err();
        assert!(matches!(err, ResAlgError::NotSublattice(_)));
        let chain = FiniteResAlg::from_family(eta.clone(), &[s(&[]), s(&[0]), s(&[0, 1, 2])]).unwrap();
        assert!(!chain.is_boolean());
        assert_eq!(chain.atom_count(), 2);
        assert!(chain.contains(&s(&[0])) && !chain.contains(&s(&[1, 2])));
        let c = FiniteResAlg::from_family(eta, &[s(&[]), s(&[0]), s(&[1, 2]), s(&[0, 1, 2])]).unwrap();
        assert!(c.is_boolean());
        assert!(c.is_residuation_closed().unwrap());
    }

    #[test]
    fn ideal_of_mod_three_is_everything() {
        let a = alpha("a");
        let eta = syntactic_morphism(&lang("(aaa)*", &a));
        let ideal = generate_residuation_ideal(&[BitSet::singleton(3, 0)], &eta).unwrap();
        assert_eq!(ideal.carrier().unwrap(), crate::bitset::all_subsets(3).collect::<BTreeSet<_>>().into_iter().collect::<Vec<_>>());
        assert_eq!(audit_residuation_closure(&ideal, 1 << 12).unwrap(), None);
        let trivial = generate_residuation_ideal(&[BitSet::empty(3)], &eta).unwrap();
        assert_eq!(trivial.carrier().unwrap().len(), 2);
    }

    #[test]
    fn ideal_of_star_splits_identity() {
        let ab = alpha("ab");
        let eta = syntactic_morphism(&lang("a*", &ab));
        let ideal = generate_residuation_ideal(&[eta.accepting().clone()], &eta).unwrap();
        assert_eq!(ideal.atom_count(), 2);
        assert!(ideal.contains(eta.accepting()));
        assert_eq!(audit_residuation_closure(&ideal, 1 << 12).unwrap(), None);
    }

    #[test]
    fn non_closed_algebra_detected() {
        // {∅, {0}, {1,2}, M} is closed in itself; {∅, {1}, {0,2}, M} is not
        let a = alpha("a");
        let eta = syntactic_morphism(&lang("(aaa)*", &a));
        let s = |v: &[usize]| BitSet::from_indices(3, v.iter().copied());
        let alg = FiniteResAlg::from_partition(eta, vec![s(&[1]), s(&[0, 2])]).unwrap();
        assert!(!alg.is_residuation_closed().unwrap());
        assert!(audit_residuation_closure(&alg, 1 << 12).unwrap().is_some());
    }
}
