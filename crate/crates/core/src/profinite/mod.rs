//! ω-terms, their evaluation in finite monoids, and the classes of
//! recognizable languages they define.
//!
//! With `(M, η, P)` recognizing `L` and `û` the value of a term `u` under
//! the letter images:
//!
//! * `u -> v` holds when `v̂ ∈ P` implies `û ∈ P`;
//! * `u <-> v` holds when both arrows do;
//! * `u <= v` holds when `s·v̂·t ∈ P` implies `s·û·t ∈ P` for all `s, t ∈ M`.
//!
//! The inequality uses the same orientation as the syntactic quasiorder in
//! [`crate::lang`]: `u <= v` for all languages of a class says `û ≼ v̂` in
//! each of their syntactic orders.

mod equation;
mod term;

use thiserror::Error;

use crate::bitset::BitSet;
use crate::lang::{syntactic_morphism, LangError, RecognizingMorphism, RegularLanguage};
use crate::order::{theory_of_family, Quasiorder};
use crate::resalg::{FiniteResAlg, ResAlgError};

pub use equation::{substitute, EqKind, Equation, EquationSet};
pub use term::OmegaTerm;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProfiniteError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("line {line}: {source}")]
    AtLine { line: usize, source: Box<ProfiniteError> },
    #[error("letter '{0}' has no value")]
    Unassigned(char),
    #[error("letter '{0}' is not in the alphabet")]
    LetterOutsideAlphabet(char),
    #[error(transparent)]
    Lang(#[from] LangError),
    #[error(transparent)]
    ResAlg(#[from] ResAlgError),
}

impl ProfiniteError {
    pub(crate) fn shifted(self, offset: usize) -> Self {
        match self {
            ProfiniteError::Syntax { pos, msg } => ProfiniteError::Syntax { pos: pos + offset, msg },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, ProfiniteError>;

/// Value of `t` under the letter images of `eta`.
pub fn eval_in(t: &OmegaTerm, eta: &RecognizingMorphism) -> Result<usize> {
    let alphabet = eta.alphabet();
    t.eval(eta.monoid(), &|c| alphabet.index_of(c).map(|i| eta.letter_images()[i]))
}

/// Outcome of checking one equation, with the values that decided it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub lhs: usize,
    pub rhs: usize,
    /// For a failed inequality, a context `(s, t)` accepting `v̂` but not `û`.
    pub context: Option<(usize, usize)>,
}

/// Checks `e` against the accepting set `accepting` of `eta`'s monoid.
pub fn check_with(eta: &RecognizingMorphism, accepting: &BitSet, e: &Equation) -> Result<Verdict> {
    e.check_alphabet(eta.alphabet())?;
    let (u, v) = (eval_in(&e.lhs, eta)?, eval_in(&e.rhs, eta)?);
    let p = |x: usize| accepting.contains(x);
    let mut verdict = Verdict { holds: true, lhs: u, rhs: v, context: None };
    match e.kind {
        EqKind::Arrow => verdict.holds = !p(v) || p(u),
        EqKind::Symmetric => verdict.holds = p(u) == p(v),
        EqKind::Inequality => {
            let m = eta.monoid();
            'search: for s in 0..m.len() {
                for t in 0..m.len() {
                    if p(m.mul(m.mul(s, v), t)) && !p(m.mul(m.mul(s, u), t)) {
                        verdict.holds = false;
                        verdict.context = Some((s, t));
                        break 'search;
                    }
                }
            }
        }
    }
    Ok(verdict)
}

/// Whether the language recognized by `eta` satisfies `e`, evaluated in
/// `eta`'s own monoid. For `<=` the morphism should be surjective.
pub fn satisfied_in(eta: &RecognizingMorphism, e: &Equation) -> Result<bool> {
    Ok(check_with(eta, eta.accepting(), e)?.holds)
}

/// Satisfaction through the syntactic morphism of `l`.
pub fn satisfies(l: &RegularLanguage, e: &Equation) -> Result<bool> {
    satisfied_in(&syntactic_morphism(l), e)
}

/// Members of the carrier of `c` satisfying every equation of `sigma`.
///
/// Evaluated in `c`'s own surjective morphism, which factors through the
/// syntactic morphism of every member. The result is asserted to be a
/// bounded sublattice, and complement-closed when all equations are
/// symmetric.
pub fn model_class_within(c: &FiniteResAlg, sigma: &EquationSet) -> Result<Vec<BitSet>> {
    c.morphism().alphabet().check_same(&sigma.alphabet)?;
    let eta = c.morphism();
    let mut out = Vec::new();
    for q in c.carrier()? {
        let mut ok = true;
        for e in &sigma.equations {
            if !check_with(eta, &q, e)?.holds {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(q);
        }
    }
    debug_assert!(crate::order::is_bounded_sublattice(c.monoid_size(), &out));
    debug_assert!(!sigma.all_symmetric() || out.iter().all(|q| out.contains(&q.complement())));
    Ok(out)
}

/// `x ⪯ y` on the atoms of `c` when every member of `k` containing atom
/// `y` contains atom `x`.
pub fn theory_of(c: &FiniteResAlg, k: &[BitSet]) -> Result<Quasiorder> {
    let mut atom_sets = Vec::with_capacity(k.len());
    for q in k {
        if !c.contains(q) {
            return Err(ResAlgError::NotMember(c.describe(q)).into());
        }
        atom_sets.push(c.atoms_of(q).expect("members are unions of atoms"));
    }
    Ok(theory_of_family(c.atom_count(), atom_sets.iter()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::Alphabet;

    fn lang(re: &str, a: &str) -> RegularLanguage {
        RegularLanguage::parse(re, &Alphabet::parse(a).unwrap()).unwrap()
    }

    fn eq(s: &str) -> Equation {
        Equation::parse(s).unwrap()
    }

    #[test]
    fn aperiodicity_separates() {
        let e = eq("a^w a <-> a^w");
        assert!(!satisfies(&lang("(aa)*", "a"), &e).unwrap());
        assert!(satisfies(&lang("a*", "a"), &e).unwrap());
        let eta = syntactic_morphism(&lang("(aa)*", "a"));
        let v = check_with(&eta, eta.accepting(), &e).unwrap();
        assert_eq!((v.lhs, v.rhs), (1, 0));
    }

    #[test]
    fn trivial_equations() {
        for l in [lang("(a|b)*abb", "ab"), lang("0", "ab"), lang("1", "ab")] {
            assert!(satisfies(&l, &eq("a -> a")).unwrap());
            assert!(satisfies(&l, &eq("ab^w <= ab^w")).unwrap());
        }
        assert!(matches!(satisfies(&lang("a", "a"), &eq("b -> a")), Err(ProfiniteError::LetterOutsideAlphabet('b'))));
    }

    #[test]
    fn inequality_context() {
        // a* over {a,b}: a acts as the identity, b is absorbing and never
        // accepted, so u <= b holds for every u while b <= 1 fails
        let l = lang("a*", "ab");
        assert!(satisfies(&l, &eq("1 <= b")).unwrap());
        assert!(satisfies(&l, &eq("a <= b")).unwrap());
        let eta = syntactic_morphism(&l);
        let v = check_with(&eta, eta.accepting(), &eq("b <= 1")).unwrap();
        assert!(!v.holds);
        assert_eq!(v.context, Some((0, 0)));
        assert!(!satisfies(&l, &eq("b <= a")).unwrap());
        assert!(!satisfies(&l, &eq("b -> a")).unwrap());
        assert!(satisfies(&l, &eq("a -> b")).unwrap());
    }

    #[test]
    fn model_class_in_z3() {
        let a = Alphabet::parse("a").unwrap();
        let eta = syntactic_morphism(&lang("(aaa)*", "a"));
        let c = crate::resalg::FiniteResAlg::from_partition(
            eta,
            (0..3).map(|i| BitSet::singleton(3, i)).collect(),
        )
        .unwrap();
        let all = EquationSet::new(a.clone(), vec![]).unwrap();
        assert_eq!(model_class_within(&c, &all).unwrap().len(), 8);
        let sym = EquationSet::new(a.clone(), vec![eq("a^w a <-> a^w")]).unwrap();
        let s = |v: &[usize]| BitSet::from_indices(3, v.iter().copied());
        assert_eq!(model_class_within(&c, &sym).unwrap(), vec![s(&[]), s(&[0, 1]), s(&[2]), s(&[0, 1, 2])]);
        let ineq = EquationSet::new(a, vec![eq("a^w a <= a^w"), eq("a^w <= a^w a")]).unwrap();
        assert_eq!(model_class_within(&c, &ineq).unwrap(), vec![s(&[]), s(&[0, 1, 2])]);
    }

    #[test]
    fn theory_examples() {
        let eta = syntactic_morphism(&lang("(aaa)*", "a"));
        let c = crate::resalg::FiniteResAlg::from_partition(
            eta,
            (0..3).map(|i| BitSet::singleton(3, i)).collect(),
        )
        .unwrap();
        let s = |v: &[usize]| BitSet::from_indices(3, v.iter().copied());
        assert_eq!(theory_of(&c, &c.carrier().unwrap()).unwrap(), Quasiorder::discrete(3));
        assert_eq!(theory_of(&c, &[s(&[]), s(&[0, 1, 2])]).unwrap(), Quasiorder::total(3));
        let q = theory_of(&c, &[s(&[0]), s(&[1, 2])]).unwrap();
        assert!(q.related(1, 2) && q.related(2, 1) && !q.related(0, 1));
    }
}
