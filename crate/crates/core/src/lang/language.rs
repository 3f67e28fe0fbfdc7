//! Regular languages as canonical minimal automata.

use std::fmt;

use super::morphism::{image, syntactic_morphism};
use super::nfa::Nfa;
use super::regex::parse_regex;
use super::{Alphabet, Dfa, RecognizingMorphism, Result};

/// A regular language. Two values are equal exactly when they denote the
/// same language over the same alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RegularLanguage {
    dfa: Dfa,
}

impl RegularLanguage {
    pub fn from_dfa(dfa: Dfa) -> Self {
        RegularLanguage { dfa: dfa.minimize() }
    }

    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        Ok(RegularLanguage { dfa: parse_regex(text, alphabet)?.to_dfa(alphabet) })
    }

    pub fn empty(alphabet: &Alphabet) -> Self {
        let delta = vec![vec![0; alphabet.len()]];
        RegularLanguage { dfa: Dfa::new(alphabet.clone(), 0, vec![false], delta).expect("one-state sink") }
    }

    pub fn universal(alphabet: &Alphabet) -> Self {
        RegularLanguage::empty(alphabet).complement()
    }

    /// The singleton `{word}`.
    pub fn word(alphabet: &Alphabet, word: &[usize]) -> Self {
        let n = word.len();
        // states 0..=n follow the word, n + 1 is the sink
        let delta = (0..n + 2)
            .map(|q| (0..alphabet.len()).map(|a| if q < n && word[q] == a { q + 1 } else { n + 1 }).collect())
            .collect();
        let finals = (0..n + 2).map(|q| q == n).collect();
        RegularLanguage::from_dfa(Dfa::new(alphabet.clone(), 0, finals, delta).expect("complete"))
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.dfa.alphabet()
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    /// Number of states of the minimal complete automaton.
    pub fn state_count(&self) -> usize {
        self.dfa.states()
    }

    pub fn accepts(&self, word: &str) -> Result<bool> {
        Ok(self.dfa.accepts(&self.alphabet().encode(word)?))
    }

    pub fn accepts_word(&self, word: &[usize]) -> bool {
        self.dfa.accepts(word)
    }

    pub fn is_empty(&self) -> bool {
        self.dfa.finals().is_empty()
    }

    pub fn is_universal(&self) -> bool {
        self.dfa.finals().len() == self.dfa.states()
    }

    pub fn complement(&self) -> Self {
        RegularLanguage { dfa: self.dfa.complement() }
    }

    fn combine(&self, other: &Self, f: impl Fn(bool, bool) -> bool) -> Result<Self> {
        Ok(RegularLanguage::from_dfa(self.dfa.product(&other.dfa, f)?))
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a && !b)
    }

    pub fn concat(&self, other: &Self) -> Result<Self> {
        self.alphabet().check_same(other.alphabet())?;
        let mut nfa = Nfa::new(self.alphabet().clone());
        let left = nfa.embed(&self.dfa);
        let right = nfa.embed(&other.dfa);
        nfa.set_initial(left + self.dfa.initial());
        for q in self.dfa.finals() {
            nfa.add_eps(left + q, right + other.dfa.initial());
        }
        for q in other.dfa.finals() {
            nfa.set_final(right + q);
        }
        Ok(RegularLanguage::from_dfa(nfa.determinize()))
    }

    /// A shortest word in `self` but not in `other`, if any.
    pub fn subset_witness(&self, other: &Self) -> Result<Option<Vec<usize>>> {
        Ok(self.dfa.product(&other.dfa, |a, b| a && !b)?.shortest_accepted())
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        Ok(self.subset_witness(other)?.is_none())
    }

    pub fn shortest_word(&self) -> Option<Vec<usize>> {
        self.dfa.shortest_accepted()
    }

    /// `σ⁻¹(L)` for the morphism sending letter `i` of `domain` to the word
    /// `sigma[i]` over this language's alphabet.
    pub fn inverse_image(&self, domain: &Alphabet, sigma: &[Vec<usize>]) -> Result<Self> {
        if sigma.len() != domain.len() {
            return Err(super::LangError::BadMorphism(format!(
                "{} images for {} letters",
                sigma.len(),
                domain.len()
            )));
        }
        if sigma.iter().flatten().any(|&a| a >= self.alphabet().len()) {
            return Err(super::LangError::BadMorphism("image word uses a letter outside the target alphabet".into()));
        }
        let delta = (0..self.dfa.states()).map(|q| sigma.iter().map(|w| self.dfa.run_from(q, w)).collect()).collect();
        let finals = (0..self.dfa.states()).map(|q| self.dfa.is_final(q)).collect();
        Ok(RegularLanguage::from_dfa(Dfa::new(domain.clone(), self.dfa.initial(), finals, delta)?))
    }

    pub fn syntactic_morphism(&self) -> RecognizingMorphism {
        syntactic_morphism(self)
    }
}

impl fmt::Display for RegularLanguage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}-state language over {}>", self.dfa.states(), self.alphabet())
    }
}

/// `K\L = {w | K·w ⊆ L}`, computed as `η⁻¹(η(K)\P)` for the syntactic
/// morphism `η` of `L` with accepting set `P`.
pub fn residual_left(k: &RegularLanguage, l: &RegularLanguage) -> Result<RegularLanguage> {
    let eta = syntactic_morphism(l);
    let n = image(&eta, k)?;
    Ok(eta.preimage(&eta.monoid().left_residual(&n, eta.accepting())))
}

/// `L/K = {w | w·K ⊆ L}`.
pub fn residual_right(l: &RegularLanguage, k: &RegularLanguage) -> Result<RegularLanguage> {
    let eta = syntactic_morphism(l);
    let n = image(&eta, k)?;
    Ok(eta.preimage(&eta.monoid().right_residual(eta.accepting(), &n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::parse("ab").unwrap()
    }

    fn l(re: &str) -> RegularLanguage {
        RegularLanguage::parse(re, &ab()).unwrap()
    }

    #[test]
    fn canonical_equality() {
        assert_eq!(l("(a|b)*"), l("(a*b*)*"));
        assert_eq!(l("a(ba)*"), l("(ab)*a"));
        assert_ne!(l("a*"), l("a+"));
        assert_eq!(l("0"), RegularLanguage::empty(&ab()));
        assert_eq!(l("1"), RegularLanguage::word(&ab(), &[]));
    }

    #[test]
    fn boolean_operations() {
        let x = l("a*");
        let y = l("(a|b)*b");
        assert_eq!(x.union(&y).unwrap(), l("a*|(a|b)*b"));
        assert!(x.intersection(&y).unwrap().is_empty());
        assert_eq!(x.complement().complement(), x);
        assert!(x.union(&x.complement()).unwrap().is_universal());
        assert_eq!(l("(a|b)*").difference(&x).unwrap(), l("a*b(a|b)*"));
    }

    #[test]
    fn concatenation() {
        assert_eq!(l("a*").concat(&l("b")).unwrap(), l("a*b"));
        assert_eq!(l("0").concat(&l("a")).unwrap(), l("0"));
        assert_eq!(l("1").concat(&l("ab")).unwrap(), l("ab"));
    }

    #[test]
    fn inclusion_and_witness() {
        assert!(l("ab").is_subset(&l("a*b*")).unwrap());
        assert_eq!(l("a*b*").subset_witness(&l("a*")).unwrap(), Some(vec![1]));
        let other = RegularLanguage::parse("a", &Alphabet::parse("a").unwrap()).unwrap();
        assert!(l("a").is_subset(&other).is_err());
    }

    #[test]
    fn residuals_of_stars() {
        let alpha = l("a*");
        let beta = l("b*");
        assert!(residual_left(&beta, &alpha).unwrap().is_empty());
        assert_eq!(residual_left(&alpha, &alpha).unwrap(), alpha);
        assert_eq!(residual_left(&l("a"), &l("ab*")).unwrap(), l("b*"));
        assert_eq!(residual_right(&l("ab*"), &l("b")).unwrap(), l("ab*"));
        assert_eq!(residual_left(&l("0"), &l("a")).unwrap(), l("(a|b)*"));
    }

    #[test]
    fn mod_three_residual() {
        let a = Alphabet::parse("a").unwrap();
        let p = |s: &str| RegularLanguage::parse(s, &a).unwrap();
        let l0 = p("(aaa)*");
        let l1 = p("a(aaa)*");
        let l2 = p("aa(aaa)*");
        assert_eq!(residual_left(&l1, &l0).unwrap(), l2);
        assert_eq!(residual_right(&l0, &l1).unwrap(), l2);
    }

    #[test]
    fn inverse_image_doubles() {
        // σ(a) = aa over {a}; σ⁻¹((aaa)*) = (aaa)*
        let a = Alphabet::parse("a").unwrap();
        let l0 = RegularLanguage::parse("(aaa)*", &a).unwrap();
        assert_eq!(l0.inverse_image(&a, &[vec![0, 0]]).unwrap(), l0);
        // σ(a) = ab, σ(b) = 1 into {a,b}: preimage of a*b* is b*a?b*
        let pre = l("a*b*").inverse_image(&ab(), &[vec![0, 1], vec![]]).unwrap();
        assert_eq!(pre, l("b*(a|1)b*"));
    }
}
