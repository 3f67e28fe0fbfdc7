//! Morphisms from the free monoid onto finite monoids.

use std::collections::{HashMap, HashSet};

use crate::bitset::BitSet;
use crate::order::Quasiorder;

use super::{word_label, Alphabet, Dfa, FiniteMonoid, LangError, RegularLanguage, Result};

/// `η: A* → M` given by the images of the letters, together with the
/// accepting subset `P`, so that it recognizes `η⁻¹(P)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecognizingMorphism {
    alphabet: Alphabet,
    monoid: FiniteMonoid,
    letters: Vec<usize>,
    accepting: BitSet,
}

impl RecognizingMorphism {
    pub fn new(alphabet: Alphabet, monoid: FiniteMonoid, letters: Vec<usize>, accepting: BitSet) -> Result<Self> {
        if letters.len() != alphabet.len() {
            return Err(LangError::BadMorphism(format!(
                "{} letter images for {} letters",
                letters.len(),
                alphabet.len()
            )));
        }
        if let Some(&m) = letters.iter().find(|&&m| m >= monoid.len()) {
            return Err(LangError::BadMorphism(format!("letter image {m} is not an element")));
        }
        if accepting.universe() != monoid.len() {
            return Err(LangError::BadMorphism("accepting set has the wrong universe".into()));
        }
        Ok(RecognizingMorphism { alphabet, monoid, letters, accepting })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        &self.monoid
    }

    pub fn letter_images(&self) -> &[usize] {
        &self.letters
    }

    pub fn accepting(&self) -> &BitSet {
        &self.accepting
    }

    pub fn with_accepting(&self, accepting: BitSet) -> Result<Self> {
        RecognizingMorphism::new(self.alphabet.clone(), self.monoid.clone(), self.letters.clone(), accepting)
    }

    pub fn eval(&self, word: &[usize]) -> usize {
        word.iter().fold(self.monoid.identity(), |m, &a| self.monoid.mul(m, self.letters[a]))
    }

    pub fn eval_str(&self, word: &str) -> Result<usize> {
        Ok(self.eval(&self.alphabet.encode(word)?))
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.accepting.contains(self.eval(word))
    }

    /// `η⁻¹(Q)` as a canonical language.
    pub fn preimage(&self, q: &BitSet) -> RegularLanguage {
        let n = self.monoid.len();
        let delta = (0..n).map(|m| self.letters.iter().map(|&x| self.monoid.mul(m, x)).collect()).collect();
        let finals = (0..n).map(|m| q.contains(m)).collect();
        let dfa = Dfa::new(self.alphabet.clone(), self.monoid.identity(), finals, delta).expect("complete by construction");
        RegularLanguage::from_dfa(dfa)
    }

    pub fn language(&self) -> RegularLanguage {
        self.preimage(&self.accepting)
    }

    /// Elements reached by some word.
    pub fn reachable(&self) -> BitSet {
        let mut seen = BitSet::singleton(self.monoid.len(), self.monoid.identity());
        let mut stack = vec![self.monoid.identity()];
        while let Some(m) = stack.pop() {
            for &x in &self.letters {
                let t = self.monoid.mul(m, x);
                if !seen.contains(t) {
                    seen.insert(t);
                    stack.push(t);
                }
            }
        }
        seen
    }

    pub fn is_surjective(&self) -> bool {
        self.reachable().is_full()
    }

    /// `m ≼ n` when every context `s·_·t` sending `n` into `P` sends `m`
    /// into `P`. For the syntactic morphism this is the syntactic order.
    pub fn syntactic_order(&self) -> Quasiorder {
        let n = self.monoid.len();
        let contexts: Vec<BitSet> = (0..n)
            .map(|m| {
                let mut c = BitSet::empty(n * n);
                for s in 0..n {
                    let sm = self.monoid.mul(s, m);
                    for t in 0..n {
                        if self.accepting.contains(self.monoid.mul(sm, t)) {
                            c.insert(s * n + t);
                        }
                    }
                }
                c
            })
            .collect();
        Quasiorder::from_fn(n, |m, k| contexts[k].is_subset(&contexts[m])).expect("context inclusion is a quasiorder")
    }
}

/// Transition monoid of the minimal automaton, which is the syntactic
/// monoid. Elements are numbered breadth-first from the identity, letters
/// in alphabet order, and labelled by their length-lex least word.
pub fn syntactic_morphism(l: &RegularLanguage) -> RecognizingMorphism {
    let dfa = l.dfa();
    let n = dfa.states();
    let k = dfa.alphabet().len();
    let identity: Vec<usize> = (0..n).collect();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity.clone(), 0)]);
    let mut elems = vec![identity];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut i = 0;
    while i < elems.len() {
        for a in 0..k {
            let next: Vec<usize> = elems[i].iter().map(|&q| dfa.step(q, a)).collect();
            if !index.contains_key(&next) {
                index.insert(next.clone(), elems.len());
                let mut w = words[i].clone();
                w.push(a);
                words.push(w);
                elems.push(next);
            }
        }
        i += 1;
    }
    let size = elems.len();
    let table: Vec<Vec<usize>> = (0..size)
        .map(|x| {
            (0..size)
                .map(|y| {
                    let composed: Vec<usize> = elems[x].iter().map(|&q| elems[y][q]).collect();
                    index[&composed]
                })
                .collect()
        })
        .collect();
    let letters: Vec<usize> = (0..k).map(|a| index[&(0..n).map(|q| dfa.step(q, a)).collect::<Vec<_>>()]).collect();
    let accepting = BitSet::from_indices(size, (0..size).filter(|&m| dfa.is_final(elems[m][dfa.initial()])));
    let labels = words.iter().map(|w| word_label(dfa.alphabet(), w)).collect();
    let monoid = FiniteMonoid::new_unchecked(labels, table, 0);
    RecognizingMorphism::new(dfa.alphabet().clone(), monoid, letters, accepting).expect("consistent by construction")
}

/// The syntactic quasiorder of `l` on its syntactic monoid.
pub fn syntactic_quasiorder(l: &RegularLanguage) -> Quasiorder {
    syntactic_morphism(l).syntactic_order()
}

/// `η(K)` as a subset of the monoid.
pub fn image(eta: &RecognizingMorphism, k: &RegularLanguage) -> Result<BitSet> {
    eta.alphabet().check_same(k.alphabet())?;
    let d = k.dfa();
    let m = eta.monoid();
    let start = (d.initial(), m.identity());
    let mut seen = HashSet::from([start]);
    let mut stack = vec![start];
    let mut out = BitSet::empty(m.len());
    while let Some((q, x)) = stack.pop() {
        if d.is_final(q) {
            out.insert(x);
        }
        for (a, &img) in eta.letter_images().iter().enumerate() {
            let t = (d.step(q, a), m.mul(x, img));
            if seen.insert(t) {
                stack.push(t);
            }
        }
    }
    Ok(out)
}

/// The submonoid of a product generated by the joint letter images.
#[derive(Debug, Clone)]
pub struct ProductMorphism {
    pub joint: RecognizingMorphism,
    /// `projections[i][m]` is the `i`-th component of element `m`.
    pub projections: Vec<Vec<usize>>,
}

impl ProductMorphism {
    /// Elements whose `i`-th component lies in `q`.
    pub fn pullback(&self, i: usize, q: &BitSet) -> BitSet {
        let p = &self.projections[i];
        BitSet::from_indices(p.len(), (0..p.len()).filter(|&m| q.contains(p[m])))
    }

    pub fn factors(&self) -> usize {
        self.projections.len()
    }
}

/// Joint morphism `w ↦ (η₁(w), …, ηₖ(w))` onto its image. It accepts where
/// every factor accepts, so it recognizes the intersection.
pub fn product_of(alphabet: &Alphabet, factors: &[&RecognizingMorphism]) -> Result<ProductMorphism> {
    for f in factors {
        alphabet.check_same(f.alphabet())?;
    }
    let start: Vec<usize> = factors.iter().map(|f| f.monoid().identity()).collect();
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(start.clone(), 0)]);
    let mut elems = vec![start];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let gens: Vec<Vec<usize>> =
        (0..alphabet.len()).map(|a| factors.iter().map(|f| f.letter_images()[a]).collect()).collect();
    let mul = |x: &[usize], y: &[usize]| -> Vec<usize> {
        factors.iter().enumerate().map(|(i, f)| f.monoid().mul(x[i], y[i])).collect()
    };
    let mut i = 0;
    while i < elems.len() {
        for (a, g) in gens.iter().enumerate() {
            let next = mul(&elems[i], g);
            if !index.contains_key(&next) {
                index.insert(next.clone(), elems.len());
                let mut w = words[i].clone();
                w.push(a);
                words.push(w);
                elems.push(next);
            }
        }
        i += 1;
    }
    let size = elems.len();
    let table: Vec<Vec<usize>> =
        (0..size).map(|x| (0..size).map(|y| index[&mul(&elems[x], &elems[y])]).collect()).collect();
    let letters: Vec<usize> = gens.iter().map(|g| index[g]).collect();
    let accepting = BitSet::from_indices(
        size,
        (0..size).filter(|&m| factors.iter().enumerate().all(|(i, f)| f.accepting().contains(elems[m][i]))),
    );
    let labels = words.iter().map(|w| word_label(alphabet, w)).collect();
    let monoid = FiniteMonoid::new_unchecked(labels, table, 0);
    let projections = (0..factors.len()).map(|i| elems.iter().map(|e| e[i]).collect()).collect();
    Ok(ProductMorphism { joint: RecognizingMorphism::new(alphabet.clone(), monoid, letters, accepting)?, projections })
}

pub fn product_morphism(a: &RecognizingMorphism, b: &RecognizingMorphism) -> Result<ProductMorphism> {
    product_of(a.alphabet(), &[a, b])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lang(re: &str, alpha: &str) -> RegularLanguage {
        RegularLanguage::parse(re, &Alphabet::parse(alpha).unwrap()).unwrap()
    }

    #[test]
    fn mod_three_counter_is_z3() {
        let eta = syntactic_morphism(&lang("(aaa)*", "a"));
        let m = eta.monoid();
        assert_eq!(m.len(), 3);
        assert_eq!(m.labels(), &["1", "a", "aa"]);
        assert_eq!(eta.letter_images(), &[1]);
        assert_eq!(eta.accepting().to_vec(), vec![0]);
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(m.mul(x, y), (x + y) % 3);
            }
        }
    }

    #[test]
    fn star_of_one_letter_over_two() {
        let eta = syntactic_morphism(&lang("a*", "ab"));
        assert_eq!(eta.monoid().labels(), &["1", "b"]);
        assert_eq!(eta.letter_images(), &[0, 1]);
        assert!(eta.monoid().is_idempotent(1));
    }

    #[test]
    fn joint_morphism_of_two_stars() {
        let ea = syntactic_morphism(&lang("a*", "ab"));
        let eb = syntactic_morphism(&lang("b*", "ab"));
        let p = product_morphism(&ea, &eb).unwrap();
        let m = p.joint.monoid();
        assert_eq!(m.labels(), &["1", "a", "b", "ab"]);
        assert_eq!(p.projections, vec![vec![0, 0, 1, 1], vec![0, 1, 0, 1]]);
        assert!((0..4).all(|x| m.is_idempotent(x)));
        assert!(m.is_commutative());
        assert_eq!(p.joint.accepting().to_vec(), vec![0]);
        assert!(p.joint.is_surjective());
    }

    #[test]
    fn preimage_and_image_agree() {
        let l = lang("(a|b)*abb", "ab");
        let eta = syntactic_morphism(&l);
        assert_eq!(eta.language(), l);
        let k = lang("b*", "ab");
        let img = image(&eta, &k).unwrap();
        let direct = BitSet::from_indices(eta.monoid().len(), (0..10).map(|n| eta.eval(&vec![1; n])));
        assert_eq!(img, direct);
        assert_eq!(img.len(), 4);
    }

    #[test]
    fn syntactic_order_of_star() {
        // for a* over {a,b} no context accepts the absorbing b, so 1 ≼ b only
        let q = syntactic_quasiorder(&lang("a*", "ab"));
        assert!(q.related(0, 1));
        assert!(!q.related(1, 0));
    }
}
