//! Brute-force reference semantics over bounded word sets.
//!
//! Nothing here uses automaton algebra (products, minimization, monoids);
//! languages are only queried through runs of their automata, so agreement
//! with the constructions in [`crate::lang`] is independent evidence.

use std::collections::{HashMap, HashSet};

use crate::lang::{Alphabet, RegularLanguage};

/// All words over `alphabet` of length at most `max_length`, in
/// length-lexicographic order.
#[derive(Debug, Clone)]
pub struct WordEnumeration {
    letters: usize,
    max_length: usize,
    next: Option<Vec<usize>>,
}

impl WordEnumeration {
    pub fn new(alphabet: &Alphabet, max_length: usize) -> Self {
        WordEnumeration { letters: alphabet.len(), max_length, next: Some(Vec::new()) }
    }
}

impl Iterator for WordEnumeration {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        // increment as a base-k counter; on overflow move to the next length
        let mut i = succ.len();
        loop {
            if i == 0 {
                let len = succ.len() + 1;
                self.next = (self.letters > 0 && len <= self.max_length).then(|| vec![0; len]);
                break;
            }
            i -= 1;
            if succ[i] + 1 < self.letters {
                succ[i] += 1;
                for x in &mut succ[i + 1..] {
                    *x = 0;
                }
                self.next = Some(succ);
                break;
            }
        }
        Some(cur)
    }
}

pub fn words_up_to(alphabet: &Alphabet, bound: usize) -> Vec<Vec<usize>> {
    WordEnumeration::new(alphabet, bound).collect()
}

/// Members of `l` of length at most `bound`.
pub fn oracle_membership(l: &RegularLanguage, bound: usize) -> Vec<Vec<usize>> {
    assert!(bound <= 12, "membership oracle bound {bound} exceeds 12");
    WordEnumeration::new(l.alphabet(), bound).filter(|w| l.accepts_word(w)).collect()
}

/// Whether `w = uv` for some `u ∈ k`, `v ∈ l`, by trying every split.
pub fn oracle_concat_contains(k: &RegularLanguage, l: &RegularLanguage, w: &[usize]) -> bool {
    (0..=w.len()).any(|i| k.accepts_word(&w[..i]) && l.accepts_word(&w[i..]))
}

/// Representatives of every run behaviour of the words of `k`: a word is
/// kept when the pair (state of `k`, state of `l` started at `l_start`)
/// after reading it has not been seen for a shorter word. Any `w ∈ k`
/// behaves in later membership tests exactly like the representative of its
/// pair, so quantifying over the returned list is the same as quantifying
/// over all of `k`. All lengths stay below the product of the state counts,
/// which is the pumping margin.
fn behaviour_representatives(k: &RegularLanguage, l: &RegularLanguage, l_start: usize) -> Vec<Vec<usize>> {
    let (dk, dl) = (k.dfa(), l.dfa());
    let start = (dk.initial(), l_start);
    let mut seen = HashSet::from([start]);
    let mut frontier = vec![Vec::new()];
    let mut reps = Vec::new();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in frontier {
            let (p, q) = (dk.run_from(dk.initial(), &w), dl.run_from(l_start, &w));
            for a in 0..k.alphabet().len() {
                if seen.insert((dk.step(p, a), dl.step(q, a))) {
                    let mut wa = w.clone();
                    wa.push(a);
                    next.push(wa);
                }
            }
            reps.push(w);
        }
        frontier = next;
    }
    reps.retain(|w| k.accepts_word(w));
    reps
}

/// Words `u` with `|u| ≤ bound` and `w·u ∈ l` for every `w ∈ k`.
pub fn oracle_residual_left(k: &RegularLanguage, l: &RegularLanguage, bound: usize) -> Vec<Vec<usize>> {
    assert!(bound <= 8, "residual oracle bound {bound} exceeds 8");
    let reps = behaviour_representatives(k, l, l.dfa().initial());
    WordEnumeration::new(l.alphabet(), bound)
        .filter(|u| {
            reps.iter().all(|w| {
                let mut wu = w.clone();
                wu.extend_from_slice(u);
                l.accepts_word(&wu)
            })
        })
        .collect()
}

/// Words `u` with `|u| ≤ bound` and `u·w ∈ l` for every `w ∈ k`.
pub fn oracle_residual_right(l: &RegularLanguage, k: &RegularLanguage, bound: usize) -> Vec<Vec<usize>> {
    assert!(bound <= 8, "residual oracle bound {bound} exceeds 8");
    let dl = l.dfa();
    WordEnumeration::new(l.alphabet(), bound)
        .filter(|u| {
            let after_u = dl.run_from(dl.initial(), u);
            behaviour_representatives(k, l, after_u).iter().all(|w| {
                let mut uw = u.clone();
                uw.extend_from_slice(w);
                l.accepts_word(&uw)
            })
        })
        .collect()
}

/// Words of length at most `bound` grouped by their behaviour under all
/// two-sided contexts `s·_·t` with `|s|, |t| ≤ bound`. Classes are listed by
/// first member; members in length-lex order.
pub fn oracle_syntactic_classes(l: &RegularLanguage, bound: usize) -> Vec<Vec<Vec<usize>>> {
    assert!(bound <= 6, "class oracle bound {bound} exceeds 6");
    let words = words_up_to(l.alphabet(), bound);
    let mut classes: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut index: HashMap<Vec<bool>, usize> = HashMap::new();
    for w in &words {
        let mut profile = Vec::with_capacity(words.len() * words.len());
        for s in &words {
            for t in &words {
                let mut swt = s.clone();
                swt.extend_from_slice(w);
                swt.extend_from_slice(t);
                profile.push(l.accepts_word(&swt));
            }
        }
        match index.get(&profile) {
            Some(&c) => classes[c].push(w.clone()),
            None => {
                index.insert(profile, classes.len());
                classes.push(vec![w.clone()]);
            }
        }
    }
    classes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lang(re: &str, alpha: &str) -> RegularLanguage {
        RegularLanguage::parse(re, &Alphabet::parse(alpha).unwrap()).unwrap()
    }

    #[test]
    fn enumeration_order() {
        let ab = Alphabet::parse("ab").unwrap();
        let w: Vec<String> = WordEnumeration::new(&ab, 2).map(|w| ab.decode(&w)).collect();
        assert_eq!(w, ["", "a", "b", "aa", "ab", "ba", "bb"]);
        assert_eq!(words_up_to(&ab, 5).len(), 63);
        let empty = Alphabet::parse("").unwrap();
        assert_eq!(words_up_to(&empty, 4), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn membership_examples() {
        assert!(oracle_membership(&lang("0", "a"), 12).is_empty());
        assert_eq!(oracle_membership(&lang("(aaa)*", "a"), 6), vec![vec![], vec![0; 3], vec![0; 6]]);
        assert_eq!(oracle_membership(&lang("a*", "a"), 1), vec![vec![], vec![0]]);
    }

    #[test]
    fn residual_examples() {
        let l = lang("(a|b)*abba*", "ab");
        assert_eq!(oracle_residual_left(&lang("1", "ab"), &l, 6), oracle_membership(&l, 6));
        assert!(oracle_residual_left(&lang("b*", "ab"), &lang("a*", "ab"), 6).is_empty());
        let l2 = lang("aa(aaa)*", "a");
        assert_eq!(oracle_residual_left(&lang("a(aaa)*", "a"), &lang("(aaa)*", "a"), 8), oracle_membership(&l2, 8));
        assert_eq!(oracle_residual_right(&lang("(aaa)*", "a"), &lang("a(aaa)*", "a"), 8), oracle_membership(&l2, 8));
    }

    #[test]
    fn class_examples() {
        assert_eq!(oracle_syntactic_classes(&lang("(a|b)*", "ab"), 3).len(), 1);
        let classes = oracle_syntactic_classes(&lang("(aaa)*", "a"), 6);
        assert_eq!(classes.len(), 3);
        for (r, c) in classes.iter().enumerate() {
            assert!(c.iter().all(|w| w.len() % 3 == r));
        }
    }
}
