//! Complete deterministic automata, minimization and canonical numbering.

use std::collections::{HashMap, VecDeque};

use super::{Alphabet, LangError, Result};

/// A complete DFA: `delta[state][letter]` is defined for every pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dfa {
    pub(crate) alphabet: Alphabet,
    pub(crate) initial: usize,
    pub(crate) finals: Vec<bool>,
    pub(crate) delta: Vec<Vec<usize>>,
}

impl Dfa {
    pub fn new(alphabet: Alphabet, initial: usize, finals: Vec<bool>, delta: Vec<Vec<usize>>) -> Result<Self> {
        let n = delta.len();
        if n == 0 {
            return Err(LangError::InvalidDfa("no states".into()));
        }
        if finals.len() != n {
            return Err(LangError::InvalidDfa(format!("{} final flags for {} states", finals.len(), n)));
        }
        if initial >= n {
            return Err(LangError::InvalidDfa(format!("initial state {initial} out of range")));
        }
        for (q, row) in delta.iter().enumerate() {
            if row.len() != alphabet.len() {
                return Err(LangError::InvalidDfa(format!(
                    "state {q} has {} transitions, alphabet has {} letters",
                    row.len(),
                    alphabet.len()
                )));
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return Err(LangError::InvalidDfa(format!("transition from {q} to missing state {t}")));
            }
        }
        Ok(Dfa { alphabet, initial, finals, delta })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn finals(&self) -> Vec<usize> {
        (0..self.states()).filter(|&q| self.finals[q]).collect()
    }

    pub fn step(&self, q: usize, letter: usize) -> usize {
        self.delta[q][letter]
    }

    pub fn transitions(&self) -> &[Vec<usize>] {
        &self.delta
    }

    pub fn run_from(&self, q: usize, word: &[usize]) -> usize {
        word.iter().fold(q, |q, &a| self.delta[q][a])
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.finals[self.run_from(self.initial, word)]
    }

    /// Minimal complete automaton with states numbered in breadth-first
    /// order from the initial state, letters taken in alphabet order.
    pub fn minimize(&self) -> Dfa {
        let order = self.bfs_order();
        let reachable = Dfa {
            alphabet: self.alphabet.clone(),
            initial: 0,
            finals: order.iter().map(|&q| self.finals[q]).collect(),
            delta: {
                let index: HashMap<usize, usize> = order.iter().enumerate().map(|(i, &q)| (q, i)).collect();
                order.iter().map(|&q| self.delta[q].iter().map(|t| index[t]).collect()).collect()
            },
        };
        reachable.quotient(&reachable.equivalence_classes()).renumber()
    }

    fn bfs_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.states()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            for &t in &self.delta[q] {
                if !seen[t] {
                    seen[t] = true;
                    order.push(t);
                    queue.push_back(t);
                }
            }
        }
        order
    }

    /// Moore partition refinement; returns the class of every state.
    fn equivalence_classes(&self) -> Vec<usize> {
        let n = self.states();
        let mut class: Vec<usize> = (0..n).map(|q| usize::from(self.finals[q])).collect();
        let mut count = class.iter().copied().collect::<std::collections::BTreeSet<_>>().len();
        loop {
            let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let next: Vec<usize> = (0..n)
                .map(|q| {
                    let sig = (class[q], self.delta[q].iter().map(|&t| class[t]).collect::<Vec<_>>());
                    let fresh = ids.len();
                    *ids.entry(sig).or_insert(fresh)
                })
                .collect();
            let new_count = ids.len();
            class = next;
            if new_count == count {
                return class;
            }
            count = new_count;
        }
    }

    fn quotient(&self, class: &[usize]) -> Dfa {
        let k = class.iter().max().map_or(0, |m| m + 1);
        let mut finals = vec![false; k];
        let mut delta = vec![Vec::new(); k];
        for q in 0..self.states() {
            let c = class[q];
            finals[c] = self.finals[q];
            if delta[c].is_empty() {
                delta[c] = self.delta[q].iter().map(|&t| class[t]).collect();
            }
        }
        // an empty alphabet leaves rows empty, which is already correct
        Dfa { alphabet: self.alphabet.clone(), initial: class[self.initial], finals, delta }
    }

    fn renumber(&self) -> Dfa {
        let order = self.bfs_order();
        let mut index = vec![usize::MAX; self.states()];
        for (i, &q) in order.iter().enumerate() {
            index[q] = i;
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            initial: 0,
            finals: order.iter().map(|&q| self.finals[q]).collect(),
            delta: order.iter().map(|&q| self.delta[q].iter().map(|&t| index[t]).collect()).collect(),
        }
    }

    /// Synchronous product; `accept` combines the two final flags.
    pub fn product(&self, other: &Dfa, accept: impl Fn(bool, bool) -> bool) -> Result<Dfa> {
        self.alphabet.check_same(&other.alphabet)?;
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        index.insert(pairs[0], 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let mut row = Vec::with_capacity(self.alphabet.len());
            for a in 0..self.alphabet.len() {
                let t = (self.delta[p][a], other.delta[q][a]);
                let fresh = pairs.len();
                let id = *index.entry(t).or_insert_with(|| {
                    pairs.push(t);
                    fresh
                });
                row.push(id);
            }
            delta.push(row);
            i += 1;
        }
        let finals = pairs.iter().map(|&(p, q)| accept(self.finals[p], other.finals[q])).collect();
        Ok(Dfa { alphabet: self.alphabet.clone(), initial: 0, finals, delta })
    }

    pub fn complement(&self) -> Dfa {
        Dfa { finals: self.finals.iter().map(|f| !f).collect(), ..self.clone() }
    }

    /// A shortest accepted word, if any.
    pub fn shortest_accepted(&self) -> Option<Vec<usize>> {
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.states()];
        let mut seen = vec![false; self.states()];
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            if self.finals[q] {
                let mut word = Vec::new();
                let mut cur = q;
                while let Some((prev, a)) = parent[cur] {
                    word.push(a);
                    cur = prev;
                }
                word.reverse();
                return Some(word);
            }
            for (a, &t) in self.delta[q].iter().enumerate() {
                if !seen[t] {
                    seen[t] = true;
                    parent[t] = Some((q, a));
                    queue.push_back(t);
                }
            }
        }
        None
    }
}
