//! Nondeterministic automata with ε-moves and the subset construction.

use std::collections::HashMap;

use crate::bitset::BitSet;

use super::{Alphabet, Dfa};

#[derive(Debug, Clone)]
pub struct Nfa {
    alphabet: Alphabet,
    eps: Vec<Vec<usize>>,
    trans: Vec<Vec<Vec<usize>>>,
    initial: Vec<usize>,
    finals: Vec<usize>,
}

impl Nfa {
    pub fn new(alphabet: Alphabet) -> Self {
        Nfa { alphabet, eps: Vec::new(), trans: Vec::new(), initial: Vec::new(), finals: Vec::new() }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn add_state(&mut self) -> usize {
        self.eps.push(Vec::new());
        self.trans.push(vec![Vec::new(); self.alphabet.len()]);
        self.eps.len() - 1
    }

    pub fn states(&self) -> usize {
        self.eps.len()
    }

    pub fn add_eps(&mut self, from: usize, to: usize) {
        self.eps[from].push(to);
    }

    pub fn add_edge(&mut self, from: usize, letter: usize, to: usize) {
        self.trans[from][letter].push(to);
    }

    pub fn set_initial(&mut self, q: usize) {
        self.initial.push(q);
    }

    pub fn set_final(&mut self, q: usize) {
        self.finals.push(q);
    }

    /// Copies every state of `dfa` into this automaton; returns the offset.
    pub fn embed(&mut self, dfa: &Dfa) -> usize {
        let base = self.states();
        for _ in 0..dfa.states() {
            self.add_state();
        }
        for q in 0..dfa.states() {
            for a in 0..self.alphabet.len() {
                self.add_edge(base + q, a, base + dfa.step(q, a));
            }
        }
        base
    }

    fn closure(&self, set: &mut BitSet) {
        let mut stack: Vec<usize> = set.iter().collect();
        while let Some(q) = stack.pop() {
            for &t in &self.eps[q] {
                if !set.contains(t) {
                    set.insert(t);
                    stack.push(t);
                }
            }
        }
    }

    /// Subset construction. The result is complete; the empty subset serves
    /// as the sink when it is reached.
    pub fn determinize(&self) -> Dfa {
        let n = self.states();
        let mut start = BitSet::from_indices(n, self.initial.iter().copied());
        self.closure(&mut start);
        let finals_set = BitSet::from_indices(n, self.finals.iter().copied());
        let mut index: HashMap<BitSet, usize> = HashMap::new();
        let mut subsets = vec![start.clone()];
        index.insert(start, 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < subsets.len() {
            let cur = subsets[i].clone();
            let mut row = Vec::with_capacity(self.alphabet.len());
            for a in 0..self.alphabet.len() {
                let mut next = BitSet::empty(n);
                for q in cur.iter() {
                    for &t in &self.trans[q][a] {
                        next.insert(t);
                    }
                }
                self.closure(&mut next);
                let fresh = subsets.len();
                let id = *index.entry(next.clone()).or_insert_with(|| {
                    subsets.push(next);
                    fresh
                });
                row.push(id);
            }
            delta.push(row);
            i += 1;
        }
        let finals = subsets.iter().map(|s| s.intersects(&finals_set)).collect();
        Dfa::new(self.alphabet.clone(), 0, finals, delta).expect("subset construction is complete")
    }
}
