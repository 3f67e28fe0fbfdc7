//! JSON and DOT formats for automata, monoids and recognizing morphisms.
//!
//! DFA: `{"alphabet":["a","b"],"states":N,"initial":0,"finals":[…],"delta":[[…],…]}`
//! with one row per state and one entry per letter.
//! Monoid: `{"elements":[labels],"identity":i,"table":[[…],…]}`.
//! Morphism: `{"alphabet":[…],"monoid":{…},"letter_map":[…],"accepting":[…]}`.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;

use super::{Alphabet, Dfa, FiniteMonoid, LangError, RecognizingMorphism, RegularLanguage, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfaJson {
    pub alphabet: Vec<String>,
    pub states: usize,
    pub initial: usize,
    pub finals: Vec<usize>,
    pub delta: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidJson {
    pub elements: Vec<String>,
    pub identity: usize,
    pub table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub alphabet: Vec<String>,
    pub monoid: MonoidJson,
    pub letter_map: Vec<usize>,
    pub accepting: Vec<usize>,
}

fn alphabet_to_json(a: &Alphabet) -> Vec<String> {
    a.symbols().iter().map(|c| c.to_string()).collect()
}

fn alphabet_from_json(symbols: &[String]) -> Result<Alphabet> {
    let mut chars = Vec::with_capacity(symbols.len());
    for s in symbols {
        let mut it = s.chars();
        match (it.next(), it.next()) {
            (Some(c), None) => chars.push(c),
            _ => return Err(LangError::InvalidDfa(format!("alphabet symbol {s:?} is not a single character"))),
        }
    }
    let a = Alphabet::new(chars.iter().copied())?;
    if a.symbols() != chars.as_slice() {
        return Err(LangError::InvalidDfa("alphabet must be sorted and without repeats".into()));
    }
    Ok(a)
}

impl DfaJson {
    pub fn from_dfa(d: &Dfa) -> Self {
        DfaJson {
            alphabet: alphabet_to_json(d.alphabet()),
            states: d.states(),
            initial: d.initial(),
            finals: d.finals(),
            delta: d.transitions().to_vec(),
        }
    }

    pub fn to_dfa(&self) -> Result<Dfa> {
        let alphabet = alphabet_from_json(&self.alphabet)?;
        if self.delta.len() != self.states {
            return Err(LangError::InvalidDfa(format!("{} rows for {} states", self.delta.len(), self.states)));
        }
        if let Some(&q) = self.finals.iter().find(|&&q| q >= self.states) {
            return Err(LangError::InvalidDfa(format!("final state {q} out of range")));
        }
        let mut finals = vec![false; self.states];
        for &q in &self.finals {
            finals[q] = true;
        }
        Dfa::new(alphabet, self.initial, finals, self.delta.clone())
    }

    pub fn to_language(&self) -> Result<RegularLanguage> {
        Ok(RegularLanguage::from_dfa(self.to_dfa()?))
    }
}

impl MonoidJson {
    pub fn from_monoid(m: &FiniteMonoid) -> Self {
        MonoidJson { elements: m.labels().to_vec(), identity: m.identity(), table: m.table().to_vec() }
    }

    pub fn to_monoid(&self) -> Result<FiniteMonoid> {
        FiniteMonoid::new(self.elements.clone(), self.table.clone(), self.identity)
    }
}

impl MorphismJson {
    pub fn from_morphism(eta: &RecognizingMorphism) -> Self {
        MorphismJson {
            alphabet: alphabet_to_json(eta.alphabet()),
            monoid: MonoidJson::from_monoid(eta.monoid()),
            letter_map: eta.letter_images().to_vec(),
            accepting: eta.accepting().to_vec(),
        }
    }

    pub fn to_morphism(&self) -> Result<RecognizingMorphism> {
        let alphabet = alphabet_from_json(&self.alphabet)?;
        let monoid = self.monoid.to_monoid()?;
        if let Some(&m) = self.accepting.iter().find(|&&m| m >= monoid.len()) {
            return Err(LangError::BadMorphism(format!("accepting element {m} out of range")));
        }
        let accepting = BitSet::from_indices(monoid.len(), self.accepting.iter().copied());
        RecognizingMorphism::new(alphabet, monoid, self.letter_map.clone(), accepting)
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Automaton as a graph; parallel edges are merged with comma-joined labels.
pub fn dfa_dot(d: &Dfa, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", escape(name)).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    writeln!(out, "  start [shape=point];").unwrap();
    for q in 0..d.states() {
        let shape = if d.is_final(q) { "doublecircle" } else { "circle" };
        writeln!(out, "  q{q} [shape={shape}];").unwrap();
    }
    writeln!(out, "  start -> q{};", d.initial()).unwrap();
    for q in 0..d.states() {
        let mut targets: Vec<(usize, Vec<char>)> = Vec::new();
        for (a, &t) in d.transitions()[q].iter().enumerate() {
            let c = d.alphabet().symbol(a);
            match targets.iter_mut().find(|(x, _)| *x == t) {
                Some((_, v)) => v.push(c),
                None => targets.push((t, vec![c])),
            }
        }
        for (t, letters) in targets {
            let label: Vec<String> = letters.iter().map(|c| c.to_string()).collect();
            writeln!(out, "  q{q} -> q{t} [label=\"{}\"];", escape(&label.join(","))).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// Right Cayley graph of a recognizing morphism: `m → m·η(a)`.
pub fn morphism_dot(eta: &RecognizingMorphism, name: &str) -> String {
    let m = eta.monoid();
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", escape(name)).unwrap();
    for x in 0..m.len() {
        let shape = if eta.accepting().contains(x) { "doublecircle" } else { "circle" };
        writeln!(out, "  m{x} [label=\"{}\", shape={shape}];", escape(m.label(x))).unwrap();
    }
    for x in 0..m.len() {
        for (a, &g) in eta.letter_images().iter().enumerate() {
            writeln!(out, "  m{x} -> m{} [label=\"{}\"];", m.mul(x, g), eta.alphabet().symbol(a)).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// Aligned multiplication table with row and column labels.
pub fn monoid_table_text(m: &FiniteMonoid) -> String {
    let w = m.labels().iter().map(|l| l.chars().count()).max().unwrap_or(1);
    let mut out = String::new();
    write!(out, "{:>w$} |", "·").unwrap();
    for l in m.labels() {
        write!(out, " {l:>w$}").unwrap();
    }
    out.push('\n');
    writeln!(out, "{}", "-".repeat(w + 2 + (w + 1) * m.len())).unwrap();
    for (x, l) in m.labels().iter().enumerate() {
        write!(out, "{l:>w$} |").unwrap();
        for y in 0..m.len() {
            write!(out, " {:>w$}", m.label(m.mul(x, y))).unwrap();
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::syntactic_morphism;

    #[test]
    fn dfa_round_trip() {
        let a = Alphabet::parse("ab").unwrap();
        let l = RegularLanguage::parse("a*b", &a).unwrap();
        let js = serde_json::to_string(&DfaJson::from_dfa(l.dfa())).unwrap();
        assert_eq!(js, r#"{"alphabet":["a","b"],"states":3,"initial":0,"finals":[1],"delta":[[0,1],[2,2],[2,2]]}"#);
        let back: DfaJson = serde_json::from_str(&js).unwrap();
        assert_eq!(back.to_language().unwrap(), l);
        assert_eq!(serde_json::to_string(&back).unwrap(), js);
    }

    #[test]
    fn bad_dfa_json() {
        let js = r#"{"alphabet":["b","a"],"states":1,"initial":0,"finals":[],"delta":[[0,0]]}"#;
        let d: DfaJson = serde_json::from_str(js).unwrap();
        assert!(d.to_dfa().is_err());
        let js = r#"{"alphabet":["a"],"states":1,"initial":0,"finals":[4],"delta":[[0]]}"#;
        let d: DfaJson = serde_json::from_str(js).unwrap();
        assert!(d.to_dfa().is_err());
    }

    #[test]
    fn morphism_round_trip() {
        let a = Alphabet::parse("a").unwrap();
        let eta = syntactic_morphism(&RegularLanguage::parse("(aaa)*", &a).unwrap());
        let js = MorphismJson::from_morphism(&eta);
        let text = serde_json::to_string(&js).unwrap();
        assert_eq!(
            text,
            r#"{"alphabet":["a"],"monoid":{"elements":["1","a","aa"],"identity":0,"table":[[0,1,2],[1,2,0],[2,0,1]]},"letter_map":[1],"accepting":[0]}"#
        );
        let back: MorphismJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_morphism().unwrap(), eta);
        assert!(monoid_table_text(eta.monoid()).contains("aa | aa  1  a"));
    }
}
