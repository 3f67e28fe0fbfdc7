//! JSON and DOT formats for posets and lattices.
//!
//! Poset: `{"elements": [labels], "leq": [[0/1, …], …]}`. A lattice uses
//! the same shape plus an optional `"check_distributive": true`.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{FinLattice, Poset, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub leq: Vec<Vec<u8>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub elements: Vec<String>,
    pub leq: Vec<Vec<u8>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check_distributive: Option<bool>,
}

fn to_bits(m: &[Vec<bool>]) -> Vec<Vec<u8>> {
    m.iter().map(|r| r.iter().map(|&b| u8::from(b)).collect()).collect()
}

fn from_bits(m: &[Vec<u8>]) -> Vec<Vec<bool>> {
    m.iter().map(|r| r.iter().map(|&b| b != 0).collect()).collect()
}

impl PosetJson {
    pub fn from_poset(p: &Poset) -> Self {
        PosetJson { elements: p.labels().to_vec(), leq: to_bits(p.matrix()) }
    }

    pub fn to_poset(&self) -> Result<Poset> {
        Poset::new(self.elements.clone(), from_bits(&self.leq))
    }
}

impl LatticeJson {
    pub fn from_lattice(l: &FinLattice) -> Self {
        LatticeJson { elements: l.labels().to_vec(), leq: to_bits(l.matrix()), check_distributive: None }
    }

    pub fn to_lattice(&self) -> Result<FinLattice> {
        FinLattice::new(self.elements.clone(), from_bits(&self.leq), self.check_distributive.unwrap_or(false))
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram (cover relation only), edges pointing upward.
pub fn hasse_dot(p: &Poset, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", escape(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    for (i, l) in p.labels().iter().enumerate() {
        writeln!(out, "  n{i} [label=\"{}\"];", escape(l)).unwrap();
    }
    for (i, j) in p.covers() {
        writeln!(out, "  n{i} -> n{j};").unwrap();
    }
    out.push_str("}\n");
    out
}
