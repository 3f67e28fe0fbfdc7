//! Equations between ω-terms and equation files.
//!
//! An equation file is UTF-8 text with one equation per line and `#`
//! starting a comment. The first non-blank line declares the alphabet:
//!
//! ```text
//! alphabet: a b
//! a^w a <-> a^w
//! ab <= ba       # context inequality
//! ```

use std::collections::HashMap;
use std::fmt;

use crate::lang::Alphabet;

use super::{OmegaTerm, ProfiniteError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EqKind {
    /// `u -> v`: membership of `v` implies membership of `u`.
    Arrow,
    /// `u <-> v`: both arrows.
    Symmetric,
    /// `u <= v`: every context accepting `v` accepts `u`.
    Inequality,
}

impl EqKind {
    pub fn symbol(self) -> &'static str {
        match self {
            EqKind::Arrow => "->",
            EqKind::Symmetric => "<->",
            EqKind::Inequality => "<=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Equation {
    pub kind: EqKind,
    pub lhs: OmegaTerm,
    pub rhs: OmegaTerm,
}

impl Equation {
    pub fn new(kind: EqKind, lhs: OmegaTerm, rhs: OmegaTerm) -> Self {
        Equation { kind, lhs, rhs }
    }

    pub fn parse(text: &str) -> Result<Equation> {
        // "<->" must be tried before "->"
        for kind in [EqKind::Symmetric, EqKind::Inequality, EqKind::Arrow] {
            let sym = kind.symbol();
            if let Some(at) = text.find(sym) {
                let lhs = OmegaTerm::parse(&text[..at])?;
                let offset = text[..at + sym.len()].chars().count();
                let rhs = OmegaTerm::parse(&text[at + sym.len()..]).map_err(|e| e.shifted(offset))?;
                return Ok(Equation { kind, lhs, rhs });
            }
        }
        Err(ProfiniteError::Syntax { pos: 0, msg: "expected '->', '<->' or '<='".into() })
    }

    pub fn letters(&self) -> std::collections::BTreeSet<char> {
        let mut s = self.lhs.letters();
        s.extend(self.rhs.letters());
        s
    }

    pub fn substitute(&self, sigma: &HashMap<char, OmegaTerm>) -> Equation {
        Equation { kind: self.kind, lhs: self.lhs.substitute(sigma), rhs: self.rhs.substitute(sigma) }
    }

    /// Fails on the first letter outside `alphabet`.
    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        match self.letters().into_iter().find(|&c| alphabet.index_of(c).is_none()) {
            Some(c) => Err(ProfiniteError::LetterOutsideAlphabet(c)),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.kind.symbol(), self.rhs)
    }
}

/// `substitute(e, σ)`, the homomorphic image of an equation.
pub fn substitute(e: &Equation, sigma: &HashMap<char, OmegaTerm>) -> Equation {
    e.substitute(sigma)
}

/// Equations over one declared alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationSet {
    pub alphabet: Alphabet,
    pub equations: Vec<Equation>,
}

impl EquationSet {
    pub fn new(alphabet: Alphabet, equations: Vec<Equation>) -> Result<Self> {
        for e in &equations {
            e.check_alphabet(&alphabet)?;
        }
        Ok(EquationSet { alphabet, equations })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut alphabet: Option<Alphabet> = None;
        let mut equations = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at_line = |e: ProfiniteError| ProfiniteError::AtLine { line: line_no, source: Box::new(e) };
            match &alphabet {
                None => {
                    let rest = line.strip_prefix("alphabet:").ok_or_else(|| {
                        at_line(ProfiniteError::Syntax { pos: 0, msg: "expected header 'alphabet: …'".into() })
                    })?;
                    alphabet = Some(Alphabet::parse(rest).map_err(|e| at_line(e.into()))?);
                }
                Some(a) => {
                    let e = Equation::parse(line).map_err(at_line)?;
                    e.check_alphabet(a).map_err(at_line)?;
                    equations.push(e);
                }
            }
        }
        let alphabet = alphabet.ok_or(ProfiniteError::Syntax { pos: 0, msg: "missing 'alphabet:' header".into() })?;
        Ok(EquationSet { alphabet, equations })
    }

    pub fn all_symmetric(&self) -> bool {
        self.equations.iter().all(|e| e.kind == EqKind::Symmetric)
    }
}

impl fmt::Display for EquationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let syms: Vec<String> = self.alphabet.symbols().iter().map(|c| c.to_string()).collect();
        writeln!(f, "alphabet: {}", syms.join(" "))?;
        for e in &self.equations {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}
