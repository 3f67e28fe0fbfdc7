//! ω-terms: words built from letters, concatenation and the ω-power.
//!
//! Concrete syntax: juxtaposition concatenates, a `^w` suffix takes the
//! ω-power, parentheses group, and `1` is the empty word. Whitespace
//! between factors is ignored, so `x^w x` and `x^wx` are the same term.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::lang::{FiniteMonoid, RESERVED};

use super::{ProfiniteError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OmegaTerm {
    EmptyWord,
    Letter(char),
    /// At least two factors, none of them a `Concat` or `EmptyWord`.
    Concat(Vec<OmegaTerm>),
    OmegaPower(Box<OmegaTerm>),
}

impl OmegaTerm {
    /// Flattens nested products and drops empty words.
    pub fn concat(parts: impl IntoIterator<Item = OmegaTerm>) -> OmegaTerm {
        let mut flat = Vec::new();
        for p in parts {
            match p {
                OmegaTerm::EmptyWord => {}
                OmegaTerm::Concat(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => OmegaTerm::EmptyWord,
            1 => flat.pop().expect("one factor"),
            _ => OmegaTerm::Concat(flat),
        }
    }

    pub fn omega(t: OmegaTerm) -> OmegaTerm {
        OmegaTerm::OmegaPower(Box::new(t))
    }

    pub fn word(letters: &str) -> OmegaTerm {
        OmegaTerm::concat(letters.chars().map(OmegaTerm::Letter))
    }

    pub fn letters(&self) -> BTreeSet<char> {
        let mut out = BTreeSet::new();
        self.collect_letters(&mut out);
        out
    }

    fn collect_letters(&self, out: &mut BTreeSet<char>) {
        match self {
            OmegaTerm::EmptyWord => {}
            OmegaTerm::Letter(c) => {
                out.insert(*c);
            }
            OmegaTerm::Concat(v) => v.iter().for_each(|t| t.collect_letters(out)),
            OmegaTerm::OmegaPower(t) => t.collect_letters(out),
        }
    }

    /// Homomorphic evaluation; `x^w` is the idempotent power of `x`.
    pub fn eval(&self, m: &FiniteMonoid, assign: &impl Fn(char) -> Option<usize>) -> Result<usize> {
        Ok(match self {
            OmegaTerm::EmptyWord => m.identity(),
            OmegaTerm::Letter(c) => {
                let x = assign(*c).ok_or(ProfiniteError::Unassigned(*c))?;
                if x >= m.len() {
                    return Err(ProfiniteError::Unassigned(*c));
                }
                x
            }
            OmegaTerm::Concat(v) => {
                let mut acc = m.identity();
                for t in v {
                    acc = m.mul(acc, t.eval(m, assign)?);
                }
                acc
            }
            OmegaTerm::OmegaPower(t) => m.omega_power(t.eval(m, assign)?),
        })
    }

    /// Replaces every letter in `sigma` by its image; other letters stay.
    pub fn substitute(&self, sigma: &HashMap<char, OmegaTerm>) -> OmegaTerm {
        match self {
            OmegaTerm::EmptyWord => OmegaTerm::EmptyWord,
            OmegaTerm::Letter(c) => sigma.get(c).cloned().unwrap_or(OmegaTerm::Letter(*c)),
            OmegaTerm::Concat(v) => OmegaTerm::concat(v.iter().map(|t| t.substitute(sigma))),
            OmegaTerm::OmegaPower(t) => OmegaTerm::omega(t.substitute(sigma)),
        }
    }

    pub fn parse(text: &str) -> Result<OmegaTerm> {
        let chars: Vec<(usize, char)> = text.chars().enumerate().collect();
        let mut p = TermParser { chars, at: 0 };
        let t = p.product()?;
        p.skip_ws();
        match p.peek() {
            None => Ok(t),
            Some((pos, c)) => Err(ProfiniteError::Syntax { pos, msg: format!("unexpected '{c}'") }),
        }
    }
}

struct TermParser {
    chars: Vec<(usize, char)>,
    at: usize,
}

impl TermParser {
    fn peek(&self) -> Option<(usize, char)> {
        self.chars.get(self.at).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some((_, c)) if c.is_whitespace()) {
            self.at += 1;
        }
    }

    fn product(&mut self) -> Result<OmegaTerm> {
        let mut parts = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some((_, ')')) => break,
                _ => parts.push(self.factor()?),
            }
        }
        Ok(OmegaTerm::concat(parts))
    }

    fn factor(&mut self) -> Result<OmegaTerm> {
        let mut t = self.atom()?;
        while let Some((pos, '^')) = self.peek() {
            self.at += 1;
            match self.peek() {
                Some((_, 'w')) => {
                    self.at += 1;
                    t = OmegaTerm::omega(t);
                }
                _ => return Err(ProfiniteError::Syntax { pos, msg: "'^' must be followed by 'w'".into() }),
            }
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<OmegaTerm> {
        let (pos, c) = self.peek().expect("caller checked for input");
        self.at += 1;
        match c {
            '1' => Ok(OmegaTerm::EmptyWord),
            '(' => {
                let inner = self.product()?;
                match self.peek() {
                    Some((_, ')')) => {
                        self.at += 1;
                        Ok(inner)
                    }
                    _ => Err(ProfiniteError::Syntax { pos, msg: "unclosed '('".into() }),
                }
            }
            _ if RESERVED.contains(&c) => Err(ProfiniteError::Syntax { pos, msg: format!("unexpected '{c}'") }),
            _ => Ok(OmegaTerm::Letter(c)),
        }
    }
}

impl fmt::Display for OmegaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaTerm::EmptyWord => write!(f, "1"),
            OmegaTerm::Letter(c) => write!(f, "{c}"),
            OmegaTerm::Concat(v) => {
                for (i, t) in v.iter().enumerate() {
                    // a space keeps "x^w x" from reading as one token
                    if i > 0 && matches!(v[i - 1], OmegaTerm::OmegaPower(_)) {
                        write!(f, " ")?;
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
            OmegaTerm::OmegaPower(t) => match **t {
                OmegaTerm::Letter(_) | OmegaTerm::OmegaPower(_) | OmegaTerm::EmptyWord => write!(f, "{t}^w"),
                OmegaTerm::Concat(_) => write!(f, "({t})^w"),
            },
        }
    }
}
