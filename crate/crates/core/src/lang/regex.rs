//! Regular expressions over a fixed alphabet.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! union  := concat ('|' concat)*
//! concat := postfix*            (an empty concat is the empty word)
//! postfix:= atom ('*' | '+')*
//! atom   := letter | '0' | '1' | '(' union ')'
//! ```
//!
//! `0` is the empty language and `1` the empty word. Whitespace is ignored.

use std::fmt;

use super::nfa::Nfa;
use super::{Alphabet, Dfa, LangError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Regex {
    Empty,
    Epsilon,
    Letter(usize),
    Concat(Box<Regex>, Box<Regex>),
    Union(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
    Plus(Box<Regex>),
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<(usize, char)> {
        self.chars.get(self.at).copied()
    }

    fn end_pos(&self) -> usize {
        self.chars.last().map_or(0, |&(p, _)| p + 1)
    }

    fn union(&mut self) -> Result<Regex> {
        let mut left = self.concat()?;
        while let Some((_, '|')) = self.peek() {
            self.at += 1;
            let right = self.concat()?;
            left = Regex::Union(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn concat(&mut self) -> Result<Regex> {
        let mut acc: Option<Regex> = None;
        while let Some((_, c)) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            let next = self.postfix()?;
            acc = Some(match acc {
                None => next,
                Some(l) => Regex::Concat(Box::new(l), Box::new(next)),
            });
        }
        Ok(acc.unwrap_or(Regex::Epsilon))
    }

    fn postfix(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        loop {
            match self.peek() {
                Some((_, '*')) => r = Regex::Star(Box::new(r)),
                Some((_, '+')) => r = Regex::Plus(Box::new(r)),
                _ => return Ok(r),
            }
            self.at += 1;
        }
    }

    fn atom(&mut self) -> Result<Regex> {
        let (pos, c) = self.peek().expect("caller checked for input");
        self.at += 1;
        match c {
            '0' => Ok(Regex::Empty),
            '1' => Ok(Regex::Epsilon),
            '(' => {
                let inner = self.union()?;
                match self.peek() {
                    Some((_, ')')) => {
                        self.at += 1;
                        Ok(inner)
                    }
                    Some((p, c)) => Err(LangError::Syntax { pos: p, msg: format!("expected ')', found '{c}'") }),
                    None => Err(LangError::Syntax { pos: self.end_pos(), msg: format!("unclosed '(' opened at {pos}") }),
                }
            }
            '*' | '+' => Err(LangError::Syntax { pos, msg: format!("'{c}' has no operand") }),
            _ => self
                .alphabet
                .index_of(c)
                .map(Regex::Letter)
                .ok_or(LangError::UnknownSymbol { symbol: c, pos }),
        }
    }
}

/// Parses `text`; positions in errors count characters, whitespace included.
pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<Regex> {
    let chars: Vec<(usize, char)> = text.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut p = Parser { chars, at: 0, alphabet };
    let r = p.union()?;
    match p.peek() {
        None => Ok(r),
        Some((pos, c)) => Err(LangError::Syntax { pos, msg: format!("unexpected '{c}'") }),
    }
}

impl Regex {
    fn build(&self, nfa: &mut Nfa) -> (usize, usize) {
        let s = nfa.add_state();
        let t = nfa.add_state();
        match self {
            Regex::Empty => {}
            Regex::Epsilon => nfa.add_eps(s, t),
            Regex::Letter(a) => nfa.add_edge(s, *a, t),
            Regex::Concat(l, r) => {
                let (ls, lt) = l.build(nfa);
                let (rs, rt) = r.build(nfa);
                nfa.add_eps(s, ls);
                nfa.add_eps(lt, rs);
                nfa.add_eps(rt, t);
            }
            Regex::Union(l, r) => {
                for part in [l, r] {
                    let (ps, pt) = part.build(nfa);
                    nfa.add_eps(s, ps);
                    nfa.add_eps(pt, t);
                }
            }
            Regex::Star(r) | Regex::Plus(r) => {
                let (rs, rt) = r.build(nfa);
                nfa.add_eps(s, rs);
                nfa.add_eps(rt, rs);
                nfa.add_eps(rt, t);
                if matches!(self, Regex::Star(_)) {
                    nfa.add_eps(s, t);
                }
            }
        }
        (s, t)
    }

    pub fn to_nfa(&self, alphabet: &Alphabet) -> Nfa {
        let mut nfa = Nfa::new(alphabet.clone());
        let (s, t) = self.build(&mut nfa);
        nfa.set_initial(s);
        nfa.set_final(t);
        nfa
    }

    pub fn to_dfa(&self, alphabet: &Alphabet) -> Dfa {
        self.to_nfa(alphabet).determinize().minimize()
    }

    /// Renders with explicit parentheses; reparsing gives an equal tree.
    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        Shown(self, alphabet)
    }
}

struct Shown<'a>(&'a Regex, &'a Alphabet);

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.1;
        match self.0 {
            Regex::Empty => write!(f, "0"),
            Regex::Epsilon => write!(f, "1"),
            Regex::Letter(i) => write!(f, "{}", a.symbol(*i)),
            Regex::Concat(l, r) => write!(f, "({}{})", Shown(l, a), Shown(r, a)),
            Regex::Union(l, r) => write!(f, "({}|{})", Shown(l, a), Shown(r, a)),
            Regex::Star(r) => write!(f, "({})*", Shown(r, a)),
            Regex::Plus(r) => write!(f, "({})+", Shown(r, a)),
        }
    }
}
