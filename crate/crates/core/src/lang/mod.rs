//! Regular languages over finite alphabets and their recognizing monoids.
//!
//! A [`RegularLanguage`] is always held as its canonical minimal complete
//! DFA, so structural equality is language equality. Monoid-level
//! constructions (syntactic morphism, images, products) live in
//! [`morphism`].
//!
//! Order convention used throughout the crate: for a morphism with accepting
//! set `P`, `m ≼ n` holds in the syntactic quasiorder when every context
//! `s·_·t` that sends `n` into `P` also sends `m` into `P`. The profinite
//! module reads `u ≤ v` with the same orientation.

pub mod dfa;
pub mod io;
pub mod language;
pub mod monoid;
pub mod morphism;
pub mod nfa;
pub mod regex;

use std::fmt;

use thiserror::Error;

pub use dfa::Dfa;
pub use language::{residual_left, residual_right, RegularLanguage};
pub use monoid::FiniteMonoid;
pub use morphism::{image, product_morphism, product_of, syntactic_morphism, syntactic_quasiorder, ProductMorphism, RecognizingMorphism};
pub use regex::{parse_regex, Regex};

/// Characters with a meaning in the regex or term syntax.
pub const RESERVED: &[char] = &['0', '1', '(', ')', '|', '*', '+', '^', ',', '#', '-', '<', '>', '=', ':', '"', '\\'];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LangError {
    #[error("alphabets differ: {0} vs {1}")]
    AlphabetMismatch(Alphabet, Alphabet),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("symbol '{symbol}' at position {pos} is not in the alphabet")]
    UnknownSymbol { symbol: char, pos: usize },
    #[error("'{0}' cannot be used as an alphabet symbol")]
    ReservedSymbol(char),
    #[error("invalid automaton: {0}")]
    InvalidDfa(String),
    #[error("monoid law fails: {0}")]
    MonoidLaw(String),
    #[error("invalid morphism: {0}")]
    BadMorphism(String),
}

pub type Result<T> = std::result::Result<T, LangError>;

/// A sorted, duplicate-free set of symbols. Letter `i` is `symbols()[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let mut symbols: Vec<char> = symbols.into_iter().collect();
        if let Some(&c) = symbols.iter().find(|c| RESERVED.contains(c) || c.is_whitespace()) {
            return Err(LangError::ReservedSymbol(c));
        }
        symbols.sort_unstable();
        symbols.dedup();
        Ok(Alphabet { symbols })
    }

    /// Parses `"a,b"`, `"a b"` or `"ab"`.
    pub fn parse(text: &str) -> Result<Self> {
        Alphabet::new(text.chars().filter(|c| *c != ',' && !c.is_whitespace()))
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.symbols.binary_search(&c).ok()
    }

    pub fn symbol(&self, i: usize) -> char {
        self.symbols[i]
    }

    /// Letter indices of a word, or the first unknown symbol.
    pub fn encode(&self, word: &str) -> Result<Vec<usize>> {
        word.chars()
            .enumerate()
            .map(|(pos, c)| self.index_of(c).ok_or(LangError::UnknownSymbol { symbol: c, pos }))
            .collect()
    }

    pub fn decode(&self, word: &[usize]) -> String {
        word.iter().map(|&i| self.symbols[i]).collect()
    }

    pub fn check_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(LangError::AlphabetMismatch(self.clone(), other.clone()))
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.symbols.iter().map(|c| c.to_string()).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

/// Printable form of a word; the empty word prints as `1`.
pub fn word_label(alphabet: &Alphabet, word: &[usize]) -> String {
    if word.is_empty() {
        "1".to_string()
    } else {
        alphabet.decode(word)
    }
}
