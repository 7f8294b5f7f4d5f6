//! Finite alphabets and words over them.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Letter = u8;

/// An ordered finite alphabet of single-character symbols. Letters are
/// stored as indices into `symbols`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.is_empty() {
            return Err(Error::usage("alphabet must be nonempty"));
        }
        if symbols.len() > usize::from(Letter::MAX) {
            return Err(Error::usage("alphabet is too large"));
        }
        for (i, c) in symbols.iter().enumerate() {
            if symbols[..i].contains(c) {
                return Err(Error::usage(format!("duplicate alphabet symbol {c:?}")));
            }
            if c.is_whitespace() || matches!(c, '(' | ')' | '[' | ']' | ',' | '|' | '.') {
                return Err(Error::usage(format!("symbol {c:?} is reserved")));
            }
        }
        Ok(Alphabet { symbols })
    }

    pub fn binary() -> Self {
        Alphabet {
            symbols: vec!['0', '1'],
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + Clone {
        (0..self.symbols.len()).map(|i| i as Letter)
    }

    pub fn symbol(&self, x: Letter) -> char {
        self.symbols[usize::from(x)]
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn letter(&self, c: char) -> Option<Letter> {
        self.symbols.iter().position(|&s| s == c).map(|i| i as Letter)
    }

    pub fn contains(&self, w: &Word) -> bool {
        w.iter().all(|&x| usize::from(x) < self.symbols.len())
    }

    /// Parse a word; `ε` and the empty string denote the empty word.
    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "ε" {
            return Ok(Word::empty());
        }
        s.chars()
            .enumerate()
            .map(|(i, c)| {
                self.letter(c)
                    .ok_or_else(|| Error::parse(1, i + 1, format!("{c:?} is not in the alphabet")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word::from)
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "ε".to_string();
        }
        w.iter().map(|&x| self.symbol(x)).collect()
    }

    /// All words of exactly length `n`, in lexicographic order.
    pub fn words_of_len(&self, n: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..n {
            out = out
                .iter()
                .flat_map(|w| self.letters().map(move |x| w.pushed(x)))
                .collect();
        }
        out
    }

    /// All words of length at most `n`, in shortlex order.
    pub fn words_up_to(&self, n: usize) -> Vec<Word> {
        (0..=n).flat_map(|k| self.words_of_len(k)).collect()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// A finite word. Ordered shortlex: by length, then lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(x: Letter) -> Self {
        Word(vec![x])
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pushed(&self, x: Letter) -> Word {
        let mut v = self.0.clone();
        v.push(x);
        Word(v)
    }

    pub fn push(&mut self, x: Letter) {
        self.0.push(x);
    }

    pub fn pop(&mut self) -> Option<Letter> {
        self.0.pop()
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    /// Whether one of the two words is a prefix of the other, i.e. the
    /// cylinders they span are nested.
    pub fn comparable(&self, other: &Word) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|s| Word(s.to_vec()))
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n.min(self.0.len())].to_vec())
    }

    pub fn suffix_from(&self, n: usize) -> Word {
        Word(self.0[n.min(self.0.len())..].to_vec())
    }

    pub fn repeat(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    pub fn as_slice(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Letter> {
        self.0
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortlex_order() {
        let a = Alphabet::binary();
        let ws = a.words_up_to(2);
        let shown: Vec<String> = ws.iter().map(|w| a.format_word(w)).collect();
        assert_eq!(shown, ["ε", "0", "1", "00", "01", "10", "11"]);
        let mut sorted = ws.clone();
        sorted.sort();
        assert_eq!(sorted, ws);
    }

    #[test]
    fn parse_round_trip() {
        let a = Alphabet::new("01B".chars()).unwrap();
        let w = a.parse_word("0B1").unwrap();
        assert_eq!(a.format_word(&w), "0B1");
        assert_eq!(a.parse_word("ε").unwrap(), Word::empty());
        assert!(a.parse_word("02").is_err());
    }

    #[test]
    fn rejects_bad_alphabets() {
        assert!(Alphabet::new("".chars()).is_err());
        assert!(Alphabet::new("00".chars()).is_err());
        assert!(Alphabet::new("a(".chars()).is_err());
    }

    #[test]
    fn prefix_relations() {
        let a = Alphabet::binary();
        let w = a.parse_word("01").unwrap();
        let v = a.parse_word("011").unwrap();
        assert!(w.is_prefix_of(&v));
        assert!(w.comparable(&v) && v.comparable(&w));
        assert_eq!(v.strip_prefix(&w), Some(Word::letter(1)));
        assert!(!a.parse_word("1").unwrap().comparable(&w));
    }
}
