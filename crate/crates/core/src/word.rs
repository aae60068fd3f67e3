//! Words over the alphabet `{x, y}`: the monomials of the Hoffman algebra.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    X,
    Y,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::X => 'x',
            Letter::Y => 'y',
        }
    }
}

/// A finite word in `x`, `y`. The empty word is the unit.
///
/// Words are ordered degree-lexicographically with `x < y`; this order fixes
/// both serialization and matrix column order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() + other.0.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// `true` for the empty word and for words ending in `y`.
    pub fn in_h1(&self) -> bool {
        self.0.last().is_none_or(|&l| l == Letter::Y)
    }

    /// `true` for the empty word and for words of the form `x...y`.
    pub fn in_h0(&self) -> bool {
        self.0.is_empty() || (self.0[0] == Letter::X && self.0[self.0.len() - 1] == Letter::Y)
    }

    /// All words of the given degree, in increasing order.
    pub fn all_of_degree(degree: usize) -> Vec<Word> {
        assert!(degree < 64, "degree too large to enumerate");
        (0..1u64 << degree)
            .map(|bits| {
                Word(
                    (0..degree)
                        .map(|i| {
                            if bits >> (degree - 1 - i) & 1 == 1 {
                                Letter::Y
                            } else {
                                Letter::X
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }

    /// Basis words of H1 of the given degree, in increasing order.
    pub fn h1_basis(degree: usize) -> Vec<Word> {
        Self::all_of_degree(degree)
            .into_iter()
            .filter(Word::in_h1)
            .collect()
    }

    /// Basis words of H0 of the given degree, in increasing order.
    pub fn h0_basis(degree: usize) -> Vec<Word> {
        Self::all_of_degree(degree)
            .into_iter()
            .filter(Word::in_h0)
            .collect()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    /// Run-length form, e.g. `x^2yxy^3`; the empty word prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        while i < self.0.len() {
            let letter = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == letter {
                run += 1;
            }
            write!(f, "{}", letter.as_char())?;
            if run > 1 {
                write!(f, "^{}", run)?;
            }
            i += run;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = String;

    /// Parses a plain letter string such as `xxy`; `1` or the empty string is the unit.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::empty());
        }
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'x' => Ok(Letter::X),
                'y' => Ok(Letter::Y),
                other => Err(format!("unexpected letter `{}`", other)),
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Word)
    }
}

pub(crate) fn require_h1(word: &Word) -> Result<()> {
    if word.in_h1() {
        Ok(())
    } else {
        Err(Error::NotInH1(word.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn order_is_degree_first() {
        assert!(w("y") < w("xx"));
        assert!(w("xxy") < w("xyx"));
        assert!(w("1") < w("x"));
    }

    #[test]
    fn display_compresses_runs() {
        assert_eq!(w("xxyxyyy").to_string(), "x^2yxy^3");
        assert_eq!(Word::empty().to_string(), "1");
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(Word::h1_basis(0).len(), 1);
        assert_eq!(Word::h1_basis(5).len(), 16);
        assert_eq!(Word::h0_basis(5).len(), 8);
        assert_eq!(Word::h0_basis(1).len(), 0);
        assert_eq!(Word::all_of_degree(3).len(), 8);
    }

    #[test]
    fn subspace_predicates() {
        assert!(w("xy").in_h0());
        assert!(w("y").in_h1() && !w("y").in_h0());
        assert!(!w("x").in_h1());
        assert!(Word::empty().in_h0());
    }
}
