//! Elements of `Q<x, y>` in canonical sparse form.

use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::index::Index;
use crate::word::{Letter, Word};

pub type Coeff = BigRational;

/// Finite `Q`-linear combination of words. No stored coefficient is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Word, Coeff>,
}

/// The strongest of `H0 ⊂ H1 ⊂ H` containing every word of a polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Subspace {
    H,
    H1,
    H0,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::from_word(Word::empty())
    }

    pub fn x() -> Self {
        Poly::from_word(Word::from_letters(vec![Letter::X]))
    }

    pub fn y() -> Self {
        Poly::from_word(Word::from_letters(vec![Letter::Y]))
    }

    /// `z = x + y`.
    pub fn z() -> Self {
        Poly::x() + Poly::y()
    }

    pub fn from_word(word: Word) -> Self {
        Poly::monomial(word, Coeff::one())
    }

    pub fn monomial(word: Word, coeff: Coeff) -> Self {
        let mut p = Poly::zero();
        p.add_term(word, coeff);
        p
    }

    pub fn constant(coeff: Coeff) -> Self {
        Poly::monomial(Word::empty(), coeff)
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Coeff)>>(terms: I) -> Self {
        let mut p = Poly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    /// Builds an H1 element from index-basis coefficients.
    pub fn from_index_terms<I: IntoIterator<Item = (Index, Coeff)>>(terms: I) -> Self {
        Poly::from_terms(terms.into_iter().map(|(ix, c)| (ix.to_word(), c)))
    }

    pub fn add_term(&mut self, word: Word, coeff: Coeff) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, word: &Word) -> Coeff {
        self.terms.get(word).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Terms in increasing word order.
    pub fn iter(&self) -> btree_map::Iter<'_, Word, Coeff> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    /// Bilinear extension of word concatenation.
    pub fn concat(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        (0..n).fold(Poly::one(), |acc, _| acc.concat(self))
    }

    /// Common degree of all words, or `None` for zero / inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(Word::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn subspace(&self) -> Subspace {
        if self.terms.keys().all(Word::in_h0) {
            Subspace::H0
        } else if self.terms.keys().all(Word::in_h1) {
            Subspace::H1
        } else {
            Subspace::H
        }
    }

    pub fn in_h1(&self) -> bool {
        self.subspace() >= Subspace::H1
    }

    /// Index-basis coefficients, in increasing word order.
    pub fn index_terms(&self) -> Result<Vec<(Index, Coeff)>> {
        self.terms
            .iter()
            .map(|(w, c)| Ok((Index::from_word(w)?, c.clone())))
            .collect()
    }

    /// Multiplies by -1 if needed so that the lexicographically smallest
    /// index (as a part list) carries a positive coefficient.
    pub fn sign_normalized(self) -> Poly {
        let smallest = self
            .terms
            .iter()
            .filter_map(|(w, c)| Index::from_word(w).ok().map(|ix| (ix, c)))
            .min_by(|a, b| a.0.cmp(&b.0));
        let negate = match smallest {
            Some((_, c)) => c.is_negative(),
            None => self
                .terms
                .iter()
                .next()
                .is_some_and(|(_, c)| c.is_negative()),
        };
        if negate {
            -self
        } else {
            self
        }
    }

    /// Index-basis rendering, e.g. `-1*z(5) + 1*z(2,2,1)`.
    pub fn display_index_basis(&self) -> Result<String> {
        let terms = self.index_terms()?;
        if terms.is_empty() {
            return Ok("0".to_string());
        }
        let mut out = String::new();
        for (i, (ix, c)) in terms.iter().enumerate() {
            let body = format!("{}*z{}", c.abs(), ix);
            if i == 0 {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        Ok(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "{}", w)?;
            } else if w.is_empty() {
                write!(f, "{}", a)?;
            } else {
                write!(f, "{}*{}", a, w)?;
            }
        }
        Ok(())
    }
}

pub fn int(n: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(n))
}

impl From<Word> for Poly {
    fn from(w: Word) -> Self {
        Poly::from_word(w)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), -c);
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.into_iter().map(|(w, c)| (w, -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.concat(rhs)
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        self.concat(&rhs)
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |acc, p| acc + p)
    }
}

/// `z^{k-1} y` for each part, fully expanded into words.
pub fn z_monomial(ix: &Index) -> Poly {
    let z = Poly::z();
    let y = Poly::y();
    ix.parts()
        .iter()
        .fold(Poly::one(), |acc, &k| acc.concat(&z.pow(k - 1)).concat(&y))
}

/// `x^{k_1-1} y ... x^{k_d-1} y` as a polynomial.
pub fn word_poly(ix: &Index) -> Poly {
    Poly::from_word(ix.to_word())
}
