//! Compositions `(k_1, ..., k_d)`, in bijection with the monomials
//! `z_{k_1} ... z_{k_d}` of H1 where `z_k = x^{k-1} y`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Index(Vec<u32>);

impl Index {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if let Some(&bad) = parts.iter().find(|&&k| k == 0) {
            return Err(Error::ZeroPart(bad));
        }
        Ok(Index(parts))
    }

    pub fn empty() -> Self {
        Index(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Index) -> Index {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Index(parts)
    }

    /// `x^{k_1-1} y ... x^{k_d-1} y`.
    pub fn to_word(&self) -> Word {
        let mut letters = Vec::with_capacity(self.weight() as usize);
        for &k in &self.0 {
            letters.extend(std::iter::repeat_n(Letter::X, k as usize - 1));
            letters.push(Letter::Y);
        }
        Word::from_letters(letters)
    }

    /// Inverse of [`Index::to_word`]; fails on words ending in `x`.
    pub fn from_word(word: &Word) -> Result<Index> {
        if !word.in_h1() {
            return Err(Error::NotInH1(word.to_string()));
        }
        let mut parts = Vec::new();
        let mut run = 1;
        for &letter in word.letters() {
            match letter {
                Letter::X => run += 1,
                Letter::Y => {
                    parts.push(run);
                    run = 1;
                }
            }
        }
        Ok(Index(parts))
    }

    /// Every index `m'` from which `self` is obtained by merging adjacent parts
    /// (including `self`). Ordered by position of the splits, coarsest first.
    pub fn refinements(&self) -> Vec<Index> {
        let mut out = vec![Vec::new()];
        for &k in &self.0 {
            let splits = compositions(k);
            let mut next = Vec::with_capacity(out.len() * splits.len());
            for prefix in &out {
                for split in &splits {
                    let mut parts: Vec<u32> = prefix.clone();
                    parts.extend_from_slice(split.parts());
                    next.push(parts);
                }
            }
            out = next;
        }
        out.into_iter().map(Index).collect()
    }
}

/// All compositions of `weight`, coarsest first: `(k)`, `(k-1,1)`, `(1,k-1)`...
/// The empty composition for weight 0.
pub fn compositions(weight: u32) -> Vec<Index> {
    if weight == 0 {
        return vec![Index::empty()];
    }
    // bit i set = cut after position i+1
    let cuts = weight - 1;
    let mut masks: Vec<u32> = (0..1u32 << cuts).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks
        .into_iter()
        .map(|mask| {
            let mut parts = Vec::new();
            let mut run = 1;
            for i in 0..cuts {
                if mask >> i & 1 == 1 {
                    parts.push(run);
                    run = 1;
                } else {
                    run += 1;
                }
            }
            parts.push(run);
            Index(parts)
        })
        .collect()
}

impl TryFrom<Vec<u32>> for Index {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Index::new(parts)
    }
}

impl From<Index> for Vec<u32> {
    fn from(ix: Index) -> Self {
        ix.0
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", k)?;
        }
        f.write_str(")")
    }
}

impl FromStr for Index {
    type Err = String;

    /// Accepts `3,2`, `(3,2)` or `()`.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let inner = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .trim();
        if inner.is_empty() {
            return Ok(Index::empty());
        }
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|e| format!("bad part `{}`: {}", p, e))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Index::new(parts).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ix(parts: &[u32]) -> Index {
        Index::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn word_from_index_examples() {
        assert_eq!(Index::empty().to_word(), Word::empty());
        assert_eq!(ix(&[2]).to_word().to_string(), "xy");
        assert_eq!(ix(&[3, 2]).to_word(), "xxyxy".parse().unwrap());
    }

    #[test]
    fn index_from_word_examples() {
        assert_eq!(Index::from_word(&"xy".parse().unwrap()).unwrap(), ix(&[2]));
        assert_eq!(
            Index::from_word(&"xxyxy".parse().unwrap()).unwrap(),
            ix(&[3, 2])
        );
        assert!(matches!(
            Index::from_word(&"xx".parse().unwrap()),
            Err(Error::NotInH1(_))
        ));
    }

    #[test]
    fn zero_part_rejected() {
        assert_eq!(Index::new(vec![2, 0]), Err(Error::ZeroPart(0)));
        assert!("(1,0)".parse::<Index>().is_err());
    }

    #[test]
    fn refinement_examples() {
        assert_eq!(ix(&[2]).refinements(), vec![ix(&[2]), ix(&[1, 1])]);
        let mut r3 = ix(&[3]).refinements();
        r3.sort();
        assert_eq!(r3, vec![ix(&[1, 1, 1]), ix(&[1, 2]), ix(&[2, 1]), ix(&[3])]);
        assert_eq!(ix(&[1, 1]).refinements(), vec![ix(&[1, 1])]);
        assert_eq!(Index::empty().refinements(), vec![Index::empty()]);
    }

    #[test]
    fn refinement_count_is_product_of_powers() {
        for weight in 1..=7 {
            for m in compositions(weight) {
                let expected: usize = m.parts().iter().map(|&k| 1usize << (k - 1)).product();
                assert_eq!(m.refinements().len(), expected, "{}", m);
            }
        }
    }

    #[test]
    fn compositions_are_exhaustive() {
        assert_eq!(compositions(0), vec![Index::empty()]);
        assert_eq!(compositions(4).len(), 8);
        assert_eq!(compositions(3)[0], ix(&[3]));
        assert!(compositions(6).iter().all(|c| c.weight() == 6));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(ix(&[2, 1]).to_string(), "(2,1)");
        assert_eq!("(2,1)".parse::<Index>().unwrap(), ix(&[2, 1]));
        assert_eq!("()".parse::<Index>().unwrap(), Index::empty());
        assert_eq!(serde_json::to_string(&ix(&[5, 1])).unwrap(), "[5,1]");
    }
}
