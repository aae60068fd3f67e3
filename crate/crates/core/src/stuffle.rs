//! The harmonic (stuffle) product on H1, computed on the `z_k` generators.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;

use crate::error::Result;
use crate::index::Index;
use crate::poly::{Coeff, Poly};

type Product = Arc<BTreeMap<Index, u64>>;

/// Memo table for index-level harmonic products.
///
/// Shared freely between threads; concurrent inserts of the same key store
/// the same value, so lookups are schedule-independent.
#[derive(Debug, Default)]
pub struct StuffleMemo {
    table: RwLock<HashMap<(Index, Index), Product>>,
}

impl StuffleMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.table.read().expect("memo poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `z_a ⋆ z_b` as index multiplicities.
    pub fn index_product(&self, a: &Index, b: &Index) -> Product {
        self.product(a.parts(), b.parts())
    }

    fn product(&self, a: &[u32], b: &[u32]) -> Product {
        if a.is_empty() || b.is_empty() {
            let other = if a.is_empty() { b } else { a };
            let mut m = BTreeMap::new();
            m.insert(Index::new(other.to_vec()).expect("parts are positive"), 1);
            return Arc::new(m);
        }
        let key = (
            Index::new(a.to_vec()).expect("parts are positive"),
            Index::new(b.to_vec()).expect("parts are positive"),
        );
        if let Some(hit) = self.table.read().expect("memo poisoned").get(&key) {
            return hit.clone();
        }

        // z_k w1 ⋆ z_l w2 = z_k (w1 ⋆ z_l w2) + z_l (z_k w1 ⋆ w2) + z_{k+l} (w1 ⋆ w2)
        let (k, rest_a) = (a[0], &a[1..]);
        let (l, rest_b) = (b[0], &b[1..]);
        let mut out: BTreeMap<Index, u64> = BTreeMap::new();
        let mut prepend = |head: u32, tail: &Product| {
            for (ix, &count) in tail.iter() {
                let mut parts = Vec::with_capacity(ix.depth() + 1);
                parts.push(head);
                parts.extend_from_slice(ix.parts());
                *out.entry(Index::new(parts).expect("parts are positive"))
                    .or_insert(0) += count;
            }
        };
        prepend(k, &self.product(rest_a, b));
        prepend(l, &self.product(a, rest_b));
        prepend(k + l, &self.product(rest_a, rest_b));

        let result = Arc::new(out);
        self.table
            .write()
            .expect("memo poisoned")
            .entry(key)
            .or_insert_with(|| result.clone())
            .clone()
    }

    /// Bilinear harmonic product of two H1 elements.
    pub fn harmonic_product(&self, p: &Poly, q: &Poly) -> Result<Poly> {
        let lhs = p.index_terms()?;
        let rhs = q.index_terms()?;
        let mut out = Poly::zero();
        for (a, ca) in &lhs {
            for (b, cb) in &rhs {
                let c = ca * cb;
                for (ix, &count) in self.index_product(a, b).iter() {
                    out.add_term(ix.to_word(), &c * Coeff::from_integer(BigInt::from(count)));
                }
            }
        }
        Ok(out)
    }
}

/// Harmonic product with a fresh memo table.
pub fn harmonic_product(p: &Poly, q: &Poly) -> Result<Poly> {
    StuffleMemo::new().harmonic_product(p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::poly::word_poly;

    fn ix(parts: &[u32]) -> Index {
        Index::new(parts.to_vec()).unwrap()
    }

    fn zp(parts: &[u32]) -> Poly {
        word_poly(&ix(parts))
    }

    #[test]
    fn unit_is_identity() {
        let w = zp(&[3, 1, 2]);
        assert_eq!(harmonic_product(&Poly::one(), &w).unwrap(), w);
        assert_eq!(harmonic_product(&w, &Poly::one()).unwrap(), w);
    }

    #[test]
    fn small_products() {
        let expected = zp(&[2, 3]) + zp(&[3, 2]) + zp(&[5]);
        assert_eq!(harmonic_product(&zp(&[2]), &zp(&[3])).unwrap(), expected);
        let expected = zp(&[1, 1]).scale(&crate::poly::int(2)) + zp(&[2]);
        assert_eq!(harmonic_product(&zp(&[1]), &zp(&[1])).unwrap(), expected);
    }

    #[test]
    fn rejects_words_outside_h1() {
        assert!(matches!(
            harmonic_product(&Poly::x(), &Poly::y()),
            Err(Error::NotInH1(_))
        ));
    }

    #[test]
    fn memo_is_reused() {
        let memo = StuffleMemo::new();
        let a = memo.index_product(&ix(&[1, 2]), &ix(&[3]));
        let n = memo.len();
        let b = memo.index_product(&ix(&[1, 2]), &ix(&[3]));
        assert_eq!(a, b);
        assert_eq!(memo.len(), n);
    }
}
