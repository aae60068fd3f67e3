//! Exact and modular rank over the index basis of a fixed weight.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exec;
use crate::index::{compositions, Index};
use crate::numeric::is_prime;
use crate::poly::Coeff;
use crate::relation::{gen_ikz, generate, Family, FamilyCaps, Relation};

/// The default modulus for modular rank, `2^31 - 1`.
pub const DEFAULT_MODULUS: u64 = 2_147_483_647;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Space {
    H1,
    H0,
}

/// Ordered index basis of one weight. For H0 the first part is at least 2.
///
/// Columns follow the degree-lexicographic order of the corresponding words.
#[derive(Clone, Debug)]
pub struct BasisMap {
    weight: u32,
    space: Space,
    indices: Vec<Index>,
    positions: HashMap<Index, usize>,
}

impl BasisMap {
    pub fn new(weight: u32, space: Space) -> Self {
        let mut indices: Vec<Index> = compositions(weight)
            .into_iter()
            .filter(|ix| weight > 0 || ix.is_empty())
            .filter(|ix| space == Space::H1 || ix.parts().first().is_none_or(|&k| k >= 2))
            .collect();
        indices.sort_by_cached_key(Index::to_word);
        let positions = indices
            .iter()
            .enumerate()
            .map(|(i, ix)| (ix.clone(), i))
            .collect();
        BasisMap {
            weight,
            space,
            indices,
            positions,
        }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[Index] {
        &self.indices
    }

    pub fn position(&self, ix: &Index) -> Option<usize> {
        self.positions.get(ix).copied()
    }
}

/// Sparse row: `(column, coefficient)` sorted by column, no zeros.
pub type SparseVec = Vec<(usize, Coeff)>;

pub fn to_vector(rel: &Relation, basis: &BasisMap) -> Result<SparseVec> {
    if rel.element.is_zero() {
        return Ok(Vec::new());
    }
    if rel.weight != basis.weight {
        return Err(Error::WeightMismatch {
            expected: basis.weight,
            found: rel.weight,
        });
    }
    let mut v = Vec::with_capacity(rel.element.len());
    for (w, c) in rel.element.iter() {
        let col = Index::from_word(w)
            .ok()
            .and_then(|ix| basis.position(&ix))
            .ok_or_else(|| Error::SpaceMismatch(w.to_string()))?;
        v.push((col, c.clone()));
    }
    v.sort_by_key(|e| e.0);
    Ok(v)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrixQ {
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl SparseMatrixQ {
    pub fn new(ncols: usize) -> Self {
        SparseMatrixQ {
            ncols,
            rows: Vec::new(),
        }
    }

    /// Drops explicit zeros and sorts each row by column.
    pub fn from_rows(ncols: usize, rows: Vec<SparseVec>) -> Self {
        let mut m = SparseMatrixQ::new(ncols);
        for r in rows {
            m.push_row(r);
        }
        m
    }

    pub fn push_row(&mut self, mut row: SparseVec) {
        row.retain(|(_, c)| !c.is_zero());
        row.sort_by_key(|e| e.0);
        debug_assert!(row.iter().all(|&(c, _)| c < self.ncols));
        self.rows.push(row);
    }

    pub fn from_relations(rels: &[Relation], basis: &BasisMap) -> Result<Self> {
        let rows = exec::map(rels, |r| to_vector(r, basis));
        let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(SparseMatrixQ::from_rows(basis.len(), rows))
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Non-zero rows with duplicates removed, first occurrence kept.
    fn distinct_rows(&self) -> Vec<&SparseVec> {
        let mut seen = HashSet::new();
        self.rows
            .iter()
            .filter(|r| !r.is_empty() && seen.insert(*r))
            .collect()
    }
}

type IntRow = Vec<(usize, BigInt)>;

/// Scales a rational row to a primitive integer row.
fn primitive_row(row: &SparseVec) -> IntRow {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut out: IntRow = row
        .iter()
        .map(|(col, c)| (*col, c.numer() * (&lcm / c.denom())))
        .collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if row.first().is_some_and(|(_, v)| v.is_negative()) {
        g = -g;
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// `a * row - b * pivot`, sorted merge.
fn combine_int(row: &IntRow, a: &BigInt, pivot: &IntRow, b: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i == row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push((row[i].0, a * &row[i].1));
            i += 1;
        } else if take_pivot {
            out.push((pivot[j].0, -(b * &pivot[j].1)));
            j += 1;
        } else {
            let v = a * &row[i].1 - b * &pivot[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn entry<T>(row: &[(usize, T)], col: usize) -> Option<&T> {
    row.binary_search_by_key(&col, |e| e.0)
        .ok()
        .map(|i| &row[i].1)
}

/// Index of the shortest row; ties go to the lowest position.
fn shortest<T>(rows: &[Vec<(usize, T)>]) -> Option<usize> {
    rows.iter()
        .enumerate()
        .min_by_key(|(i, r)| (r.len(), *i))
        .map(|(i, _)| i)
}

/// Rank over `Q` by fraction-free sparse elimination.
///
/// Rows are kept primitive (content divided out) after every update. Pivot:
/// shortest row, then its entry of smallest bit-length, ties by column.
pub fn rank_exact(m: &SparseMatrixQ) -> usize {
    let mut rows: Vec<IntRow> = m.distinct_rows().into_iter().map(primitive_row).collect();
    let mut rank = 0;
    while let Some(pi) = shortest(&rows) {
        let pivot = rows.swap_remove(pi);
        let (col, pv) = pivot
            .iter()
            .min_by_key(|(c, v)| (v.bits(), *c))
            .map(|(c, v)| (*c, v.clone()))
            .expect("rows are non-empty");
        exec::for_each_mut(&mut rows, |row| {
            if let Some(rv) = entry(row, col) {
                let g = pv.gcd(rv);
                let a = &pv / &g;
                let b = rv / &g;
                let mut next = combine_int(row, &a, &pivot, &b);
                make_primitive(&mut next);
                *row = next;
            }
        });
        rows.retain(|r| !r.is_empty());
        rank += 1;
    }
    rank
}

type ModRow = Vec<(usize, u64)>;

/// `row - b * pivot (mod q)`.
fn combine_mod(row: &ModRow, pivot: &ModRow, b: u64, q: u64) -> ModRow {
    let nb = q - b;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        if j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0) {
            out.push(row[i]);
            i += 1;
        } else if i == row.len() || pivot[j].0 < row[i].0 {
            out.push((pivot[j].0, nb * pivot[j].1 % q));
            j += 1;
        } else {
            let v = (row[i].1 + nb * pivot[j].1) % q;
            if v != 0 {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank of the reduction modulo a prime `q < 2^32`.
pub fn rank_mod(m: &SparseMatrixQ, q: u64) -> Result<usize> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if q >= 1 << 32 {
        return Err(Error::ModulusTooLarge(q));
    }
    let reduce = |c: &Coeff| -> Result<u64> {
        let qq = BigInt::from(q);
        let den = c.denom().mod_floor(&qq).to_u64().expect("fits");
        if den == 0 {
            return Err(Error::DenominatorDivisible(q));
        }
        let num = c.numer().mod_floor(&qq).to_u64().expect("fits");
        Ok(num * mod_inverse(den, q) % q)
    };
    let mut rows: Vec<ModRow> = Vec::with_capacity(m.nrows());
    for r in m.distinct_rows() {
        let mut row = Vec::with_capacity(r.len());
        for (col, c) in r {
            let v = reduce(c)?;
            if v != 0 {
                row.push((*col, v));
            }
        }
        if !row.is_empty() {
            rows.push(row);
        }
    }
    let mut rank = 0;
    while let Some(pi) = shortest(&rows) {
        let mut pivot = rows.swap_remove(pi);
        let inv = mod_inverse(pivot[0].1, q);
        for e in pivot.iter_mut() {
            e.1 = e.1 * inv % q;
        }
        let col = pivot[0].0;
        exec::for_each_mut(&mut rows, |row| {
            if let Some(&b) = entry(row, col) {
                *row = combine_mod(row, &pivot, b, q);
            }
        });
        rows.retain(|r| !r.is_empty());
        rank += 1;
    }
    Ok(rank)
}

fn mod_inverse(a: u64, q: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (q as i64, a as i64);
    while new_r != 0 {
        let quotient = r / new_r;
        (t, new_t) = (new_t, t - quotient * new_t);
        (r, new_r) = (new_r, r - quotient * new_r);
    }
    debug_assert_eq!(r, 1, "{} not invertible mod {}", a, q);
    t.rem_euclid(q as i64) as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    /// Elimination modulo the given prime.
    ModQ(u64),
}

impl Mode {
    pub fn label(self) -> &'static str {
        match self {
            Mode::Exact => "EXACT",
            Mode::ModQ(_) => "MODQ",
        }
    }
}

pub fn rank(m: &SparseMatrixQ, mode: Mode) -> Result<usize> {
    match mode {
        Mode::Exact => Ok(rank_exact(m)),
        Mode::ModQ(q) => rank_mod(m, q),
    }
}

/// One line of a rank table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub weight: u32,
    pub family: Family,
    pub mode: Mode,
    pub rank: usize,
    pub rows: usize,
    pub cols: usize,
    pub millis: u128,
}

impl TableRow {
    pub const CSV_HEADER: &'static str = "weight,family,mode,rank,rows,cols,millis";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.weight,
            self.family,
            self.mode.label(),
            self.rank,
            self.rows,
            self.cols,
            self.millis
        )
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_csv())
    }
}

/// Relations and basis for `family` at `weight`: IKZ over the H0 basis,
/// every other family over H1.
pub fn family_matrix(
    family: Family,
    weight: u32,
    caps: FamilyCaps,
) -> Result<(Vec<Relation>, BasisMap)> {
    match family {
        Family::Ikz => Ok((gen_ikz(weight)?, BasisMap::new(weight, Space::H0))),
        other => Ok((
            generate(other, weight, caps)?,
            BasisMap::new(weight, Space::H1),
        )),
    }
}

pub fn relation_rank(family: Family, weight: u32, mode: Mode) -> Result<TableRow> {
    relation_rank_with(family, weight, mode, FamilyCaps::default())
}

pub fn relation_rank_with(
    family: Family,
    weight: u32,
    mode: Mode,
    caps: FamilyCaps,
) -> Result<TableRow> {
    let start = Instant::now();
    let (rels, basis) = family_matrix(family, weight, caps)?;
    let matrix = SparseMatrixQ::from_relations(&rels, &basis)?;
    let rank = rank(&matrix, mode)?;
    Ok(TableRow {
        weight,
        family,
        mode,
        rank,
        rows: matrix.nrows(),
        cols: matrix.ncols(),
        millis: start.elapsed().as_millis(),
    })
}

/// Ranks of `family` over a range of weights, parallel across weights.
pub fn relation_table(
    weights: std::ops::RangeInclusive<u32>,
    family: Family,
    mode: Mode,
) -> Result<Vec<TableRow>> {
    let weights: Vec<u32> = weights.collect();
    exec::map(&weights, |&k| relation_rank(family, k, mode))
        .into_iter()
        .collect()
}
