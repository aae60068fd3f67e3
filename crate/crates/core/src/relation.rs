//! Derivation-relation families as explicit elements of H1.
//!
//! Every [`Relation`] stores a single polynomial whose image under the finite
//! zeta map is asserted to vanish ("left minus right").

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::derivation::{derive, derive_many, z_power_y};
use crate::error::{Error, Result};
use crate::exec;
use crate::index::{compositions, Index};
use crate::poly::{word_poly, z_monomial, Coeff, Poly};
use crate::word::{require_h1, Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `∂_l(w)`, `w ∈ H0`: the classical derivation relations.
    #[serde(rename = "IKZ")]
    Ikz,
    /// `∂_l(w) + z^{l-1} y w`, `w ∈ H1`.
    #[serde(rename = "CONJ")]
    Conj,
    /// The single-derivation identity with a `z`-monomial prefix.
    #[serde(rename = "THM2")]
    Thm2,
    /// The multi-derivation identity summed over prefix-ordered permutations.
    #[serde(rename = "THM3")]
    Thm3,
    /// The refined (`x`-prefix) form of [`Family::Thm3`].
    #[serde(rename = "THM3R")]
    Thm3r,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Ikz,
        Family::Conj,
        Family::Thm2,
        Family::Thm3,
        Family::Thm3r,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Ikz => "IKZ",
            Family::Conj => "CONJ",
            Family::Thm2 => "THM2",
            Family::Thm3 => "THM3",
            Family::Thm3r => "THM3R",
        }
    }

    pub fn min_weight(self) -> u32 {
        match self {
            Family::Ikz => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown family `{}`", s))
    }
}

/// Generator parameters. `l` holds one entry except for the multi-derivation
/// families; `m` is absent for IKZ and CONJ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Params {
    pub m: Option<Index>,
    pub l: Vec<u32>,
    pub w: Word,
}

impl Params {
    fn weight(&self) -> u32 {
        self.m.as_ref().map_or(0, Index::weight)
            + self.l.iter().sum::<u32>()
            + self.w.degree() as u32
    }

    fn w_label(&self) -> String {
        Index::from_word(&self.w)
            .map(|ix| ix.to_string())
            .unwrap_or_else(|_| self.w.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub family: Family,
    pub weight: u32,
    pub params: Params,
    pub element: Poly,
}

impl Relation {
    /// Wraps `element`, normalizing its overall sign.
    fn new(family: Family, params: Params, element: Poly) -> Relation {
        let weight = params.weight();
        debug_assert!(element
            .homogeneous_degree()
            .is_none_or(|d| d == weight as usize));
        debug_assert!(element.in_h1());
        Relation {
            family,
            weight,
            params,
            element: element.sign_normalized(),
        }
    }

    /// Stable identifier such as `CONJ/w5/l3/(2)`.
    pub fn id(&self) -> String {
        let p = &self.params;
        let mut id = format!("{}/w{}", self.family, self.weight);
        if let Some(m) = &p.m {
            id.push_str(&format!("/m{}", m));
        }
        match self.family {
            Family::Thm3 | Family::Thm3r => {
                let lvec = Index::new(p.l.clone()).expect("derivation indices are positive");
                id.push_str(&format!("/l{}", lvec));
            }
            _ => id.push_str(&format!("/l{}", p.l[0])),
        }
        id.push('/');
        id.push_str(&p.w_label());
        id
    }

    pub fn is_zero(&self) -> bool {
        self.element.is_zero()
    }

    /// One JSON object, fixed key order.
    pub fn to_json(&self) -> String {
        let p = &self.params;
        let l = match self.family {
            Family::Thm3 | Family::Thm3r => LRecord::Many(p.l.clone()),
            _ => LRecord::One(p.l[0]),
        };
        let record = RelationRecord {
            family: self.family,
            weight: self.weight,
            params: ParamsRecord {
                m: p.m.as_ref().map(|m| m.parts().to_vec()),
                l,
                w: p.w_label(),
            },
            terms: self
                .element
                .index_terms()
                .expect("relation elements lie in H1")
                .into_iter()
                .map(|(ix, c)| TermRecord {
                    index: ix.parts().to_vec(),
                    coef: c.to_string(),
                })
                .collect(),
        };
        serde_json::to_string(&record).expect("relation records serialize")
    }

    /// Parses a line produced by [`Relation::to_json`].
    pub fn from_json(line: &str) -> std::result::Result<Relation, String> {
        let rec: RelationRecord = serde_json::from_str(line).map_err(|e| e.to_string())?;
        let w = rec.params.w.parse::<Index>()?.to_word();
        let l = match rec.params.l {
            LRecord::One(l) => vec![l],
            LRecord::Many(ls) => ls,
        };
        let m = rec
            .params
            .m
            .map(|parts| Index::new(parts).map_err(|e| e.to_string()))
            .transpose()?;
        let mut element = Poly::zero();
        for t in rec.terms {
            let ix = Index::new(t.index).map_err(|e| e.to_string())?;
            let c: Coeff = t
                .coef
                .parse()
                .map_err(|e| format!("bad coefficient: {:?}", e))?;
            element.add_term(ix.to_word(), c);
        }
        let params = Params { m, l, w };
        if params.weight() != rec.weight {
            return Err(format!(
                "declared weight {} does not match parameters",
                rec.weight
            ));
        }
        Ok(Relation {
            family: rec.family,
            weight: rec.weight,
            params,
            element,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct RelationRecord {
    family: Family,
    weight: u32,
    params: ParamsRecord,
    terms: Vec<TermRecord>,
}

#[derive(Serialize, Deserialize)]
struct ParamsRecord {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    m: Option<Vec<u32>>,
    l: LRecord,
    w: String,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum LRecord {
    One(u32),
    Many(Vec<u32>),
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    index: Vec<u32>,
    coef: String,
}

/// A permutation `σ` of `1..=n` in which the values `1..=s` occur in
/// increasing positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrefixOrderedPermutation {
    sigma: Vec<usize>,
    s: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ULetter {
    X,
    MinusY,
}

impl PrefixOrderedPermutation {
    /// One-line notation, values `1..=n`.
    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    /// The letters `u_1, ..., u_n`. The last letter has no successor and is `-y`.
    pub fn u_letters(&self) -> Vec<ULetter> {
        let s = self.s;
        let n = self.sigma.len();
        (0..n)
            .map(|i| {
                if i + 1 == n {
                    return ULetter::MinusY;
                }
                let (cur, next) = (self.sigma[i], self.sigma[i + 1]);
                if (cur <= s && next > s) || (cur > s && cur < next) {
                    ULetter::X
                } else {
                    ULetter::MinusY
                }
            })
            .collect()
    }
}

/// All of `S_n^{(s)}` in lexicographic order of one-line notation.
///
/// `s = 0` is accepted and yields all of `S_n`.
pub fn perms_prefix_ordered(n: usize, s: usize) -> Result<Vec<PrefixOrderedPermutation>> {
    if n == 0 || s > n {
        return Err(Error::InvalidPermutation { n, s });
    }
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (1..=n).collect();
    loop {
        let ordered = perm
            .iter()
            .filter(|&&v| v <= s)
            .zip(1..)
            .all(|(&v, expected)| v == expected);
        if ordered {
            out.push(PrefixOrderedPermutation {
                sigma: perm.clone(),
                s,
            });
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `u_letters` of a permutation; `s` and `t` are carried by the permutation.
pub fn u_letters(sigma: &PrefixOrderedPermutation) -> Vec<ULetter> {
    sigma.u_letters()
}

/// `z^{a_{σ(1)}-1} u_1 ... z^{a_{σ(n)}-1} u_n`, with `-y` contributing its sign.
fn sigma_word(a: &[u32], sigma: &PrefixOrderedPermutation) -> Poly {
    let z = Poly::z();
    let x = Poly::x();
    let minus_y = Poly::y().scale(&-Coeff::one());
    sigma
        .sigma()
        .iter()
        .zip(sigma.u_letters())
        .fold(Poly::one(), |acc, (&pos, u)| {
            let letter = match u {
                ULetter::X => &x,
                ULetter::MinusY => &minus_y,
            };
            acc.concat(&z.pow(a[pos - 1] - 1)).concat(letter)
        })
}

/// `Σ_{σ ∈ S_{s+t}^{(s)}} sigma_word((m, l), σ)`.
fn permutation_sum(m: &Index, lvec: &[u32]) -> Poly {
    let a: Vec<u32> = m.parts().iter().chain(lvec).copied().collect();
    let perms = perms_prefix_ordered(a.len(), m.depth()).expect("t >= 1 so n >= 1");
    perms.iter().map(|sigma| sigma_word(&a, sigma)).sum()
}

fn sign(depth: usize) -> Coeff {
    if depth.is_multiple_of(2) {
        Coeff::one()
    } else {
        -Coeff::one()
    }
}

/// `∂_l(w) + z^{l-1} y w`.
pub fn conj_element(l: u32, w: &Poly) -> Poly {
    derive(l, w) + z_power_y(l).concat(w)
}

pub fn conj(l: u32, w: &Word) -> Result<Relation> {
    require_h1(w)?;
    let element = conj_element(l, &Poly::from_word(w.clone()));
    Ok(Relation::new(
        Family::Conj,
        Params {
            m: None,
            l: vec![l],
            w: w.clone(),
        },
        element,
    ))
}

pub fn ikz(l: u32, w: &Word) -> Result<Relation> {
    if !w.in_h0() {
        return Err(Error::NotInH0(w.to_string()));
    }
    Ok(Relation::new(
        Family::Ikz,
        Params {
            m: None,
            l: vec![l],
            w: w.clone(),
        },
        derive(l, &Poly::from_word(w.clone())),
    ))
}

/// The finite relation in weight `k - 1` that an IKZ relation of weight `k`
/// corresponds to, via `∂_l(x w') = x (∂_l(w') + z^{l-1} y w')`.
pub fn ikz_shifted(rel: &Relation) -> Result<Relation> {
    let w_rest = match rel.params.w.letters().split_first() {
        Some((Letter::X, rest)) => Word::from_letters(rest.to_vec()),
        _ => return Err(Error::NotInH0(rel.params.w.to_string())),
    };
    conj(rel.params.l[0], &w_rest)
}

/// Every non-zero `∂_l(w)` with `w` an H0 basis word and `l + |w| = weight`.
pub fn gen_ikz(weight: u32) -> Result<Vec<Relation>> {
    if weight < Family::Ikz.min_weight() {
        return Err(Error::WeightTooSmall(weight));
    }
    let params: Vec<(u32, Word)> = (1..weight)
        .flat_map(|l| {
            Word::h0_basis((weight - l) as usize)
                .into_iter()
                .filter(|w| !w.is_empty())
                .map(move |w| (l, w))
        })
        .collect();
    collect_nonzero(exec::map(&params, |(l, w)| ikz(*l, w)))
}

/// Every `∂_l(w) + z^{l-1} y w` with `w` a non-empty H1 basis word and
/// `l + |w| = weight`: the family counted by the rank tables.
///
/// The unit seed `w = 1` gives `z^{weight-1} y`, which is also a valid
/// relation but lies outside this span; see [`gen_conj_with_unit`].
pub fn gen_conj(weight: u32) -> Result<Vec<Relation>> {
    if weight < Family::Conj.min_weight() {
        return Err(Error::WeightTooSmall(weight));
    }
    let params: Vec<(u32, Word)> = conj_params(weight)
        .into_iter()
        .filter(|(_, w)| !w.is_empty())
        .collect();
    collect_nonzero(exec::map(&params, |(l, w)| conj(*l, w)))
}

/// [`gen_conj`] together with the unit-seed relation `(l = weight, w = 1)`.
pub fn gen_conj_with_unit(weight: u32) -> Result<Vec<Relation>> {
    if weight < Family::Conj.min_weight() {
        return Err(Error::WeightTooSmall(weight));
    }
    collect_nonzero(exec::map(&conj_params(weight), |(l, w)| conj(*l, w)))
}

/// Every `(l, w)` with `w` an H1 basis word (including `1`) and `l + |w| = weight`.
pub fn conj_params(weight: u32) -> Vec<(u32, Word)> {
    (1..=weight)
        .flat_map(|l| {
            Word::h1_basis((weight - l) as usize)
                .into_iter()
                .map(move |w| (l, w))
        })
        .collect()
}

fn collect_nonzero(rels: Vec<Result<Relation>>) -> Result<Vec<Relation>> {
    let mut out = Vec::with_capacity(rels.len());
    for r in rels {
        let r = r?;
        if !r.is_zero() {
            out.push(r);
        }
    }
    Ok(out)
}

/// Single-derivation identity:
/// `M ∂_l(w) + z^{l-1} y M w - Σ_i (M with x z^{l-1} y inserted after z^{m_i-1})·w`
/// where `M = z^{m_1-1}y ... z^{m_s-1}y`.
pub fn gen_thm2(m: &Index, l: u32, w: &Word) -> Result<Relation> {
    let element = thm2_element(m, l, w)?;
    Ok(Relation::new(
        Family::Thm2,
        Params {
            m: Some(m.clone()),
            l: vec![l],
            w: w.clone(),
        },
        element,
    ))
}

/// The un-normalized element of [`gen_thm2`].
pub fn thm2_element(m: &Index, l: u32, w: &Word) -> Result<Poly> {
    require_h1(w)?;
    let wp = Poly::from_word(w.clone());
    let zm = z_monomial(m);
    let zl = z_power_y(l);
    let mut element = zm.concat(&derive(l, &wp)) + zl.concat(&zm).concat(&wp);
    let inserted = Poly::x().concat(&zl);
    let z = Poly::z();
    let parts = m.parts();
    for i in 0..parts.len() {
        let head = z_monomial(&Index::new(parts[..i].to_vec())?);
        let tail = z_monomial(&Index::new(parts[i + 1..].to_vec())?);
        let term = head
            .concat(&z.pow(parts[i] - 1))
            .concat(&inserted)
            .concat(&tail)
            .concat(&wp);
        element -= &term;
    }
    Ok(element)
}

/// Multi-derivation identity:
/// `M ∂_{l_1}...∂_{l_t}(w) - (-1)^s Σ_{σ ∈ S_{s+t}^{(s)}} (σ-word over (m, l))·w`.
pub fn gen_thm3(m: &Index, lvec: &Index, w: &Word) -> Result<Relation> {
    let element = thm3_element(m, lvec, w)?;
    Ok(Relation::new(
        Family::Thm3,
        multi_params(m, lvec, w),
        element,
    ))
}

/// The un-normalized element of [`gen_thm3`].
pub fn thm3_element(m: &Index, lvec: &Index, w: &Word) -> Result<Poly> {
    require_h1(w)?;
    if lvec.is_empty() {
        return Err(Error::NoDerivations);
    }
    let wp = Poly::from_word(w.clone());
    let lhs = z_monomial(m).concat(&derive_many(lvec.parts(), &wp));
    let rhs = permutation_sum(m, lvec.parts())
        .scale(&sign(m.depth()))
        .concat(&wp);
    Ok(lhs - rhs)
}

/// Refined form: `x`-monomial prefix on the left, refinement sum on the right:
/// `X_m ∂_{l_1}...∂_{l_t}(w) - (-1)^s Σ_{m' ⪰ m} Σ_σ (σ-word over (m', l))·w`.
pub fn gen_thm3_refined(m: &Index, lvec: &Index, w: &Word) -> Result<Relation> {
    let element = thm3_refined_element(m, lvec, w)?;
    Ok(Relation::new(
        Family::Thm3r,
        multi_params(m, lvec, w),
        element,
    ))
}

/// The un-normalized element of [`gen_thm3_refined`].
pub fn thm3_refined_element(m: &Index, lvec: &Index, w: &Word) -> Result<Poly> {
    require_h1(w)?;
    if lvec.is_empty() {
        return Err(Error::NoDerivations);
    }
    let wp = Poly::from_word(w.clone());
    let lhs = word_poly(m).concat(&derive_many(lvec.parts(), &wp));
    let rhs = m
        .refinements()
        .iter()
        .map(|mr| permutation_sum(mr, lvec.parts()))
        .sum::<Poly>()
        .scale(&sign(m.depth()))
        .concat(&wp);
    Ok(lhs - rhs)
}

fn multi_params(m: &Index, lvec: &Index, w: &Word) -> Params {
    Params {
        m: Some(m.clone()),
        l: lvec.parts().to_vec(),
        w: w.clone(),
    }
}

/// Caps on the parameter enumeration of the prefixed families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyCaps {
    /// Maximum depth of the prefix index `m`.
    pub max_s: usize,
    /// Maximum number of derivations in `l`.
    pub max_t: usize,
}

impl Default for FamilyCaps {
    fn default() -> Self {
        FamilyCaps { max_s: 2, max_t: 2 }
    }
}

fn prefixes(max_weight: u32, max_s: usize) -> Vec<Index> {
    (0..=max_weight)
        .flat_map(compositions)
        .filter(|m| m.depth() <= max_s)
        .collect()
}

/// Every relation of `family` at `weight`, with `m` and `l` bounded by `caps`
/// where they apply. Output order follows the parameter enumeration.
pub fn generate(family: Family, weight: u32, caps: FamilyCaps) -> Result<Vec<Relation>> {
    match family {
        Family::Ikz => gen_ikz(weight),
        Family::Conj => gen_conj(weight),
        Family::Thm2 => {
            let mut params = Vec::new();
            for m in prefixes(weight.saturating_sub(1), caps.max_s) {
                for l in 1..=weight - m.weight() {
                    for w in Word::h1_basis((weight - m.weight() - l) as usize) {
                        params.push((m.clone(), l, w));
                    }
                }
            }
            collect_nonzero(exec::map(&params, |(m, l, w)| gen_thm2(m, *l, w)))
        }
        Family::Thm3 | Family::Thm3r => {
            let mut params = Vec::new();
            for m in prefixes(weight.saturating_sub(1), caps.max_s) {
                for lw in 1..=weight - m.weight() {
                    for lvec in compositions(lw)
                        .into_iter()
                        .filter(|l| l.depth() <= caps.max_t)
                    {
                        for w in Word::h1_basis((weight - m.weight() - lw) as usize) {
                            params.push((m.clone(), lvec.clone(), w));
                        }
                    }
                }
            }
            let build = if family == Family::Thm3 {
                gen_thm3
            } else {
                gen_thm3_refined
            };
            collect_nonzero(exec::map(&params, |(m, l, w)| build(m, l, w)))
        }
    }
}

/// Relation with coefficients read from `(index, coefficient)` pairs, sign-normalized.
pub fn index_combination(terms: &[(&[u32], i64)]) -> Poly {
    Poly::from_index_terms(terms.iter().map(|(parts, c)| {
        (
            Index::new(parts.to_vec()).expect("parts are positive"),
            crate::poly::int(*c),
        )
    }))
    .sign_normalized()
}

/// Whether two elements agree up to an overall sign.
pub fn equal_up_to_sign(a: &Poly, b: &Poly) -> bool {
    a == b || *a == -(b.clone())
}
