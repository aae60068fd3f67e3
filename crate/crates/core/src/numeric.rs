//! Truncated multiple harmonic sums modulo primes and relation verification.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec;
use crate::index::Index;
use crate::poly::{Coeff, Poly};
use crate::relation::Relation;

/// Default verification range.
pub const DEFAULT_PRIMES: (u64, u64) = (11, 499);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    p: u64,
}

impl Residue {
    pub fn new(value: u64, p: u64) -> Self {
        Residue {
            value: value % p,
            p,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes in `lo..=hi` by a sieve of Eratosthenes.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 {
        return Vec::new();
    }
    let n = hi as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        if i as u64 >= lo {
            out.push(i as u64);
        }
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// `Z/pZ` with a table of inverses of `1..p`.
#[derive(Clone, Debug)]
pub struct PrimeField {
    p: u64,
    inv: Vec<u64>,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let n = p as usize;
        let mut inv = vec![0u64; n];
        if n > 1 {
            inv[1] = 1;
        }
        // inv[i] = -(p / i) * inv[p mod i]
        for i in 2..n {
            let q = p / i as u64;
            inv[i] = (p - mulmod(q, inv[(p % i as u64) as usize], p)) % p;
        }
        Ok(PrimeField { p, inv })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn inverse(&self, n: u64) -> u64 {
        self.inv[(n % self.p) as usize]
    }

    fn reduce_int(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits in u64")
    }

    /// Reduces a rational; fails if `p` divides the denominator.
    pub fn reduce(&self, c: &Coeff) -> Result<u64> {
        let den = self.reduce_int(c.denom());
        if den == 0 {
            return Err(Error::DenominatorDivisible(self.p));
        }
        Ok(mulmod(
            self.reduce_int(c.numer()),
            self.inverse(den),
            self.p,
        ))
    }

    /// `Σ_{p > n_1 > ... > n_d ≥ 1} n_1^{-k_1} ... n_d^{-k_d} mod p`.
    ///
    /// One ascending pass over `n`, keeping for each `j` the partial sum
    /// `T_j` over chains `n > n_j > ... > n_d`.
    pub fn zeta(&self, ix: &Index) -> u64 {
        let parts = ix.parts();
        let d = parts.len();
        if d == 0 {
            return 1 % self.p;
        }
        let p = self.p;
        let max_k = *parts.iter().max().expect("non-empty") as usize;
        // tails[j] = T_{j}, tails[d] = 1
        let mut tails = vec![0u64; d + 1];
        tails[d] = 1;
        let mut powers = vec![1u64; max_k + 1];
        for n in 1..p {
            let inv = self.inv[n as usize];
            for k in 1..=max_k {
                powers[k] = mulmod(powers[k - 1], inv, p);
            }
            for j in 0..d {
                let add = mulmod(powers[parts[j] as usize], tails[j + 1], p);
                tails[j] = (tails[j] + add) % p;
            }
        }
        tails[0]
    }
}

pub fn zeta_trunc_mod(ix: &Index, p: u64) -> Result<Residue> {
    let field = PrimeField::new(p)?;
    Ok(Residue::new(field.zeta(ix), p))
}

/// Caches truncated sums for one prime.
#[derive(Debug)]
pub struct PrimeEvaluator {
    field: PrimeField,
    cache: HashMap<Index, u64>,
}

impl PrimeEvaluator {
    pub fn new(p: u64) -> Result<Self> {
        Ok(PrimeEvaluator {
            field: PrimeField::new(p)?,
            cache: HashMap::new(),
        })
    }

    pub fn prime(&self) -> u64 {
        self.field.p
    }

    pub fn zeta(&mut self, ix: &Index) -> u64 {
        if let Some(&v) = self.cache.get(ix) {
            return v;
        }
        let v = self.field.zeta(ix);
        self.cache.insert(ix.clone(), v);
        v
    }

    pub fn eval(&mut self, poly: &Poly) -> Result<Residue> {
        let p = self.field.p;
        let mut acc = 0u64;
        for (ix, c) in poly.index_terms()? {
            let c = self.field.reduce(&c)?;
            acc = (acc + mulmod(c, self.zeta(&ix), p)) % p;
        }
        Ok(Residue::new(acc, p))
    }
}

/// Linear extension of [`zeta_trunc_mod`] to H1.
pub fn eval_poly_mod(poly: &Poly, p: u64) -> Result<Residue> {
    PrimeEvaluator::new(p)?.eval(poly)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "SKIPPED")]
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeResult {
    pub relation: String,
    pub prime: u64,
    pub residue: Option<u64>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl PrimeResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("prime results serialize")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueReport {
    pub relation: String,
    pub weight: u32,
    pub results: Vec<PrimeResult>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Counts {
    pub fn merge(self, other: Counts) -> Counts {
        Counts {
            pass: self.pass + other.pass,
            fail: self.fail + other.fail,
            skipped: self.skipped + other.skipped,
        }
    }
}

impl ResidueReport {
    /// No non-skipped prime failed.
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.verdict != Verdict::Fail)
    }

    pub fn counts(&self) -> Counts {
        let mut c = Counts::default();
        for r in &self.results {
            match r.verdict {
                Verdict::Pass => c.pass += 1,
                Verdict::Fail => c.fail += 1,
                Verdict::Skipped => c.skipped += 1,
            }
        }
        c
    }

    pub fn failing_primes(&self) -> Vec<u64> {
        self.results
            .iter()
            .filter(|r| r.verdict == Verdict::Fail)
            .map(|r| r.prime)
            .collect()
    }
}

/// Primes at or below this bound are excluded for a relation of `weight`.
pub fn skip_bound(weight: u32) -> u64 {
    weight as u64 + 2
}

fn check(eval: &mut PrimeEvaluator, id: &str, weight: u32, element: &Poly) -> PrimeResult {
    let prime = eval.prime();
    let (residue, verdict, reason) = match eval.eval(element) {
        Ok(r) if prime <= skip_bound(weight) => (
            Some(r.value()),
            Verdict::Skipped,
            Some(format!("p <= weight + 2 = {}", skip_bound(weight))),
        ),
        Ok(r) if r.is_zero() => (Some(0), Verdict::Pass, None),
        Ok(r) => (Some(r.value()), Verdict::Fail, None),
        Err(e) => (None, Verdict::Skipped, Some(e.to_string())),
    };
    PrimeResult {
        relation: id.to_string(),
        prime,
        residue,
        verdict,
        reason,
    }
}

pub fn verify(rel: &Relation, primes: &[u64]) -> Result<ResidueReport> {
    Ok(verify_all(std::slice::from_ref(rel), primes)?.remove(0))
}

/// Evaluates every relation at every prime. Work is spread across primes;
/// reports come back in relation order with primes ascending.
pub fn verify_all(rels: &[Relation], primes: &[u64]) -> Result<Vec<ResidueReport>> {
    let mut primes = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::NotPrime(p));
    }
    let ids: Vec<String> = rels.iter().map(Relation::id).collect();
    let per_prime: Vec<Vec<PrimeResult>> = exec::map(&primes, |&p| {
        let mut eval = PrimeEvaluator::new(p).expect("checked prime");
        rels.iter()
            .zip(&ids)
            .map(|(rel, id)| check(&mut eval, id, rel.weight, &rel.element))
            .collect()
    });
    let mut reports: Vec<ResidueReport> = rels
        .iter()
        .zip(ids)
        .map(|(rel, id)| ResidueReport {
            relation: id,
            weight: rel.weight,
            results: Vec::with_capacity(primes.len()),
        })
        .collect();
    for column in per_prime {
        for (report, result) in reports.iter_mut().zip(column) {
            report.results.push(result);
        }
    }
    Ok(reports)
}
