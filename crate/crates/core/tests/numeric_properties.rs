use fmzv_core::numeric::{skip_bound, Verdict};
use fmzv_core::relation::ikz_shifted;
use fmzv_core::*;

fn ix(parts: &[u32]) -> Index {
    Index::new(parts.to_vec()).unwrap()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Nested loops over `p > n_1 > ... > n_d >= 1`, inverses by Fermat.
fn nested_sum_oracle(parts: &[u32], p: u64) -> u64 {
    fn go(parts: &[u32], upper: u64, p: u64) -> u64 {
        let Some((&k, rest)) = parts.split_first() else {
            return 1 % p;
        };
        let mut acc = 0;
        for n in 1..upper {
            let term = pow_mod(pow_mod(n, p - 2, p), k as u64, p);
            acc = (acc + term * go(rest, n, p)) % p;
        }
        acc
    }
    go(parts, p, p)
}

fn oracle_eval(poly: &Poly, p: u64) -> u64 {
    let mut acc = 0i128;
    for (ix, c) in poly.index_terms().unwrap() {
        assert!(c.is_integer());
        let c: i128 = c.numer().try_into().unwrap();
        acc += c * nested_sum_oracle(ix.parts(), p) as i128;
    }
    acc.rem_euclid(p as i128) as u64
}

#[test]
fn zeta_matches_nested_loops() {
    for p in primes_between(2, 31) {
        for k in 0..=4 {
            for m in compositions(k) {
                assert_eq!(
                    zeta_trunc_mod(&m, p).unwrap().value(),
                    nested_sum_oracle(m.parts(), p),
                    "{} mod {}",
                    m,
                    p
                );
            }
        }
    }
}

#[test]
fn zeta_examples() {
    assert_eq!(zeta_trunc_mod(&Index::empty(), 7).unwrap().value(), 1);
    assert_eq!(zeta_trunc_mod(&ix(&[1, 1]), 5).unwrap().value(), 0);
    assert_eq!(zeta_trunc_mod(&ix(&[4]), 5).unwrap().value(), 4);
    assert_eq!(zeta_trunc_mod(&ix(&[1]), 4), Err(Error::NotPrime(4)));
    assert_eq!(eval_poly_mod(&Poly::one(), 13).unwrap().value(), 1);
    assert_eq!(
        eval_poly_mod(&word_poly(&ix(&[1, 1])), 5).unwrap().value(),
        0
    );
}

#[test]
fn eval_rejects_bad_input() {
    let half = Poly::constant(Coeff::new(1.into(), 7.into()));
    assert_eq!(eval_poly_mod(&half, 7), Err(Error::DenominatorDivisible(7)));
    assert_eq!(eval_poly_mod(&half, 5).unwrap().value(), 3);
    assert!(matches!(
        eval_poly_mod(&Poly::x(), 5),
        Err(Error::NotInH1(_))
    ));
}

#[test]
fn stuffle_is_multiplicative_at_every_prime() {
    let memo = StuffleMemo::new();
    let words: Vec<Word> = (0..=6).flat_map(Word::h1_basis).collect();
    let primes = primes_between(7, 97);
    let mut evaluators: Vec<PrimeEvaluator> = primes
        .iter()
        .map(|&p| PrimeEvaluator::new(p).unwrap())
        .collect();
    for u in &words {
        for v in words.iter().filter(|v| u.degree() + v.degree() <= 6) {
            let pu = Poly::from_word(u.clone());
            let pv = Poly::from_word(v.clone());
            let prod = memo.harmonic_product(&pu, &pv).unwrap();
            for ev in evaluators.iter_mut() {
                let p = ev.prime();
                let lhs = ev.eval(&prod).unwrap().value();
                let rhs = ev.eval(&pu).unwrap().value() * ev.eval(&pv).unwrap().value() % p;
                assert_eq!(lhs, rhs, "{} * {} at {}", u, v, p);
            }
        }
    }
}

#[test]
fn duality_holds_modulo_small_primes() {
    let primes = primes_between(11, 499);
    let mut evaluators: Vec<PrimeEvaluator> = primes
        .iter()
        .map(|&p| PrimeEvaluator::new(p).unwrap())
        .collect();
    for w in (0..=6).flat_map(Word::h1_basis) {
        let pw = Poly::from_word(w.clone());
        let dual = phi(&pw);
        for ev in evaluators.iter_mut() {
            let p = ev.prime();
            if ev.eval(&pw).unwrap() != ev.eval(&dual).unwrap() {
                assert!(p <= skip_bound(w.degree() as u32), "{} fails at {}", w, p);
            }
        }
    }
}

#[test]
fn all_families_vanish_up_to_weight_seven() {
    let primes = primes_between(2, 499);
    let caps = FamilyCaps::default();
    for k in 1..=7 {
        let mut rels = gen_conj_with_unit(k).unwrap();
        for family in [Family::Thm2, Family::Thm3, Family::Thm3r] {
            rels.extend(generate(family, k, caps).unwrap());
        }
        if k >= 2 {
            for ikz in gen_ikz(k + 1).unwrap() {
                rels.push(ikz_shifted(&ikz).unwrap());
            }
        }
        for report in verify_all(&rels, &primes).unwrap() {
            assert!(
                report.passed(),
                "{} fails at {:?}",
                report.relation,
                report.failing_primes()
            );
            for r in &report.results {
                assert_eq!(r.verdict == Verdict::Skipped, r.prime <= k as u64 + 2);
            }
        }
    }
}

#[test]
fn conj_relation_checked_by_oracle() {
    let rel = conj(3, &"xy".parse().unwrap()).unwrap();
    for p in [11, 13] {
        assert_eq!(oracle_eval(&rel.element, p), 0);
    }
    let report = verify(&rel, &primes_between(11, 499)).unwrap();
    assert!(report.results.iter().all(|r| r.verdict == Verdict::Pass));
    assert_eq!(report.counts().pass, primes_between(11, 499).len());

    let rel2 = gen_thm2(&ix(&[2, 1]), 2, &"y".parse().unwrap()).unwrap();
    for p in [11, 13] {
        assert_eq!(oracle_eval(&rel2.element, p), 0);
    }
    assert!(verify(&rel2, &primes_between(11, 499)).unwrap().passed());
}

#[test]
fn depth_one_values_vanish() {
    // Σ n^{-k} ≡ 0 (mod p) unless (p - 1) | k
    for k in 1..=8 {
        let z = word_poly(&ix(&[k]));
        for p in primes_between(k as u64 + 3, 200) {
            assert_eq!(eval_poly_mod(&z, p).unwrap().value(), 0);
        }
    }
}

#[test]
fn non_relation_is_reported() {
    // ζ(2,1) is a multiple of B_{p-3} mod p and is non-zero at regular primes
    let fake = Relation {
        family: Family::Conj,
        weight: 3,
        params: Params {
            m: None,
            l: vec![3],
            w: Word::empty(),
        },
        element: word_poly(&ix(&[2, 1])),
    };
    let primes = primes_between(11, 499);
    let report = verify(&fake, &primes).unwrap();
    assert!(!report.passed());
    let fails = report.failing_primes().len();
    assert!(fails * 10 >= primes.len() * 9, "only {} failures", fails);
    for p in [11, 13] {
        assert_ne!(nested_sum_oracle(&[2, 1], p), 0);
    }
}

#[test]
fn small_primes_are_skipped_not_failed() {
    let rel = conj(3, &"xy".parse().unwrap()).unwrap();
    let report = verify(&rel, &[2, 3, 5, 7, 11]).unwrap();
    let verdicts: Vec<Verdict> = report.results.iter().map(|r| r.verdict).collect();
    assert_eq!(
        verdicts,
        vec![
            Verdict::Skipped,
            Verdict::Skipped,
            Verdict::Skipped,
            Verdict::Skipped,
            Verdict::Pass
        ]
    );
    assert_eq!(
        report.results[4].to_json(),
        r#"{"relation":"CONJ/w5/l3/(2)","prime":11,"residue":0,"verdict":"PASS"}"#
    );
}
