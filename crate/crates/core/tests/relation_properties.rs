use fmzv_core::relation::conj_element;
use fmzv_core::*;

fn h1_words_up_to(max_degree: usize) -> Vec<Word> {
    (0..=max_degree).flat_map(Word::h1_basis).collect()
}

fn ix(parts: &[u32]) -> Index {
    Index::new(parts.to_vec()).unwrap()
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[test]
fn prefix_ordered_permutation_counts() {
    for n in 1..=6 {
        for s in 1..=n {
            let perms = perms_prefix_ordered(n, s).unwrap();
            assert_eq!(perms.len(), factorial(n) / factorial(s), "n={} s={}", n, s);
            for p in &perms {
                let positions: Vec<usize> = (1..=s)
                    .map(|v| p.sigma().iter().position(|&x| x == v).unwrap())
                    .collect();
                assert!(positions.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }
    assert_eq!(perms_prefix_ordered(3, 3).unwrap()[0].sigma(), &[1, 2, 3]);
    assert_eq!(perms_prefix_ordered(4, 2).unwrap().len(), 12);
}

#[test]
fn prefix_ordered_permutation_errors() {
    assert!(perms_prefix_ordered(0, 0).is_err());
    assert!(perms_prefix_ordered(2, 3).is_err());
}

#[test]
fn u_letter_boundary_case() {
    let p = &perms_prefix_ordered(1, 0).unwrap()[0];
    assert_eq!(u_letters(p), vec![ULetter::MinusY]);
}

#[test]
fn conj_parameter_count() {
    for k in 1..=10u32 {
        let expected: usize = (1..=k).map(|l| 1usize << (k.saturating_sub(l + 1))).sum();
        let params = conj_params(k);
        assert_eq!(params.len(), expected);
        assert!(params.contains(&(k, Word::empty())));
        assert_eq!(gen_conj_with_unit(k).unwrap().len(), expected);
        assert_eq!(gen_conj(k).unwrap().len(), expected - 1);
    }
}

#[test]
fn unit_seed_gives_sum_of_all_compositions() {
    for k in 1..=6 {
        let rel = conj(k, &Word::empty()).unwrap();
        let all: Poly = compositions(k).iter().map(word_poly).sum();
        assert_eq!(rel.element, all);
    }
}

#[test]
fn ikz_elements_lie_in_x_h_y() {
    for k in 3..=8 {
        for rel in gen_ikz(k).unwrap() {
            assert_eq!(rel.element.subspace(), Subspace::H0);
            assert!(rel.element.words().all(|w| w.first() == Some(Letter::X)));
            assert_eq!(rel.element.homogeneous_degree(), Some(k as usize));
        }
    }
}

#[test]
fn relations_are_homogeneous_in_h1() {
    let caps = FamilyCaps::default();
    for family in Family::ALL {
        for k in family.min_weight().max(2)..=6 {
            for rel in generate(family, k, caps).unwrap() {
                assert_eq!(rel.weight, k);
                assert_eq!(
                    rel.element.homogeneous_degree(),
                    Some(k as usize),
                    "{}",
                    rel.id()
                );
                assert!(rel.element.in_h1());
                assert!(!rel.is_zero());
            }
        }
    }
}

#[test]
fn thm2_equals_conj_on_prefixed_seed() {
    for total in 1..=8u32 {
        for a in 0..total {
            for m in compositions(a) {
                for l in 1..=total - a {
                    for w in Word::h1_basis((total - a - l) as usize) {
                        let seed = z_monomial(&m).concat(&Poly::from_word(w.clone()));
                        let expected = conj_element(l, &seed);
                        assert_eq!(
                            thm2_element(&m, l, &w).unwrap(),
                            expected,
                            "m={} l={} w={}",
                            m,
                            l,
                            w
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn thm2_without_prefix_is_conj() {
    for w in h1_words_up_to(5) {
        for l in 1..=3 {
            let a = gen_thm2(&Index::empty(), l, &w).unwrap();
            let b = conj(l, &w).unwrap();
            assert_eq!(a.element, b.element);
        }
    }
}

#[test]
fn thm3_with_one_derivation_is_thm2() {
    for m in (0..=4).flat_map(compositions) {
        for l in 1..=3 {
            for w in h1_words_up_to(3) {
                assert_eq!(
                    thm3_element(&m, &ix(&[l]), &w).unwrap(),
                    thm2_element(&m, l, &w).unwrap(),
                    "m={} l={} w={}",
                    m,
                    l,
                    w
                );
            }
        }
    }
}

#[test]
fn thm3_rejects_bad_input() {
    assert_eq!(
        gen_thm3(&ix(&[2]), &Index::empty(), &Word::empty()),
        Err(Error::NoDerivations)
    );
    assert!(matches!(
        gen_thm3(&ix(&[2]), &ix(&[1]), &"yx".parse().unwrap()),
        Err(Error::NotInH1(_))
    ));
    assert!(matches!(
        gen_thm2(&ix(&[2]), 1, &"x".parse().unwrap()),
        Err(Error::NotInH1(_))
    ));
    assert!(gen_thm3_refined(&ix(&[1]), &Index::empty(), &Word::empty()).is_err());
}

/// Parameter triples `(m, l, w)` with `|m| + |l| + |w| = total`, `t <= max_t`.
fn multi_params(total: u32, max_t: usize) -> Vec<(Index, Index, Word)> {
    let mut out = Vec::new();
    for a in 0..total {
        for m in compositions(a) {
            for b in 1..=total - a {
                for l in compositions(b).into_iter().filter(|l| l.depth() <= max_t) {
                    for w in Word::h1_basis((total - a - b) as usize) {
                        out.push((m.clone(), l.clone(), w));
                    }
                }
            }
        }
    }
    out
}

#[test]
fn refined_form_matches_refinement_sums() {
    for total in 1..=7 {
        for (m, l, w) in multi_params(total, 2) {
            let refined: Poly = m
                .refinements()
                .iter()
                .map(|mr| thm3_refined_element(mr, &l, &w).unwrap())
                .sum();
            assert_eq!(
                thm3_element(&m, &l, &w).unwrap(),
                refined,
                "m={} l={} w={}",
                m,
                l,
                w
            );

            let mut alternating = Poly::zero();
            for mr in m.refinements() {
                let sign = if (mr.depth() - m.depth()) % 2 == 0 {
                    1
                } else {
                    -1
                };
                alternating += &thm3_element(&mr, &l, &w).unwrap().scale(&int(sign));
            }
            assert_eq!(thm3_refined_element(&m, &l, &w).unwrap(), alternating);
        }
    }
}

#[test]
fn refined_form_with_unit_parts_is_thm3() {
    for s in 0..=3 {
        let m = Index::new(vec![1; s]).unwrap();
        for (l, w) in [(ix(&[2]), "y"), (ix(&[1, 2]), "xy"), (ix(&[3]), "1")] {
            let w: Word = w.parse().unwrap();
            assert_eq!(
                thm3_refined_element(&m, &l, &w).unwrap(),
                thm3_element(&m, &l, &w).unwrap()
            );
        }
    }
}

#[test]
fn generation_is_deterministic() {
    let caps = FamilyCaps::default();
    let a: Vec<String> = generate(Family::Thm3, 6, caps)
        .unwrap()
        .iter()
        .map(Relation::to_json)
        .collect();
    let b: Vec<String> = generate(Family::Thm3, 6, caps)
        .unwrap()
        .iter()
        .map(Relation::to_json)
        .collect();
    assert_eq!(a, b);
}

#[test]
fn ikz_shift_produces_conj_relation() {
    for rel in gen_ikz(6).unwrap() {
        let finite = relation::ikz_shifted(&rel).unwrap();
        assert_eq!(finite.weight, 5);
        let lifted = Poly::x().concat(&finite.element);
        assert!(relation::equal_up_to_sign(&lifted, &rel.element));
    }
}
