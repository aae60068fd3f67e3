//! The worked relations, term for term.

use fmzv_core::relation::{equal_up_to_sign, index_combination};
use fmzv_core::*;

fn ix(parts: &[u32]) -> Index {
    Index::new(parts.to_vec()).unwrap()
}

fn word(s: &str) -> Word {
    s.parse().unwrap()
}

fn relation_l3_xy() -> Poly {
    index_combination(&[
        (&[5], 1),
        (&[2, 2, 1], -1),
        (&[2, 1, 2], -1),
        (&[1, 2, 2], -1),
        (&[2, 1, 1, 1], -1),
        (&[1, 1, 1, 2], -1),
    ])
}

fn relation_m21_l2_y() -> Poly {
    index_combination(&[
        (&[4, 1, 1], 1),
        (&[2, 3, 1], 1),
        (&[2, 1, 3], 1),
        (&[3, 1, 1, 1], 1),
        (&[1, 3, 1, 1], 1),
        (&[1, 1, 3, 1], 1),
        (&[1, 1, 1, 3], 1),
        (&[2, 1, 2, 1], 1),
        (&[2, 1, 1, 1, 1], -1),
        (&[1, 2, 1, 1, 1], 1),
        (&[1, 1, 1, 2, 1], 1),
        (&[1, 1, 1, 1, 1, 1], -1),
    ])
}

fn relation_m2_l21_y() -> Poly {
    index_combination(&[
        (&[5, 1], 1),
        (&[2, 4], -1),
        (&[3, 2, 1], -1),
        (&[2, 3, 1], -1),
        (&[1, 1, 4], -1),
        (&[3, 1, 1, 1], -2),
        (&[1, 3, 1, 1], -1),
        (&[1, 1, 3, 1], -2),
        (&[2, 1, 2, 1], -1),
        (&[2, 2, 1, 1], 1),
        (&[1, 2, 1, 1, 1], -1),
        (&[1, 1, 1, 1, 1, 1], 1),
    ])
}

#[test]
fn conj_l3_xy_term_for_term() {
    let rel = conj(3, &word("xy")).unwrap();
    assert_eq!(rel.weight, 5);
    assert_eq!(rel.element.len(), 6);
    assert!(equal_up_to_sign(&rel.element, &relation_l3_xy()));
    assert_eq!(
        rel.element.display_index_basis().unwrap(),
        "-1*z(5) + 1*z(2,2,1) + 1*z(2,1,2) + 1*z(2,1,1,1) + 1*z(1,2,2) + 1*z(1,1,1,2)"
    );
}

#[test]
fn z_power_prefix_expansion() {
    // z^2 y · xy expands to x^2yxy + xy^2xy + yxyxy + y^3xy
    let lhs = z_monomial(&ix(&[3])).concat(&Poly::from_word(word("xy")));
    let expected = Poly::from_terms(
        ["xxyxy", "xyyxy", "yxyxy", "yyyxy"]
            .iter()
            .map(|w| (word(w), int(1))),
    );
    assert_eq!(lhs, expected);
}

#[test]
fn thm2_m21_l2_y_term_for_term() {
    let rel = gen_thm2(&ix(&[2, 1]), 2, &word("y")).unwrap();
    assert_eq!(rel.weight, 6);
    assert_eq!(rel.element.len(), 12);
    assert!(equal_up_to_sign(&rel.element, &relation_m21_l2_y()));
}

#[test]
fn thm3_m2_l21_y_term_for_term() {
    let rel = gen_thm3(&ix(&[2]), &ix(&[2, 1]), &word("y")).unwrap();
    assert_eq!(rel.weight, 6);
    assert_eq!(rel.element.len(), 12);
    assert!(equal_up_to_sign(&rel.element, &relation_m2_l21_y()));
}

#[test]
fn prefix_ordered_permutation_letters() {
    // s = 1, t = 2: six permutations with these letter patterns and signs
    let perms = perms_prefix_ordered(3, 1).unwrap();
    assert_eq!(perms.len(), 6);
    let id = &perms[0];
    assert_eq!(id.sigma(), &[1, 2, 3]);
    assert_eq!(
        id.u_letters(),
        vec![ULetter::X, ULetter::X, ULetter::MinusY]
    );
    let swapped = perms.iter().find(|p| p.sigma() == [1, 3, 2]).unwrap();
    assert_eq!(
        swapped.u_letters(),
        vec![ULetter::X, ULetter::MinusY, ULetter::MinusY]
    );
}

#[test]
fn relations_serialize_to_the_documented_schema() {
    let rel = conj(3, &word("xy")).unwrap();
    let line = rel.to_json();
    assert!(line.starts_with(
        r#"{"family":"CONJ","weight":5,"params":{"l":3,"w":"(2)"},"terms":[{"index":[5],"coef":"-1"},{"index":[2,2,1],"coef":"1"}"#
    ));
    assert_eq!(rel.id(), "CONJ/w5/l3/(2)");
    assert_eq!(Relation::from_json(&line).unwrap(), rel);

    let rel3 = gen_thm3(&ix(&[2]), &ix(&[2, 1]), &word("y")).unwrap();
    assert_eq!(rel3.id(), "THM3/w6/m(2)/l(2,1)/(1)");
    assert!(rel3
        .to_json()
        .contains(r#""params":{"m":[2],"l":[2,1],"w":"(1)"}"#));
    assert_eq!(Relation::from_json(&rel3.to_json()).unwrap(), rel3);
}
