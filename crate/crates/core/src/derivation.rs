//! The derivations `∂_l` and the duality automorphism `φ`.

use num_traits::One;

use crate::poly::{Coeff, Poly};
use crate::word::{Letter, Word};

/// `z^{l-1} y`, expanded.
pub fn z_power_y(l: u32) -> Poly {
    assert!(l >= 1, "derivation index must be at least 1");
    Poly::z().pow(l - 1).concat(&Poly::y())
}

/// `∂_l(x) = x z^{l-1} y`, which is also `-∂_l(y)`.
fn derivation_image(l: u32) -> Poly {
    Poly::x().concat(&z_power_y(l))
}

/// Applies `∂_l` to a single word via the Leibniz rule.
pub fn derive_word(l: u32, word: &Word) -> Poly {
    let image = derivation_image(l);
    let letters = word.letters();
    let mut out = Poly::zero();
    for (i, &letter) in letters.iter().enumerate() {
        for (d, c) in image.iter() {
            let mut w = Vec::with_capacity(letters.len() + d.degree() - 1);
            w.extend_from_slice(&letters[..i]);
            w.extend_from_slice(d.letters());
            w.extend_from_slice(&letters[i + 1..]);
            let coeff = match letter {
                Letter::X => c.clone(),
                Letter::Y => -c.clone(),
            };
            out.add_term(Word::from_letters(w), coeff);
        }
    }
    out
}

/// `∂_l(p)`, extended linearly. `∂_l(1) = 0`.
pub fn derive(l: u32, p: &Poly) -> Poly {
    let mut out = Poly::zero();
    for (w, c) in p.iter() {
        out += &derive_word(l, w).scale(c);
    }
    out
}

/// `∂_{l_1} ∂_{l_2} ... ∂_{l_t}(p)`, applying `∂_{l_t}` first.
pub fn derive_many(ls: &[u32], p: &Poly) -> Poly {
    ls.iter().rev().fold(p.clone(), |acc, &l| derive(l, &acc))
}

/// The algebra endomorphism sending `x ↦ img_x`, `y ↦ img_y`.
pub fn substitute(p: &Poly, img_x: &Poly, img_y: &Poly) -> Poly {
    let mut out = Poly::zero();
    for (w, c) in p.iter() {
        let mut acc = Poly::constant(c.clone());
        for &letter in w.letters() {
            acc = acc.concat(match letter {
                Letter::X => img_x,
                Letter::Y => img_y,
            });
        }
        out += &acc;
    }
    out
}

/// Duality automorphism `φ(x) = x + y`, `φ(y) = -y`.
pub fn phi(p: &Poly) -> Poly {
    let minus_y = Poly::y().scale(&-Coeff::one());
    substitute(p, &Poly::z(), &minus_y)
}
