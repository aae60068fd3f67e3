//! Hoffman word algebra `Q<x, y>`, derivation relations for finite multiple
//! zeta values, exact rank tables, and verification of relations through
//! truncated multiple harmonic sums modulo primes.

pub mod derivation;
pub mod error;
pub mod exec;
pub mod index;
pub mod linalg;
pub mod numeric;
pub mod poly;
pub mod relation;
pub mod stuffle;
pub mod word;

pub use derivation::{derive, derive_many, derive_word, phi, substitute, z_power_y};
pub use error::{Error, Result};
pub use index::{compositions, Index};
pub use linalg::{
    family_matrix, rank, rank_exact, rank_mod, relation_rank, relation_rank_with, relation_table,
    to_vector, BasisMap, Mode, Space, SparseMatrixQ, TableRow, DEFAULT_MODULUS,
};
pub use numeric::{
    eval_poly_mod, primes_between, verify, verify_all, zeta_trunc_mod, PrimeEvaluator, Residue,
    ResidueReport, Verdict,
};
pub use poly::{int, word_poly, z_monomial, Coeff, Poly, Subspace};
pub use relation::{
    conj, conj_params, gen_conj, gen_conj_with_unit, gen_ikz, gen_thm2, gen_thm3, gen_thm3_refined,
    generate, ikz, perms_prefix_ordered, thm2_element, thm3_element, thm3_refined_element,
    u_letters, Family, FamilyCaps, Params, PrefixOrderedPermutation, Relation, ULetter,
};
pub use stuffle::{harmonic_product, StuffleMemo};
pub use word::{Letter, Word};

/// `x^{k_1-1} y ... x^{k_d-1} y`.
pub fn word_from_index(ix: &Index) -> Word {
    ix.to_word()
}

pub fn index_from_word(w: &Word) -> Result<Index> {
    Index::from_word(w)
}

pub fn refinements(ix: &Index) -> Vec<Index> {
    ix.refinements()
}

pub fn subspace_membership(p: &Poly) -> Subspace {
    p.subspace()
}
