use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("word `{0}` is not in H1 (must be empty or end in y)")]
    NotInH1(String),
    #[error("word `{0}` is not in H0 (must be empty or of the form x...y)")]
    NotInH0(String),
    #[error("index parts must be positive, got {0}")]
    ZeroPart(u32),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("coefficient denominator is divisible by {0}")]
    DenominatorDivisible(u64),
    #[error("invalid prefix-ordered permutation parameters n={n}, s={s}")]
    InvalidPermutation { n: usize, s: usize },
    #[error("at least one derivation index is required")]
    NoDerivations,
    #[error("relation has weight {found}, basis has weight {expected}")]
    WeightMismatch { expected: u32, found: u32 },
    #[error("word `{0}` lies outside the basis space")]
    SpaceMismatch(String),
    #[error("modulus {0} must be below 2^32")]
    ModulusTooLarge(u64),
    #[error("weight {0} is below the minimum for this family")]
    WeightTooSmall(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
