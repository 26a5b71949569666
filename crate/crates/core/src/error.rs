use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The seed reduces to (0, 0) modulo m; only the all-zero cycle exists.
    #[error("seed reduces to the trivial pair (0, 0) modulo {modulus}")]
    TrivialSeed { modulus: u64 },

    #[error("recurrence coefficient q must be nonzero")]
    ZeroCoefficient,

    #[error("invalid modulus {modulus}: {reason}")]
    InvalidModulus { modulus: u64, reason: &'static str },

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    /// q^2 - 4 = 0 for the u-variant, so every prime divides the discriminant.
    #[error("discriminant q^2 - 4 vanishes for q = {q}")]
    DegenerateDiscriminant { q: i64 },

    #[error("cannot factor {value}: cofactor exceeds the trial-division limit")]
    FactorizationLimit { value: u128 },

    #[error("structural prediction disagrees with brute force at m = {modulus} (predicted {predicted}, observed {observed})")]
    Disagreement {
        modulus: u64,
        predicted: bool,
        observed: bool,
    },

    #[error("m = {modulus} lies beyond the verified bound and matches no structural family")]
    OutOfScope { modulus: u64 },

    #[error("modulus {modulus} exceeds the limit {limit} for this operation")]
    ModulusTooLarge { modulus: u64, limit: u64 },

    /// A computed identity that must hold did not; indicates a defect, never bad input.
    #[error("law violated: {0}")]
    LawViolation(String),

    #[error("could not serialize output: {0}")]
    Serialization(String),
}
