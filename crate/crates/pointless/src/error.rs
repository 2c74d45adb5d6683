use thiserror::Error;

/// Crate-wide error type. Every fallible operation in the library reports
/// through this enum so the CLI can map failures to exit codes uniformly.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero polynomial")]
    DivisionByZero,

    #[error("operands belong to different coefficient fields (F_{0} vs F_{1})")]
    FieldMismatch(u64, u64),

    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("constant or zero polynomial: {0}")]
    ConstantInput(String),

    #[error("polynomial is not irreducible: {0}")]
    NotIrreducible(String),

    #[error("modulus has a repeated place: {0}")]
    DuplicateFactor(String),

    #[error("residue is not coprime to the modulus: {0}")]
    NotCoprime(String),

    #[error("integer factorization failed: {0}")]
    FactorizationFailure(String),

    #[error("group too large: {0}")]
    GroupTooLarge(String),

    #[error("degree {0} does not divide the group order {1}")]
    DegreeNotDividing(u128, u128),

    #[error("place lies in the support of the modulus: {0}")]
    PlaceInSupport(String),

    #[error("place not in the support of the modulus: {0}")]
    PlaceNotInSupport(String),

    #[error("no extension matches the requested data: {0}")]
    NoExtensionFound(String),

    #[error("genus formula produced a non-integer value: {0}")]
    NonIntegerGenus(String),

    #[error("no admissible prime pair in the search window: {0}")]
    NoPrimePair(String),

    #[error("parameter search failed: {0}")]
    ParameterSearchFailed(String),

    #[error("group is not cyclic: {0}")]
    NotCyclic(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
