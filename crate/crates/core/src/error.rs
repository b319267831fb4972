use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier size must be at least 1")]
    EmptyCarrier,
    #[error("gamma set must be nonempty")]
    EmptyGamma,
    #[error("duplicate gamma name {0:?}")]
    DuplicateGamma(String),
    #[error("{what}: expected length {expected}, found {found}")]
    DimensionMismatch {
        what: String,
        expected: usize,
        found: usize,
    },
    #[error("{what}: value {value} out of range 0..{bound}")]
    OutOfRange {
        what: String,
        value: usize,
        bound: usize,
    },
    #[error("{what} is {value}, which exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        value: usize,
        cap: usize,
    },
    #[error("semirings or modules do not share the same parent")]
    ParentMismatch,
    #[error("{0} is not a multiplicative system")]
    NotMultiplicative(String),
    #[error("multiplicative system degenerates: closure of {seed:?} reaches 0")]
    DegenerateSystem { seed: Vec<usize> },
    #[error("ideal {members:?} is not prime")]
    NotPrime { members: Vec<usize> },
    #[error("representative-dependent {operation}: {detail}")]
    RepresentativeDependent {
        operation: &'static str,
        detail: String,
    },
    #[error("operation requires a modular semiring")]
    NotModular,
    #[error("{m} does not divide {n}")]
    NotDivisor { m: usize, n: usize },
    #[error("{0} is not group-complete")]
    NotGroupComplete(String),
    #[error("family does not cover the spectrum; uncovered primes {uncovered:?}")]
    NonCovering { uncovered: Vec<usize> },
    #[error("{0} is not an open set")]
    NotOpen(String),
    #[error("open set {inner:?} is not contained in {outer:?}")]
    NotContained {
        inner: Vec<usize>,
        outer: Vec<usize>,
    },
    #[error("preimage of target prime {target_prime} is not a proper ideal")]
    PreimageNotProper { target_prime: usize },
    #[error(
        "preimage of target prime {target_prime} is not prime (this contradicts functoriality)"
    )]
    PreimageNotPrime { target_prime: usize },
    #[error("map is not balanced: {0}")]
    NotBalanced(String),
    #[error("homomorphism does not verify: {0}")]
    NotHomomorphism(String),
    #[error("not a valid structure: {0}")]
    InvalidStructure(String),
    #[error("integer overflow in lattice arithmetic")]
    Overflow,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
