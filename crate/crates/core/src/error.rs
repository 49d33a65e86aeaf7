use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("division by zero in the field")]
    DivisionByZero,

    #[error("structure constants are not associative: (e{0} e{1}) e{2} != e{0} (e{1} e{2})")]
    NonAssociative(usize, usize, usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("factors have different characteristics ({0} and {1})")]
    MixedCharacteristic(u64, u64),

    #[error("ideal is not two-sided; the quotient multiplication is not well defined")]
    NotTwoSided,

    #[error("ring has {size} elements, above the element cap of {cap}")]
    ElementGuard { size: u128, cap: u64 },

    #[error("ideal lattice exceeded the cap of {cap} ideals ({partial} found so far)")]
    IdealGuard { partial: usize, cap: usize },

    #[error("search exceeded its budget: {0}")]
    SearchBudget(String),

    #[error("time budget of {0:?} exhausted")]
    TimeBudget(std::time::Duration),

    #[error("ring admits no cover by proper {0} ideals")]
    Uncoverable(&'static str),

    #[error("invalid decomposition: {0}")]
    DecompositionInvalid(String),

    #[error("unknown {kind} `{name}` (known: {known})")]
    UnknownStrategy {
        kind: &'static str,
        name: String,
        known: String,
    },

    #[error("malformed ring file: {0}")]
    Parse(String),
}

impl Error {
    /// Guard and budget failures, as opposed to bad input or math errors.
    pub fn is_guard(&self) -> bool {
        matches!(
            self,
            Error::ElementGuard { .. }
                | Error::IdealGuard { .. }
                | Error::SearchBudget(_)
                | Error::TimeBudget(_)
        )
    }
}
