use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: expected a prime not dividing 6")]
    InvalidModulus(u64),
    #[error("{value} is not {p}-integral")]
    NotIntegral { value: String, p: u64 },
    #[error("valuation of zero is undefined")]
    UndefinedValuation,
    #[error("division by zero")]
    DivisionByZero,
    #[error("value is zero at the working precision; residue is not determined")]
    PrecisionExhausted,
    #[error("coefficient c_{r} has negative valuation {valuation} at p = {p}")]
    IntegralityViolation { r: usize, valuation: i64, p: u64 },
    #[error("j-invariant {0} is excluded (j = 0 or j = 1728)")]
    ExcludedJ(String),
    #[error("curve is singular")]
    Singular,
    #[error("supplied square root does not square to {0}")]
    BadRoot(String),
    #[error("field size {q} exceeds the point-count bound {bound}")]
    ResourceLimit { q: u64, bound: u64 },
    #[error("Hasse bound violated: a = {a}, q = {q}")]
    HasseViolation { a: i64, q: u64 },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("integer overflow in fixed-width kernel")]
    Overflow,
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

impl Error {
    /// Violations of a check's hypotheses, as opposed to internal faults.
    /// Sweeps report the former as skips.
    pub fn is_hypothesis(&self) -> bool {
        matches!(
            self,
            Error::InvalidModulus(_)
                | Error::NotIntegral { .. }
                | Error::ExcludedJ(_)
                | Error::Singular
                | Error::ResourceLimit { .. }
                | Error::Precondition(_)
        )
    }
}
