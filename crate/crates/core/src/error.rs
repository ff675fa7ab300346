use thiserror::Error;

use crate::cm_field::RejectionReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("argument `{0}` must be nonzero")]
    ZeroArgument(&'static str),

    #[error("kronecker symbol (0|0) is undefined")]
    KroneckerZeroZero,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("expected an odd prime, got {0}")]
    EvenPrime(u64),

    #[error("{p} divides {a}; strip the valuation first")]
    NotCoprime { a: i64, p: u64 },

    #[error("{0} is not a quadratic discriminant (must be a non-square congruent to 0 or 1 mod 4)")]
    NotDiscriminant(i64),

    #[error("discriminant {0} is not fundamental")]
    NotFundamental(i64),

    #[error("prime {p} does not divide {a}")]
    PrimeDoesNotDivide { p: u64, a: u64 },

    #[error("norm {value} exceeds the brute-force bound {bound}")]
    BoundExceeded { value: u64, bound: u64 },

    #[error("(delta, n) = ({delta}, {n}) is not in the index set")]
    OutsideIndexSet { delta: i64, n: i64 },

    #[error("field rejected: {0}")]
    FieldRejected(Box<RejectionReport>),

    #[error("field (D, 2A, 2B) = ({d}, {a2}, {b2}) fails the theorem's assumptions")]
    AssumptionsFailed { d: i64, a2: i64, b2: i64 },

    #[error("wild ramification above 2 in the reflex field is not modelled")]
    WildRamification,

    #[error("arithmetic invariant violated: {0}")]
    Invariant(String),

    #[error("evaluation paths disagree for {what}: definitional {definitional}, closed form {closed_form}")]
    PathMismatch {
        what: &'static str,
        definitional: String,
        closed_form: String,
    },

    #[error("the zero element has no valuation")]
    ZeroElement,
}
