use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("quotient does not have integer coefficients")]
    NonIntegralQuotient,
    #[error("division is not exact")]
    InexactDivision,
    #[error("operation is undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("prime {0} divides the leading coefficient")]
    BadPrime(u64),
    #[error("factor recombination exceeded its budget ({modular_factors} modular factors, subset cap {max_subset})")]
    RecombinationOverflow { modular_factors: usize, max_subset: usize },
    #[error("structure violation: {0}")]
    StructureViolation(String),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("Phi_{0} does not divide the polynomial")]
    NotACyclotomicFactor(u64),
    #[error("closure exceeded {0} elements")]
    ClosureBudgetExceeded(usize),
    #[error("malformed candidate: {0}")]
    MalformedCandidate(String),
    #[error("root iteration did not converge within {0} sweeps")]
    ConvergenceFailure(usize),
    #[error("mesh point hit the zero set of the polynomial")]
    SingularGrid,
    #[error("input must be non-zero")]
    ZeroInput,
}
