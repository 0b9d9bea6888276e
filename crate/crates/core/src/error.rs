use thiserror::Error;

/// Errors raised by every module of the crate.
///
/// [`Error::kind`] gives a stable identifier used in machine-readable output.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic 2 is not supported (p = {0})")]
    EvenCharacteristic(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime power")]
    NotPrimePower(u64),
    #[error("modulus polynomial {0:?} is reducible or malformed")]
    ReduciblePolynomial(Vec<u32>),
    #[error("no built-in modulus polynomial for q = {p}^{e}")]
    NoBuiltinPolynomial { p: u64, e: u32 },
    #[error("field order {0} exceeds the supported range")]
    FieldTooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element has no square root")]
    NonResidue,
    #[error("element index {0} is outside the field")]
    InvalidElement(u64),
    #[error("work of {needed} exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("no particular solution: the system is inconsistent")]
    NoParticularSolution,
    #[error("vertex set is not an odd-parity cover of the odd-extension")]
    InvalidCover,
    #[error("vertex set does not split the graph into two even induced subgraphs")]
    NotCoEven,
    #[error("evaluation set is empty")]
    EmptySet,
    #[error("evaluation set fails the self-dual criterion")]
    Infeasible,
    #[error("no scaling constant produced a self-orthogonal generator")]
    ConstructionFailed,
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("{0} requires a Paley graph (q = 1 mod 4)")]
    NotAGraph(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable, machine-readable name of the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EvenCharacteristic(_) => "EvenCharacteristic",
            Error::NotPrime(_) => "NotPrime",
            Error::NotPrimePower(_) => "NotPrimePower",
            Error::ReduciblePolynomial(_) => "ReduciblePolynomial",
            Error::NoBuiltinPolynomial { .. } => "NoBuiltinPolynomial",
            Error::FieldTooLarge(_) => "FieldTooLarge",
            Error::DivisionByZero => "DivisionByZero",
            Error::NonResidue => "NonResidue",
            Error::InvalidElement(_) => "InvalidElement",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::TooLarge(_) => "TooLarge",
            Error::NoParticularSolution => "NoParticularSolution",
            Error::InvalidCover => "InvalidCover",
            Error::NotCoEven => "NotCoEven",
            Error::EmptySet => "EmptySet",
            Error::Infeasible => "Infeasible",
            Error::ConstructionFailed => "ConstructionFailed",
            Error::DomainError(_) => "DomainError",
            Error::NotAGraph(_) => "NotAGraph",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Fails with [`Error::BudgetExceeded`] when `needed > budget`.
pub(crate) fn check_budget(needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}
