use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("syntax error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus {0} is not a supported prime")]
    NonPrimeModulus(u64),
    #[error("operands live in different rings ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("divisor is not monic in {0}")]
    NotMonic(String),
    #[error("variable {0} is not allowed here")]
    ForbiddenVariable(String),
    #[error("resource limit exhausted: {0}")]
    ResourceExhausted(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
