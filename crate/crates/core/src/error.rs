use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("classical limit does not exist: {0}")]
    PoleAtLimit(String),
    #[error("not integrable: {0}")]
    NotIntegrable(String),
    #[error("singular diagonal entry at {0}")]
    SingularDiagonal(String),
    #[error("verification failed: {0}")]
    VerificationFailure(String),
    #[error("quadrature did not converge: {0}")]
    QuadratureNotConverged(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("{0}")]
    Domain(String),
}

impl Error {
    /// Stable machine-readable code used in JSON output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::PoleAtLimit(_) => "PoleAtLimit",
            Error::NotIntegrable(_) => "NotIntegrable",
            Error::SingularDiagonal(_) => "SingularDiagonal",
            Error::VerificationFailure(_) => "VerificationFailure",
            Error::QuadratureNotConverged(_) => "QuadratureNotConverged",
            Error::Parse { .. } => "ParseError",
            Error::Domain(_) => "DomainError",
        }
    }

    /// Process exit code: 1 parse, 3 verification, 2 everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 1,
            Error::VerificationFailure(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
