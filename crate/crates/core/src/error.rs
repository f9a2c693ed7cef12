use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("expected {expected} values, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("degree {requested} requested for {var:?}, but the polynomial has degree {actual}")]
    DegreeTooLow {
        var: String,
        requested: usize,
        actual: usize,
    },
    #[error("polynomial is not divisible: {0}")]
    NotDivisible(String),
    #[error("expression parse error at byte {pos}: {msg}")]
    Expression { pos: usize, msg: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),
    #[error("unknown sub-proof {0:?}")]
    UnknownSubProof(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
