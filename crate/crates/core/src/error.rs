use thiserror::Error;

use crate::oracle::CountEvidence;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("quiver has an oriented cycle through vertex `{0}`")]
    CyclicQuiver(String),

    #[error("duplicate {kind} id `{id}`")]
    DuplicateId { kind: &'static str, id: String },

    #[error("arrow `{arrow}` refers to unknown vertex `{vertex}`")]
    UnknownVertex { arrow: String, vertex: String },

    #[error("vector of length {got} does not match a quiver with {expected} vertices")]
    MismatchedQuiver { expected: usize, got: usize },

    #[error("{alpha} is not componentwise below {beta}")]
    NotBelow { alpha: String, beta: String },

    #[error("the zero dimension vector is not allowed here")]
    ZeroVector,

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("sampled hom {hom} is below the Euler form {euler} for ({alpha}, {beta})")]
    NegativeExt {
        alpha: String,
        beta: String,
        hom: u64,
        euler: i64,
    },

    #[error("{0} is not a usable prime")]
    BadPrime(u64),

    #[error("representations live over different fields (p = {0} and p = {1})")]
    FieldMismatch(u64, u64),

    #[error("enumeration exceeded the budget of {budget} ({what})")]
    TooLarge { what: String, budget: u64 },

    #[error("budget exhausted: {0}")]
    Budget(String),

    #[error("oracle inconclusive for {what}")]
    Inconclusive {
        what: String,
        evidence: Vec<CountEvidence>,
    },

    #[error("ordered decomposition {0} is not well covering")]
    NotWellCovering(String),

    #[error("input outside the supported envelope: {0}")]
    OutsideEnvelope(String),

    #[error("parse error in {field}: {message}")]
    Parse { field: String, message: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

impl Error {
    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }
}
