use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("not a bijection on {{1..{degree}}}: {reason}")]
    NotBijection { degree: usize, reason: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{cap} cap exceeded: need {needed}, cap is {limit}")]
    CapExceeded { cap: &'static str, needed: String, limit: String },

    #[error("element {0} is not in the group")]
    NotInGroup(String),

    #[error("subgroup is not normal: {0}")]
    NotNormal(String),

    #[error("empty element set")]
    EmptySet,

    #[error("unknown catalog group `{0}`")]
    UnknownName(String),

    #[error("unknown group class `{0}` (expected abelian, nilpotent or soluble)")]
    UnknownClass(String),

    #[error("invalid transversal: {0}")]
    InvalidTransversal(String),

    #[error("element is not in the socle (top component {0} is not the identity)")]
    NotSocle(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
