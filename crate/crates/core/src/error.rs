use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("tautological clause: variable {0} occurs with both polarities")]
    Tautology(u32),

    #[error("variable name `{0}` is already interned")]
    DuplicateName(String),

    #[error("no base variable named `{0}` in the variable map")]
    MissingVariable(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("invalid grid product: {0}")]
    InvalidGridProduct(String),

    #[error("{0} is not an edge of the interval graph")]
    NotAnEdge(String),

    #[error("size guard exceeded: {0}")]
    TooLarge(String),

    #[error("strategy `{strategy}` does not apply: {reason}")]
    NotApplicable { strategy: String, reason: String },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
