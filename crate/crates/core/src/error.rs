use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("symbol {symbol:#04x} at byte {offset} is outside the alphabet")]
    OutsideAlphabet { offset: usize, symbol: u8 },

    #[error("non-terminal `{0}` has no production")]
    UndefinedNonTerminal(String),

    #[error("non-terminal `{0}` is defined more than once")]
    DuplicateNonTerminal(String),

    #[error("regex is not well-formed: a repetition body can match the empty string")]
    NotWellFormed,

    #[error("regex extension not supported by this operation")]
    ExtensionNotSupported,

    #[error("step budget exhausted")]
    FuelExhausted,

    #[error("generated grammar is not complete")]
    IncompleteGrammar,

    #[error("search modes disagree on pattern `{pattern}`")]
    ModeMismatch { pattern: String },

    #[error("{0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn syntax(offset: usize, message: impl Into<String>) -> Error {
        Error::Syntax {
            offset,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
