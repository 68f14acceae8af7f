use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid letter {token:?}: {reason}")]
    InvalidLetter { token: String, reason: String },

    #[error("alphabet must be non-empty")]
    EmptyAlphabet,

    #[error("duplicate letter {0:?} in alphabet")]
    DuplicateLetter(String),

    #[error("letter {letter:?} not in alphabet {{{alphabet}}}")]
    LetterOutsideAlphabet { letter: String, alphabet: String },

    #[error("period must be non-empty")]
    EmptyPeriod,

    #[error("preperiod and period use different alphabets ({left} vs {right})")]
    MixedAlphabets { left: String, right: String },

    #[error("index range [{from}, {to}] is invalid")]
    InvalidRange { from: u64, to: u64 },

    #[error("index {index} out of range for word of length {len}")]
    IndexOutOfRange { index: u64, len: usize },

    #[error("operation needs a non-empty word")]
    EmptyWord,

    #[error("invalid machine description:{}", .violations.iter().map(|v| format!("\n  - {v}")).collect::<String>())]
    InvalidMachine { violations: Vec<String> },

    #[error("state {0:?} is not a state of the machine")]
    UnknownState(String),

    #[error("word alphabet {{{word}}} is not apt for machine input alphabet {{{machine}}}")]
    NotApt { word: String, machine: String },

    #[error("series composition needs the first machine's outputs inside the second machine's inputs ({first_output} vs {second_input})")]
    NotComposable {
        first_output: String,
        second_input: String,
    },

    #[error("bit strings have different lengths ({left} vs {right})")]
    BitLengthMismatch { left: usize, right: usize },

    #[error("invalid bit {0:?}: expected '0' or '1'")]
    InvalidBit(String),

    #[error("cannot parse {input:?} as {what}: {reason}")]
    Parse {
        input: String,
        what: &'static str,
        reason: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(input: impl Into<String>, what: &'static str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.into(),
            what,
            reason: reason.into(),
        }
    }
}
