use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed multisegment `{text}`: {reason}")]
    Parse { text: String, reason: String },

    #[error("invalid segment [{begin},{end}] for ambient size {n}")]
    InvalidSegment { begin: usize, end: usize, n: usize },

    #[error("ambient sizes differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),

    #[error("no strict majority among {trials} trials ({distinct} distinct outcomes); retry with more trials or a larger prime")]
    NoMajority { trials: usize, distinct: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inconsistent rank profile: negative multiplicity for [{begin},{end}]")]
    InconsistentProfile { begin: usize, end: usize },

    #[error("σ-decomposition did not reach a reduced remainder within {iterations} steps; retry with more trials")]
    PeelingStalled { iterations: usize },

    #[error("enumeration would produce more than {limit} items")]
    BoundExceeded { limit: usize },
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Process exit status used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::InvalidSegment { .. } | Error::AmbientMismatch(..) => 2,
            Error::NoMajority { .. } | Error::PeelingStalled { .. } => 3,
            Error::Precondition(_)
            | Error::InconsistentProfile { .. }
            | Error::BoundExceeded { .. } => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
