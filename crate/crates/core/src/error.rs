use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("group too large for explicit enumeration (order {order} exceeds bound {bound})")]
    TooLarge { order: String, bound: usize },

    #[error("coset space too large for the matrix bound (index {index} exceeds {bound})")]
    IndexTooLarge { index: String, bound: usize },

    #[error("element {0} does not lie in the group")]
    NotInGroup(String),

    #[error("structural mismatch: {0}")]
    Structural(String),

    #[error("class functions live on different groups")]
    GroupMismatch,

    #[error("not a character on this subgroup: {0}")]
    NotACharacter(String),

    #[error("degenerate: the correspondence vanishes or has a single double coset")]
    Degenerate,

    #[error("exponent not integral: invalid presentation ({0})")]
    ExponentNotIntegral(String),

    #[error("inconsistent signature: {0}")]
    InconsistentSignature(String),

    #[error("criterion stated only for genus-0 quotient (got genus {0})")]
    NonzeroQuotientGenus(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// The innermost error, with every context layer stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::Context { source, .. } => source.root(),
            other => other,
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(
            self.root(),
            Error::TooLarge { .. } | Error::IndexTooLarge { .. }
        )
    }

    pub fn is_input(&self) -> bool {
        matches!(
            self.root(),
            Error::Parse { .. } | Error::NotInGroup(_) | Error::InvalidInput(_)
        )
    }
}
