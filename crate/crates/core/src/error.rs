use thiserror::Error;

/// Errors raised by graph, algebra and operator computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument violates a documented precondition.
    #[error("invalid input: {0}")]
    Input(String),

    /// Text in one of the exchange formats could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// Two operands live in different algebras.
    #[error("signature mismatch: {0}")]
    Mismatch(String),

    /// An exhaustive enumeration would exceed its configured budget.
    #[error("enumeration budget exceeded: {free_slots} free slots ({completions} completions) exceed budget {budget}")]
    Budget {
        free_slots: usize,
        completions: u128,
        budget: u128,
    },

    /// A size guard other than the enumeration budget was hit.
    #[error("resource limit: {0}")]
    Resource(String),

    /// Uniform representatives at two consecutive orders disagreed.
    #[error("representatives of the same element disagree between orders {0} and {1}")]
    AmbiguousRepresentative(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
