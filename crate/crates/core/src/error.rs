use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation of 1..{len}: {seq:?}")]
    NotAPermutation { seq: Vec<usize>, len: usize },
    #[error("rank {0} exceeds the supported maximum of 255")]
    RankTooLarge(usize),
    #[error("could not parse {0:?}")]
    Parse(String),
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("{what} would need {needed} words, above the cap of {cap}")]
    TooLarge { what: String, needed: u128, cap: u128 },
    #[error("malformed span: {0}")]
    MalformedSpan(String),
    #[error("{pattern} is not contained in {host}")]
    NotContained { pattern: String, host: String },
    #[error("not every spread of {pattern} is contained in {host}")]
    SpreadsNotContained { pattern: String, host: String },
    #[error("internal contradiction: {0}")]
    InternalContradiction(String),
    #[error("positions {positions:?} are not an occurrence of {pattern} in {host}")]
    NotAnOccurrence { pattern: String, host: String, positions: Vec<usize> },
    #[error("inconsistent input: {0}")]
    InconsistentInput(String),
    #[error("{0} contains 132")]
    Not132Avoiding(String),
    #[error("{0} ends in a fixed point")]
    SuppressionViolated(String),
    #[error("avoiders of {0} by length form an infinite set; supply a rank cap")]
    InfiniteWithoutCap(String),
    #[error("no closed formula for length {0}")]
    FormulaUndefined(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
