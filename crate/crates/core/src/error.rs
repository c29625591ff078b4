use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("permutation of length {0} exceeds the supported maximum of 255")]
    TooLong(usize),

    #[error("`{0}` is not a permutation of 1..n")]
    NotABijection(String),

    #[error("malformed token `{0}`")]
    BadToken(String),

    #[error("pattern set is empty")]
    EmptyPatternSet,

    #[error("patterns must have length at least 1")]
    EmptyPattern,

    #[error("position {position} is out of range for a permutation of length {len}")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("unknown statistic `{0}`")]
    UnknownStatistic(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("divisor has zero constant term")]
    ZeroConstantDivisor,

    #[error("square root needs constant term 1, found {0}")]
    SqrtConstant(String),

    #[error("inner series of a composition must have zero constant term")]
    ComposeConstant,

    #[error("cannot divide by x^{power}: coefficient {index} is {value}")]
    NotDivisibleByPower { power: usize, index: usize, value: String },

    #[error("coefficient {index} is not an integer: {value}")]
    NonInteger { index: usize, value: String },

    #[error("fixed point did not stabilize within {0} iterations")]
    NoFixedPoint(usize),

    #[error("malformed coefficient `{0}`")]
    BadCoefficient(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Perm(#[from] PermError),

    #[error(transparent)]
    Series(#[from] SeriesError),

    #[error("filter clause `{clause}` cannot be evaluated at length {n}: {source}")]
    Clause {
        clause: String,
        n: usize,
        #[source]
        source: PermError,
    },

    #[error("malformed filter `{0}`")]
    BadFilter(String),

    #[error("unknown case {id}; registered cases: {registered}")]
    UnknownCase { id: u32, registered: String },

    #[error("case {case} has no auxiliary `{name}`; available: {available}")]
    UnknownAuxiliary { case: u32, name: String, available: String },

    #[error("engine `{engine}` failed at level {n}: {message}")]
    Engine {
        engine: &'static str,
        n: usize,
        message: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
