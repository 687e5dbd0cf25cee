use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("lattice is not contained in the ambient lattice")]
    NotSublattice,
    #[error("map is not well defined: {0}")]
    IllFormedMap(String),
    #[error("sequence is not a complex at position {0}")]
    NotAComplex(usize),
    #[error("alphabet rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("commutator weight {weight} exceeds truncation degree {degree}")]
    WeightExceedsDegree { weight: usize, degree: usize },
    #[error("not a basic commutator: {0}")]
    NotBasic(String),
    #[error("unresolved atom `{0}`")]
    UnresolvedAtom(String),
    #[error("degree {0} exceeds the configured bound")]
    DegreeOverflow(usize),
    #[error("unsupported window: {0}")]
    UnsupportedWindow(String),
    #[error("not a subgroup: {0}")]
    NotSubgroup(String),
    #[error("section is not abelian")]
    SectionNotAbelian,
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Errors caused by the input or by resource limits rather than by the mathematics.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::DegreeOverflow(_)
                | Error::UnsupportedWindow(_)
                | Error::NotAGroup(_)
                | Error::ResourceBound(_)
                | Error::PreconditionViolated(_)
                | Error::Parse(_)
                | Error::InvalidConfig(_)
                | Error::Io(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
