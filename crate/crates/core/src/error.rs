use thiserror::Error;

use crate::rootdata::Weight;

/// Errors raised by the library and surfaced by the CLI.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse type string {0:?}")]
    TypeParse(String),
    #[error("unknown Cartan family {0:?}")]
    UnknownFamily(String),
    #[error("rank {rank} is out of range for family {family}")]
    RankOutOfRange { family: char, rank: usize },
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("weight has length {got}, expected {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("weight {0} is not dominant")]
    NotDominant(Weight),
    #[error("simple reflection index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("group of order {order} exceeds the enumeration bound {bound}")]
    GroupTooLarge { order: u64, bound: u64 },
    #[error("weight {0} lies outside the box")]
    OutsideBox(Weight),
    #[error("weight {0} is not in the character lattice")]
    NotInLattice(Weight),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed trace: {0}")]
    MalformedTrace(String),
    #[error("invalid argument: {0}")]
    Usage(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Short machine-readable tag used in CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::TypeParse(_) | Error::UnknownFamily(_) | Error::RankOutOfRange { .. } => "type",
            Error::InvalidLattice(_) => "lattice",
            Error::RankMismatch { .. } => "weight_length",
            Error::NotDominant(_) => "not_dominant",
            Error::IndexOutOfRange { .. } => "index",
            Error::GroupTooLarge { .. } => "group_too_large",
            Error::OutsideBox(_) => "outside_box",
            Error::NotInLattice(_) => "not_in_lattice",
            Error::Precondition(_) => "precondition",
            Error::MalformedTrace(_) => "malformed_trace",
            Error::Usage(_) => "usage",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
