use thiserror::Error;

use crate::system::SpinLevelIndex;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used by front ends to pick an exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Bad input: invalid parameters, malformed arguments.
    Invalid,
    /// The physics refuses: dissociation, unidentifiable frequency.
    Physics,
    /// A numerical procedure failed to converge.
    Numerical,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid system: {name} {reason}")]
    InvalidSystem { name: &'static str, reason: String },

    #[error("invalid argument: {name} {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    #[error("order too large: n = {n} exceeds {max}")]
    OrderTooLarge { n: u32, max: u32 },

    #[error("dissociation: effective frequency imaginary for M = {m} (Mbar = {mbar})")]
    Dissociation { m: SpinLevelIndex, mbar: f64 },

    #[error("decomposition undefined: {0}")]
    DecompositionUndefined(&'static str),

    #[error("quantum/classical form undefined for these parameters: {0}")]
    RegimeUndefined(&'static str),

    #[error("unbounded below: no discrete spectrum guaranteed for M = {m}")]
    UnboundedBelow { m: SpinLevelIndex },

    #[error("unidentifiable: {0}")]
    Unidentifiable(&'static str),

    #[error("bracket does not contain optimum: [{lo}, {hi}] rad/s")]
    BracketWithoutOptimum { lo: f64, hi: f64 },

    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("eigenvector not converged for eigenvalue {index}")]
    EigenvectorNotConverged { index: usize },

    #[error("oracle did not converge for M = {m} after {refinements} refinements")]
    OracleNotConverged { m: SpinLevelIndex, refinements: usize },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidSystem { .. }
            | Error::InvalidArgument { .. }
            | Error::OrderTooLarge { .. }
            | Error::GridTooCoarse(_) => ErrorKind::Invalid,
            Error::Dissociation { .. }
            | Error::DecompositionUndefined(_)
            | Error::RegimeUndefined(_)
            | Error::UnboundedBelow { .. }
            | Error::Unidentifiable(_)
            | Error::BracketWithoutOptimum { .. } => ErrorKind::Physics,
            Error::EigenvectorNotConverged { .. } | Error::OracleNotConverged { .. } => {
                ErrorKind::Numerical
            }
        }
    }

    pub(crate) fn invalid_argument(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            name,
            reason: reason.into(),
        }
    }
}
