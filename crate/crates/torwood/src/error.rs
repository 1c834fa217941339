use thiserror::Error;

/// Every failure the library can report.
///
/// The variant names are stable and double as the short codes printed by the
/// command line tool (see [`Error::code`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("walk is not a closed walk: {0}")]
    NotACycle(String),
    #[error("cannot contract loop edge {0}")]
    ContractLoop(usize),
    #[error("bad suspension: {0}")]
    BadSuspension(String),
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("impossible: {0}")]
    Impossible(String),
    #[error("not a base map: {0}")]
    NotBase(String),
    #[error("decontraction failed: {0}")]
    DecontractFail(String),
    #[error("map is not essentially 3-connected: {0}")]
    NotEssentially3Connected(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("inconsistent wood: {0}")]
    InconsistentWood(String),
    #[error("embedding violation: {0}")]
    EmbeddingViolation(String),
    #[error("not a triangulation: {0}")]
    NotTriangulation(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    /// Short upper-case code used in diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidStructure(_) => "INVALID_STRUCTURE",
            Error::NotACycle(_) => "NOT_A_CYCLE",
            Error::ContractLoop(_) => "CONTRACT_LOOP",
            Error::BadSuspension(_) => "BAD_SUSPENSION",
            Error::Inconsistent(_) => "INCONSISTENT",
            Error::Impossible(_) => "IMPOSSIBLE",
            Error::NotBase(_) => "NOT_BASE",
            Error::DecontractFail(_) => "DECONTRACT_FAIL",
            Error::NotEssentially3Connected(_) => "NOT_ESSENTIALLY_3CONNECTED",
            Error::WindowTooSmall(_) => "WINDOW_TOO_SMALL",
            Error::InconsistentWood(_) => "INCONSISTENT_WOOD",
            Error::EmbeddingViolation(_) => "EMBEDDING_VIOLATION",
            Error::NotTriangulation(_) => "NOT_TRIANGULATION",
            Error::Parse { .. } => "PARSE",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
