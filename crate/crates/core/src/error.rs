use thiserror::Error;

use crate::tile::Point;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("tile has no points")]
    EmptyTile,

    #[error("tile is not hereditary: {point} is present but {missing} is not")]
    NotHereditary { point: Point, missing: Point },

    #[error("tile has {cells} cells, more than the limit of {limit}")]
    TileTooLarge { cells: usize, limit: usize },

    #[error("operation requires a nondegenerate tile")]
    DegenerateTile,

    #[error("alphabet is empty")]
    EmptyAlphabet,

    #[error("alphabet lists symbol {0:?} more than once")]
    DuplicateSymbol(String),

    #[error("invalid symbol {0:?}: symbols must be nonempty and may not contain ',' or '|'")]
    InvalidSymbol(String),

    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),

    #[error("no bijection given for pattern {key:?}")]
    MissingPattern { key: String },

    #[error("bijection key {key:?} is not a pattern on the reduced set")]
    UnexpectedPattern { key: String },

    #[error("image table for pattern {key:?} has {got} entries, expected {expected}")]
    BadImageTable { key: String, got: usize, expected: usize },

    #[error("map for pattern {key:?} is not a bijection: {first:?} and {second:?} both map to {image:?}")]
    NotBijective {
        key: String,
        first: String,
        second: String,
        image: String,
    },

    #[error("degenerate tile data must name its distinguished symbol")]
    MissingDistinguishedSymbol,

    #[error("{what} would be {value}, above the cap of {cap}")]
    SizeLimit { what: &'static str, value: String, cap: u64 },

    #[error("input labelling is inconsistent: window at {0} is not a vertex")]
    InconsistentInput(Point),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("source of the first path does not match the range of the second")]
    SourceRangeMismatch,

    #[error("factorisation bounds {m}..{n} are out of range for a path of degree {degree}")]
    OutOfRange { m: Point, n: Point, degree: Point },

    #[error("weight {weight} at {point} is not invertible modulo {modulus}")]
    NotInvertible { point: Point, weight: u64, modulus: u64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("configuration is not admissible: window at ({0}, {1}) is not a vertex")]
    NotAdmissible(i64, i64),

    #[error("configuration region is not a translate of any T(n)")]
    RegionShapeMismatch,

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SizeLimit { .. } => 3,
            Error::Internal(_) => 4,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyTile => "EmptyTile",
            Error::NotHereditary { .. } => "NotHereditary",
            Error::TileTooLarge { .. } => "TileTooLarge",
            Error::DegenerateTile => "DegenerateTile",
            Error::EmptyAlphabet => "EmptyAlphabet",
            Error::DuplicateSymbol(_) => "DuplicateSymbol",
            Error::InvalidSymbol(_) => "InvalidSymbol",
            Error::UnknownSymbol(_) => "UnknownSymbol",
            Error::MissingPattern { .. } => "MissingPattern",
            Error::UnexpectedPattern { .. } => "UnexpectedPattern",
            Error::BadImageTable { .. } => "BadImageTable",
            Error::NotBijective { .. } => "NotBijective",
            Error::MissingDistinguishedSymbol => "MissingDistinguishedSymbol",
            Error::SizeLimit { .. } => "SizeLimit",
            Error::InconsistentInput(_) => "InconsistentInput",
            Error::Precondition(_) => "Precondition",
            Error::SourceRangeMismatch => "SourceRangeMismatch",
            Error::OutOfRange { .. } => "OutOfRange",
            Error::NotInvertible { .. } => "NotInvertible",
            Error::InvalidParams(_) => "InvalidParams",
            Error::NotAdmissible(..) => "NotAdmissible",
            Error::RegionShapeMismatch => "RegionShapeMismatch",
            Error::Internal(_) => "Internal",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
