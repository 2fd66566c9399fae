use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A malformed group expression or element literal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// 0-based byte offset into the input.
    pub offset: usize,
    pub expected: Vec<String>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at offset {}: {}", self.offset, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected one of: {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error {0}")]
    Parse(#[from] ParseError),
    #[error("{value} exceeds the configured bound {bound}")]
    BoundExceeded { value: String, bound: u64 },
    #[error("elements belong to different groups: {left} vs {right}")]
    ParentMismatch { left: String, right: String },
    #[error("no solution: {0}")]
    NoSolution(String),
    #[error("group has torsion: {0}")]
    NotTorsionFree(String),
    #[error("element has infinite order: {0}")]
    InfiniteOrder(String),
    #[error("group is not torsion: atom {atom} has torsion-free part")]
    NotTorsion { atom: String },
    #[error("group is not finitely generated: atom {atom}")]
    NotFinitelyGenerated { atom: String },
    #[error("group is not divisible: {n}*{atom} != {atom}")]
    NotDivisible { atom: String, n: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("system mixes torsion and torsion-free elements")]
    UnsupportedMix,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// Stable machine-readable name of the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "ParseError",
            Error::BoundExceeded { .. } => "BoundExceeded",
            Error::ParentMismatch { .. } => "ParentMismatch",
            Error::NoSolution(_) => "NoSolution",
            Error::NotTorsionFree(_) => "NotTorsionFree",
            Error::InfiniteOrder(_) => "InfiniteOrder",
            Error::NotTorsion { .. } => "NotTorsion",
            Error::NotFinitelyGenerated { .. } => "NotFinitelyGenerated",
            Error::NotDivisible { .. } => "NotDivisible",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::UnsupportedMix => "UnsupportedMix",
            Error::InvalidArgument(_) => "InvalidArgument",
        }
    }
}
