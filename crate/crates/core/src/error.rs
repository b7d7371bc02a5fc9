use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("0/0 is not a slope")]
    IndeterminateSlope,
    #[error("continued fraction needs at least one coefficient")]
    EmptyContinuedFraction,
    #[error("slope {0} must be finite")]
    InfiniteSlope(String),
    #[error("slope {0} must be positive for the alternating non-negative expansion")]
    NonPositiveSlope(String),
    #[error("slope {0} is outside the Montesinos domain (p, q >= 0)")]
    OutsideMontesinosDomain(String),

    #[error("({0}, {1}) is not a primitive class in H1(T)")]
    NotPrimitive(String, String),
    #[error("curve pair is not unimodular: |det| = {0}, expected 1")]
    NotUnimodular(String),
    #[error("profile is not stable at the search bound {bound}; increase the bound")]
    ThresholdNotFound { bound: u64 },
    #[error("no odd intersection number at n = {0}")]
    NoOddEntry(u64),

    #[error("invalid lashing parameters: {0}")]
    InvalidLashing(String),
    #[error("expected a braid with {expected} twist parameters, found {found}")]
    WrongLength { expected: usize, found: usize },

    #[error("linking matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("linking matrix has a non-zero diagonal entry at {0}")]
    NonZeroDiagonal(usize),
    #[error("{coefficients} coefficients for a {dim}x{dim} linking matrix")]
    DimensionMismatch { coefficients: usize, dim: usize },

    #[error("letter {letter} is out of range for a {strands}-strand braid")]
    InvalidLetter { letter: i32, strands: usize },
    #[error("a braid needs at least two strands, got {0}")]
    TooFewStrands(usize),
    #[error("operation requires a 3-strand braid, got {0} strands")]
    NotThreeStrand(usize),
    #[error("braid is not an alternating 3-braid: {0}")]
    NotAlternating(String),
    #[error("braid must be trivial or begin with a power of sigma_1")]
    NotNormalized,
    #[error("alpha' must have at least 3 positive coefficients: {0}")]
    InvalidAlphaPrime(String),
    #[error("length {length} on {strands} strands closes to a link, not a knot")]
    NotAKnot { strands: u64, length: u64 },

    #[error("parse error: {0}")]
    Parse(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
