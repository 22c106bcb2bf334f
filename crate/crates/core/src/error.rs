use thiserror::Error;

/// Errors raised by the library. Most operations are total on valid input;
/// these variants name the precondition that was violated.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} entries, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),

    #[error("negative component {value} at vertex `{vertex}`")]
    NegativeComponent { vertex: String, value: i64 },

    #[error("the zero dimension vector is not allowed here")]
    ZeroVector,

    #[error("quiver already contains the framing vertex `{0}`")]
    AlreadyExtended(String),

    #[error("invalid rational `{0}`")]
    InvalidRational(String),

    #[error("invalid representation type: {0}")]
    InvalidRepType(String),

    #[error("representation type is not of flower shape: {0}")]
    NotFlower(String),

    #[error("multiplicity {0} found where every multiplicity must be 1")]
    MultiplicityNotOne(u32),

    #[error("slice is not the minimal-leaf slice: {0}")]
    NotMinimalSlice(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("sign vector has {found} entries, arrangement has {expected} integral variables")]
    SignLength { expected: usize, found: usize },

    #[error("polyhedron is unbounded")]
    Unbounded,

    #[error("integer value does not fit in 64 bits")]
    Overflow,

    #[error("chamber is not bounded and nonempty")]
    NotBoundedChamber,

    #[error("no peel index: sign vector does not come from a bounded chamber")]
    NoPeelIndex,

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("leaf point is outside the chart: {0}")]
    OutsideChart(&'static str),

    #[error("singular matrix")]
    Singular,

    #[error("engines disagree: {0}")]
    EngineMismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
