use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not invertible: gcd with the minimal polynomial has degree {gcd_degree}")]
    NotInvertible { gcd_degree: usize },
    #[error("invalid minimal polynomial: {0}")]
    InvalidMinPoly(String),
    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("basis points are linearly dependent")]
    DependentBasis,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("lines intersect: {0}")]
    LinesMeet(&'static str),
    #[error("cannot compose: first morphism ends at line {first_dst}, second starts at line {second_src}")]
    EndpointMismatch { first_dst: usize, second_src: usize },
    #[error("points of a triple must be pairwise distinct")]
    RepeatedPoint,
    #[error("at least {needed} points are required, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("point set contains a duplicate at position {0}")]
    DuplicatePoint(usize),
    #[error("group exceeds the soundness cap of {cap} elements and is infinite")]
    InfiniteGroup { cap: usize },
    #[error("index {index} out of range for {len} lines")]
    InvalidIndex { index: usize, len: usize },
    #[error("configuration has no marked points on line {0}")]
    MissingMarked(usize),
    #[error("lines {first} and {second} span the same subspace")]
    DuplicateLine { first: usize, second: usize },
    #[error("marked points on line {line} contain a duplicate")]
    DuplicateMarked { line: usize },
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("unknown builtin configuration `{0}`")]
    UnknownBuiltin(String),
    #[error("expected a one-dimensional kernel, found dimension {0}")]
    KernelDimension(usize),
    #[error("lines are not contained in a common hyperplane")]
    NotCoplanar,
    #[error("no labeling exists: {0}")]
    NoLabeling(String),
    #[error("combinatorial precondition violated: {0}")]
    Combinatorial(String),
}

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
