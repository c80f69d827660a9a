use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("path is not composable at arrow `{0}`")]
    NotComposable(String),
    #[error("relation is not homogeneous: {0}")]
    NonHomogeneous(String),
    #[error("relation has length below 2: {0}")]
    ShortRelation(String),
    #[error("relation terms have different endpoints: {0}")]
    MixedEndpoints(String),
    #[error("coefficient outside the session field: {0}")]
    FieldMismatch(String),
    #[error("relations must all have length 2: {0}")]
    NotQuadratic(String),
    #[error("quiver has an oriented cycle through `{0}`")]
    NotAcyclic(String),
    #[error(
        "algebra is not properly graded: maximal paths of lengths {lengths:?}, e.g. {witness}"
    )]
    NotProperlyGraded {
        lengths: Vec<usize>,
        witness: String,
    },
    #[error("degree cutoff {0} reached before the algebra vanished")]
    CutoffExceeded(usize),
    #[error("translation undefined: {0}")]
    MissingTranslate(String),
    #[error("subquiver is not convex: {0}")]
    NonConvex(String),
    #[error("invalid path order: {0}")]
    InvalidPathOrder(String),
    #[error("empty slice range {0}..{1}")]
    EmptyRange(i64, i64),
    #[error("trivial extension is not quadratic: {0}")]
    NonQuadraticTrivialExtension(String),
    #[error("invalid slice choice: {0}")]
    InvalidSlice(String),
    #[error("invalid twist: {0}")]
    InvalidTwist(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("algebra is not finite dimensional: {0}")]
    InfiniteDimensional(String),
    #[error("global dimension {found} exceeds {expected}")]
    GlobalDimension { expected: usize, found: usize },
    #[error("endomorphism ring of {0} is not local")]
    NotLocal(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
