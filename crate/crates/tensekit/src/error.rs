use thiserror::Error;

/// Errors raised by frame, semantics and construction operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown world id `{0}`")]
    UnknownWorld(String),
    #[error("duplicate world id `{0}`")]
    DuplicateWorld(String),
    #[error("world index {0} out of range")]
    WorldOutOfRange(usize),
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("frame is not transitive")]
    NotTransitive,
    #[error("frame is not rooted")]
    NotRooted,
    #[error("variable p{0} has no assigned set")]
    UnassignedVariable(u32),
    #[error("set assigned to p{0} is not internal")]
    NotInternal(u32),
    #[error("map is not total: {0}")]
    MapNotTotal(String),
    #[error("not a verified t-morphism: {0}")]
    NotMorphism(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("unknown closure kind `{0}`")]
    UnknownClosure(String),
    #[error("malformed JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
