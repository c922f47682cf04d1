use thiserror::Error;

/// Structural problems with a statement or its universe.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatementError {
    #[error("dimension must be at least 2, got {0}")]
    DimensionTooSmall(u32),
    #[error("a statement needs at least one point")]
    EmptyUniverse,
    #[error("empty point name")]
    EmptyName,
    #[error("{count} points exceed the configured maximum of {max}")]
    TooManyPoints { count: usize, max: usize },
    #[error("duplicate point name `{0}`")]
    DuplicatePoint(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("constraint on the empty set")]
    EmptyConstraintSet,
    #[error("constraint mentions a point outside the universe")]
    SetOutOfRange,
    #[error("rank value {value} exceeds the dimension cap {cap}")]
    ValueAboveCap { value: u32, cap: u32 },
    #[error("a statement needs at least one conclusion")]
    NoConclusion,
}
