use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failures surfaced by group construction and the exhaustive machinery.
///
/// The error type is `Clone` so results can live inside per-group memo
/// tables without re-running a failed computation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a permutation: {0:?} is not a bijection")]
    BadPermutation(Vec<usize>),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("{what} cap exceeded (cap {cap})")]
    CapExceeded { what: &'static str, cap: usize },
    #[error("subgroups belong to different parent groups")]
    ParentMismatch,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("not a p-group")]
    NotPGroup,
    #[error("{0} radical is not unique: maximal candidate misses another candidate (implementation bug)")]
    RadicalNotUnique(&'static str),
    #[error("order mismatch for {name}: expected {expected}, got {got}")]
    OrderMismatch {
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("unknown property {0:?}")]
    UnknownProperty(String),
    #[error("i/o error: {0}")]
    Io(String),
}
