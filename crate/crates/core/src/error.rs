use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid polymer [{left}, {right}]: right endpoint must exceed left")]
    InvalidPolymer { left: i32, right: i32 },

    #[error("invalid heap: {0}")]
    InvalidHeap(String),

    #[error("piece {0} is not part of the heap")]
    UnknownPiece(String),

    #[error("operation requires a non-empty heap")]
    EmptyHeap,

    #[error("heap is not a pyramid")]
    NotPyramid,

    #[error("heap is not connected")]
    NotConnected,

    #[error("heap is a pyramid; the Nordic decomposition needs at least two minimal pieces")]
    IsPyramid,

    #[error("invalid Nordic quadruple: {0}")]
    InvalidQuadruple(String),

    #[error("invalid animal: {0}")]
    InvalidAnimal(String),

    #[error("site ({x}, {y}) is not part of the animal")]
    SiteNotInAnimal { x: i32, y: i32 },

    #[error("animal is not directed")]
    NotDirected,

    #[error("area must be positive")]
    ZeroArea,

    #[error("area {requested} exceeds the resource budget of {limit} for this class")]
    BudgetExceeded { requested: usize, limit: usize },

    #[error("series has zero constant term and cannot be inverted")]
    NotInvertible,

    #[error("square root needs constant term 1")]
    SqrtConstantTerm,

    #[error("argument {value} outside the domain [{low}, {high})")]
    OutOfDomain { value: f64, low: f64, high: f64 },
}
