use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported dimension {0}")]
    InvalidDimension(usize),

    #[error("coordinate {coord} of point {point} is not finite")]
    NonFinite { point: usize, coord: usize },

    #[error("box has empty interior on axis {axis}")]
    InvalidBox { axis: usize },

    #[error("point {index} lies outside the region")]
    PointOutsideRegion { index: usize },

    #[error("region has zero extent on axis {axis}")]
    DegenerateRegion { axis: usize },

    #[error("epsilon must lie in (0, 1), got {0}")]
    InvalidEpsilon(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("window at {lower:?} with sizes {sizes:?} does not fit tensor shape {shape:?}")]
    WindowOutOfRange {
        lower: Vec<usize>,
        sizes: Vec<usize>,
        shape: Vec<usize>,
    },

    #[error("oracle refused n={n}, d={d}: exceeds scale guard (max n={limit} for this d); pass force to override")]
    ScaleGuard { n: usize, d: usize, limit: usize },

    #[error("unknown configuration `{0}`")]
    UnknownConfig(String),

    #[error("no empty canonical placement found")]
    NoPlacement,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
