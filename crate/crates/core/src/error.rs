//! Error type shared by all modules.

use std::fmt;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by validation and numerical routines.
///
/// Each variant carries a stable machine-readable code (see [`Error::code`])
/// that the CLI prints verbatim and maps onto exit codes: input-validation
/// failures exit 2, numerical failures exit 3.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two points closer than the distinctness threshold (1e-12 · diameter).
    DuplicatePoints,
    /// Fewer points than the operation supports.
    TooFewPoints { found: usize, min: usize },
    /// More points than the operation supports.
    TooManyPoints { found: usize, max: usize },
    /// Ragged input or mismatched ambient dimensions.
    DimensionMismatch { expected: usize, found: usize },
    /// A coordinate is NaN or infinite.
    NonfiniteCoordinate,
    /// A matrix entry is NaN or infinite.
    NonfiniteEntry,
    /// Kelvin center within the guard distance of a configuration point.
    CenterTooClose,
    /// Weight vector is identically zero.
    ZeroWeights,
    /// Point not on the unit sphere within tolerance.
    NotOnSphere,
    /// Angle list is not strictly increasing.
    AnglesNotSorted,
    /// Two angles coincide.
    DuplicateAngles,
    /// Angle outside `[0, 2π)`.
    AnglesOutOfRange,
    /// Configuration search asked for m > p − 1.
    InvalidDimension { p: usize, m: usize },
    /// SimilarityMap rotation not orthogonal or scale not positive.
    InvalidSimilarity(&'static str),
    /// Search options violate their invariants.
    InvalidOptions(&'static str),
    /// Separation list for the cluster stress scenario is invalid.
    InvalidSeparations(&'static str),
    /// No restart of a search produced a finite objective value.
    ConvergenceFailure,
    /// Exact integer determinant exceeded the i128 range.
    DeterminantOverflow,
    /// A document failed to parse or has the wrong shape.
    MalformedDocument(String),
}

impl Error {
    /// Stable machine-readable code for this error.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DuplicatePoints => "DUPLICATE_POINTS",
            Error::TooFewPoints { .. } => "TOO_FEW_POINTS",
            Error::TooManyPoints { .. } => "TOO_MANY_POINTS",
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::NonfiniteCoordinate => "NONFINITE_COORDINATE",
            Error::NonfiniteEntry => "NONFINITE_ENTRY",
            Error::CenterTooClose => "CENTER_TOO_CLOSE",
            Error::ZeroWeights => "ZERO_WEIGHTS",
            Error::NotOnSphere => "NOT_ON_SPHERE",
            Error::AnglesNotSorted => "ANGLES_NOT_SORTED",
            Error::DuplicateAngles => "DUPLICATE_ANGLES",
            Error::AnglesOutOfRange => "ANGLES_OUT_OF_RANGE",
            Error::InvalidDimension { .. } => "INVALID_DIMENSION",
            Error::InvalidSimilarity(_) => "INVALID_SIMILARITY",
            Error::InvalidOptions(_) => "INVALID_OPTIONS",
            Error::InvalidSeparations(_) => "INVALID_SEPARATIONS",
            Error::ConvergenceFailure => "CONVERGENCE_FAILURE",
            Error::DeterminantOverflow => "DETERMINANT_OVERFLOW",
            Error::MalformedDocument(_) => "MALFORMED_DOCUMENT",
        }
    }

    /// True for errors caused by invalid input rather than numerical failure.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::ConvergenceFailure | Error::DeterminantOverflow)
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DuplicatePoints => write!(
                f,
                "DUPLICATE_POINTS: points closer than the distinctness threshold"
            ),
            Error::TooFewPoints { found, min } => {
                write!(f, "TOO_FEW_POINTS: got {found}, need at least {min}")
            }
            Error::TooManyPoints { found, max } => {
                write!(
                    f,
                    "TOO_MANY_POINTS: got {found}, supported maximum is {max}"
                )
            }
            Error::DimensionMismatch { expected, found } => {
                write!(f, "DIMENSION_MISMATCH: expected {expected}, found {found}")
            }
            Error::NonfiniteCoordinate => {
                write!(f, "NONFINITE_COORDINATE: coordinate is NaN or infinite")
            }
            Error::NonfiniteEntry => write!(f, "NONFINITE_ENTRY: matrix entry is NaN or infinite"),
            Error::CenterTooClose => write!(
                f,
                "CENTER_TOO_CLOSE: Kelvin center within guard distance of a point"
            ),
            Error::ZeroWeights => write!(f, "ZERO_WEIGHTS: weight vector is identically zero"),
            Error::NotOnSphere => write!(
                f,
                "NOT_ON_SPHERE: point norm differs from 1 beyond tolerance"
            ),
            Error::AnglesNotSorted => {
                write!(f, "ANGLES_NOT_SORTED: angles must be strictly increasing")
            }
            Error::DuplicateAngles => write!(f, "DUPLICATE_ANGLES: two angles coincide"),
            Error::AnglesOutOfRange => {
                write!(f, "ANGLES_OUT_OF_RANGE: angles must lie in [0, 2pi)")
            }
            Error::InvalidDimension { p, m } => {
                write!(f, "INVALID_DIMENSION: m = {m} exceeds p - 1 = {} (reduce the configuration instead)", p - 1)
            }
            Error::InvalidSimilarity(why) => write!(f, "INVALID_SIMILARITY: {why}"),
            Error::InvalidOptions(why) => write!(f, "INVALID_OPTIONS: {why}"),
            Error::InvalidSeparations(why) => write!(f, "INVALID_SEPARATIONS: {why}"),
            Error::ConvergenceFailure => write!(
                f,
                "CONVERGENCE_FAILURE: no restart produced a finite objective"
            ),
            Error::DeterminantOverflow => write!(
                f,
                "DETERMINANT_OVERFLOW: exact determinant exceeds i128 range"
            ),
            Error::MalformedDocument(why) => write!(f, "MALFORMED_DOCUMENT: {why}"),
        }
    }
}

impl std::error::Error for Error {}
