use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Every failure the solvers can report.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A scalar parameter was outside its admissible range.
    OutOfRange { name: &'static str, value: f64 },
    /// Two objects that must agree in size did not.
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    /// An index (decision maker, coordinate, rule, ...) was out of bounds.
    IndexOutOfBounds {
        context: &'static str,
        index: usize,
        len: usize,
    },
    /// A probability vector was negative somewhere or did not sum to one.
    NotADistribution { context: &'static str, total: f64 },
    /// A finite environment listed the same symbol vector twice.
    DuplicateOutcome,
    /// A matrix that must be symmetric was not.
    NotSymmetric {
        context: &'static str,
        deviation: f64,
    },
    /// A matrix that must be positive (semi)definite was not.
    NotPositiveDefinite {
        context: &'static str,
        min_eigenvalue: f64,
    },
    /// Gaussian elimination met a pivot below the singularity threshold.
    Singular {
        context: &'static str,
        step: usize,
        pivot: f64,
    },
    /// An enumeration would exceed the configured cap.
    CapExceeded {
        context: &'static str,
        count: u128,
        cap: u128,
    },
    /// A value that must be finite was NaN or infinite.
    NonFinite { context: &'static str },
    /// The structure of a game or spec is inconsistent.
    InvalidStructure(String),
    /// The zero-sum game failed one or more of its well-posedness conditions.
    InvalidGame(Vec<String>),
    /// An iterative or LP routine could not certify its answer.
    NumericalFailure(String),
    /// The second-order conditions of a stationary point do not certify a saddle.
    NotASaddle {
        max_curvature: f64,
        min_block_eigenvalue: f64,
    },
    /// Grid refinement settled on the boundary of its search box.
    BoundaryExhausted { coordinate: usize },
    /// A string could not be parsed as a number.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OutOfRange { name, value } => {
                write!(f, "parameter {name} = {value} is out of range")
            }
            Error::DimensionMismatch {
                context,
                expected,
                found,
            } => {
                write!(f, "{context}: expected dimension {expected}, found {found}")
            }
            Error::IndexOutOfBounds {
                context,
                index,
                len,
            } => {
                write!(f, "{context}: index {index} out of bounds for length {len}")
            }
            Error::NotADistribution { context, total } => {
                write!(
                    f,
                    "{context}: not a probability distribution (total mass {total})"
                )
            }
            Error::DuplicateOutcome => write!(f, "duplicate outcome in finite environment"),
            Error::NotSymmetric { context, deviation } => {
                write!(
                    f,
                    "{context}: matrix is not symmetric (max deviation {deviation:e})"
                )
            }
            Error::NotPositiveDefinite {
                context,
                min_eigenvalue,
            } => {
                write!(
                    f,
                    "{context}: not positive definite (minimum eigenvalue {min_eigenvalue:e})"
                )
            }
            Error::Singular {
                context,
                step,
                pivot,
            } => {
                write!(
                    f,
                    "{context}: singular system (pivot {pivot:e} at elimination step {step})"
                )
            }
            Error::CapExceeded {
                context,
                count,
                cap,
            } => {
                write!(
                    f,
                    "{context}: {count} items exceed the enumeration cap {cap}"
                )
            }
            Error::NonFinite { context } => write!(f, "{context}: non-finite value"),
            Error::InvalidStructure(msg) => write!(f, "invalid structure: {msg}"),
            Error::InvalidGame(violations) => {
                write!(f, "invalid zero-sum game:")?;
                for v in violations {
                    write!(f, " [{v}]")?;
                }
                Ok(())
            }
            Error::NumericalFailure(msg) => write!(f, "numerical failure: {msg}"),
            Error::NotASaddle {
                max_curvature,
                min_block_eigenvalue,
            } => write!(
                f,
                "stationary point is not a saddle (maximizer curvature {max_curvature:e}, \
                 minimizer block eigenvalue {min_block_eigenvalue:e})"
            ),
            Error::BoundaryExhausted { coordinate } => {
                write!(
                    f,
                    "grid refinement hit the search box boundary in coordinate {coordinate}"
                )
            }
            Error::Parse(s) => write!(f, "cannot parse number from {s:?}"),
        }
    }
}

impl core::error::Error for Error {}
