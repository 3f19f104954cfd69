use alloc::string::String;
use core::fmt;

/// Errors surfaced by the exact engine.
///
/// Every rejection is explicit; there are no silent conventions for the
/// zero or unit ideal, and arithmetic overflow is a hard error rather
/// than wraparound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Operands live in polynomial rings of different dimension.
    DimensionMismatch { expected: usize, found: usize },
    /// Exponent or length arithmetic exceeded the integer range.
    Overflow,
    /// The operation requires a nonzero ideal.
    ZeroIdeal,
    /// The operation requires a proper ideal.
    UnitIdeal,
    /// The operation requires an m-primary ideal (a pure power of every
    /// variable among the generators).
    NotMPrimary,
    /// A quotient that must have finite length does not.
    InfiniteLength,
    /// Expected containment between ideals fails.
    ContainmentViolation,
    /// A detected polynomial did not have integer coefficients in the
    /// requested basis; the fit is unusable.
    NonIntegralCoefficients,
    /// A fit of one degree was asked to produce data of another.
    DegreeMismatch { expected: i32, found: i32 },
    /// Parameter out of range (window, horizon, ...).
    InvalidParameter(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "ambient dimension mismatch: expected {expected}, found {found}")
            }
            Error::Overflow => write!(f, "integer overflow in exact arithmetic"),
            Error::ZeroIdeal => write!(f, "operation undefined for the zero ideal"),
            Error::UnitIdeal => write!(f, "operation undefined for the unit ideal"),
            Error::NotMPrimary => write!(f, "ideal is not m-primary"),
            Error::InfiniteLength => write!(f, "quotient does not have finite length"),
            Error::ContainmentViolation => write!(f, "expected ideal containment does not hold"),
            Error::NonIntegralCoefficients => {
                write!(f, "polynomial fit has non-integer coefficients in the binomial basis")
            }
            Error::DegreeMismatch { expected, found } => {
                write!(f, "polynomial degree mismatch: expected {expected}, found {found}")
            }
            Error::InvalidParameter(msg) => write!(f, "invalid parameter: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
