//! Error type shared by the solver crate.

use alloc::vec::Vec;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Grid size is not a power of two (or is below the minimum of 8).
    GridSize { n: usize },
    /// Dimension outside {1, 2, 3}.
    GridDim { dim: usize },
    /// A parameter that must be positive (or finite) is not.
    BadParameter { what: &'static str },
    /// Potential support does not fit in the box (needs radius < half_width).
    SupportExceedsBox { radius: f64, half_width: f64 },
    /// Argument outside the mathematical domain of an operation.
    Domain { what: &'static str },
    /// Hölder/admissibility exponent relation violated.
    BadExponents { what: &'static str },
    /// Picard iteration did not contract within the iteration budget.
    PicardDiverged { window: usize, diffs: Vec<f64> },
    /// A field stopped being finite during time marching.
    BlowUp { t: f64 },
    /// Sequence iteration left the representable range at this index.
    Overflow { index: usize },
    /// Operation needs more samples than were supplied.
    TooFewSamples { got: usize, need: usize },
    /// Series samples are not uniformly spaced in time.
    NonUniformSampling,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::GridSize { n } => {
                write!(f, "grid size {n} must be a power of two and at least 8")
            }
            Error::GridDim { dim } => write!(f, "grid dimension {dim} must be 1, 2 or 3"),
            Error::BadParameter { what } => write!(f, "invalid parameter: {what}"),
            Error::SupportExceedsBox { radius, half_width } => write!(
                f,
                "potential support radius {radius} does not fit in box half-width {half_width}"
            ),
            Error::Domain { what } => write!(f, "domain error: {what}"),
            Error::BadExponents { what } => write!(f, "exponent relation violated: {what}"),
            Error::PicardDiverged { window, diffs } => write!(
                f,
                "picard iteration failed to reach tolerance in window {window} after {} iterates",
                diffs.len()
            ),
            Error::BlowUp { t } => write!(f, "non-finite field detected at t = {t}"),
            Error::Overflow { index } => {
                write!(f, "sequence overflowed at index {index}")
            }
            Error::TooFewSamples { got, need } => {
                write!(f, "need at least {need} samples, got {got}")
            }
            Error::NonUniformSampling => write!(f, "samples are not uniformly spaced"),
        }
    }
}
