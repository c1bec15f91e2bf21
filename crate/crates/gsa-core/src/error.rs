//! Error type shared by all analysis modules.

use core::fmt;

/// Convenience alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Failures reported by the analysis routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A scheme or grid parameter violates its domain (Nc <= 0, Pe < 0, ...).
    InvalidParameter(&'static str),
    /// A sweep axis is empty, not strictly increasing, or out of range.
    InvalidAxis(&'static str),
    /// The amplification factor vanished; the phase shift is undefined and
    /// the mode has been annihilated. Must not occur for the schemes and
    /// parameter ranges in scope.
    DegenerateAmplification {
        /// Nondimensional wavenumber at which `G = 0` was encountered.
        kdx: f64,
    },
    /// The instability-exclusion policy rejected every CFL number in the
    /// search interval.
    NoAdmissibleCfl,
    /// The requested diagnostic is undefined on this grid (e.g. the numerical
    /// diffusion ratio when Pe = 0).
    MissingField(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
            Error::InvalidAxis(what) => write!(f, "invalid axis: {what}"),
            Error::DegenerateAmplification { kdx } => {
                write!(f, "amplification factor vanished at kdx = {kdx}")
            }
            Error::NoAdmissibleCfl => write!(f, "no admissible Nc in the search interval"),
            Error::MissingField(what) => write!(f, "diagnostic undefined: {what}"),
        }
    }
}

impl core::error::Error for Error {}
