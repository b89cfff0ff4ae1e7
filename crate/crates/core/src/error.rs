//! Error type shared by all modules.

use alloc::string::String;
use core::fmt;

/// Everything that can go wrong across the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A radius, gap, half-gap, or tolerance that must be positive was not.
    NonPositiveGeometry { what: &'static str, value: f64 },
    /// Reflection requested at the sphere centre, where inversion is undefined.
    SingularPoint,
    /// The tail criterion was not reached within the configured term cap.
    TruncationOverflow { cap: usize },
    /// Malformed background-potential expression.
    Parse(String),
    /// The background polynomial is not harmonic; carries the formatted
    /// Laplacian residual.
    NonHarmonic { residual: String },
    /// Field evaluation requested strictly inside one of the balls.
    PointInsideInclusion,
    /// The adaptive integrator could not reach the requested tolerance.
    QuadratureFailure,
    /// Surface rule order outside the supported range.
    UnsupportedOrder(u32),
    /// Gap-residual evaluation requested outside the gap region.
    OutsideGapRegion,
    /// A series tail failed to meet the requested tolerance.
    ConvergenceFailure,
    /// Log-log fit impossible: fewer than three samples, non-positive data,
    /// or all abscissae equal.
    DegenerateFit,
    /// A precondition not covered by a more specific variant.
    InvalidInput(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPositiveGeometry { what, value } => {
                write!(f, "NonPositiveGeometry: {what} = {value} must be positive")
            }
            Error::SingularPoint => write!(
                f,
                "SingularPoint: reflection undefined at the sphere centre"
            ),
            Error::TruncationOverflow { cap } => {
                write!(
                    f,
                    "TruncationOverflow: tail tolerance not reached within {cap} terms"
                )
            }
            Error::Parse(msg) => write!(f, "ParseError: {msg}"),
            Error::NonHarmonic { residual } => write!(f, "NonHarmonic: Δ = {residual}"),
            Error::PointInsideInclusion => {
                write!(f, "PointInsideInclusion: point lies inside a ball")
            }
            Error::QuadratureFailure => write!(f, "QuadratureFailure: adaptive refinement stalled"),
            Error::UnsupportedOrder(order) => {
                write!(
                    f,
                    "UnsupportedOrder: {order} (need an even order in 6..=128)"
                )
            }
            Error::OutsideGapRegion => {
                write!(f, "OutsideGapRegion: point is not in the gap region")
            }
            Error::ConvergenceFailure => {
                write!(f, "ConvergenceFailure: series tail above tolerance")
            }
            Error::DegenerateFit => write!(
                f,
                "DegenerateFit: need ≥3 positive samples with varying abscissae"
            ),
            Error::InvalidInput(what) => write!(f, "InvalidInput: {what}"),
        }
    }
}

impl core::error::Error for Error {}
