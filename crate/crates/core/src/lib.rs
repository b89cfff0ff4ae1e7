//! Image-charge electrostatics for two adjacent unit spheres held as perfect
//! conductors, together with numerical verification of the asymptotic gap-field
//! profile and the blow-up coefficients of the exterior potential.
//!
//! The normalized setting is a pair of unit balls centred at (±(1+δ), 0, 0),
//! separated by a gap of width ε = 2δ. Alternating sphere inversions generate
//! image charges q_n at the axis points ±p_n; their truncated series gives the
//! singular potential h (constant on each sphere, unit flux through each) and
//! its rescaled companion v. Everything downstream — surface fluxes, blow-up
//! coefficients, gap-profile residuals — is computed from those series with
//! certified truncation tails.
//!
//! The crate is `no_std` (with `alloc`); all floating-point kernels go through
//! `libm` so results are identical across platforms. IO, the CLI, and file
//! formats live in the companion `bisphere-cli` crate.

#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod adaptive;
pub mod analysis;
pub mod background;
pub mod calibration;
pub mod coefficients;
pub mod error;
pub mod geometry;
pub mod quadrature;
pub mod sequences;
pub mod singular;

mod gauss;
mod math;
mod sum;

pub use error::Error;
pub use geometry::{rho, SphereConfig, SphereId, Vec3};
pub use sequences::{build_sequence, contraction_ratio, fixed_point, ImageSequence, Landmarks};

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;
