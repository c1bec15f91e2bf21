//! Global spectral analysis of Fourier-spectral Runge-Kutta discretizations
//! of the 1D linear convection and convection-diffusion equations.
//!
//! A mode `e^{ikx}` advanced one time step by an s-stage explicit Runge-Kutta
//! scheme is multiplied by a complex amplification factor `G(kΔx)`. This crate
//! computes `G` in closed form together with the derived diagnostics (phase
//! shift, numerical phase speed and group velocity, numerical diffusion
//! coefficient, growth ratio against the physical amplification factor) and
//! builds on them:
//!
//! - [`scheme`]: the amplification factor of the 2-, 3- and 4-stage schemes,
//! - [`point`]: all diagnostics at a single `(scheme, Nc, Pe, kΔx)` point,
//! - [`chart`]: rectangular sweeps over the `(Nc, kΔx)`-plane,
//! - [`contour`]: marching-squares extraction of iso-lines (e.g. `|G| = 1`),
//! - [`optimize`]: location of the CFL number minimizing the amplification
//!   error over all resolvable wavenumbers.
//!
//! The crate is `no_std`-compatible (`alloc` required): disable the default
//! `std` feature and enable `libm`.

#![cfg_attr(not(feature = "std"), no_std)]
#![warn(missing_docs)]
// `!(x > 0.0)` is the NaN-rejecting validation idiom used throughout
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("gsa-core requires either the `std` or the `libm` feature");

pub mod chart;
pub mod contour;
pub mod error;
mod math;
pub mod optimize;
pub mod point;
pub mod scheme;

pub use chart::{linspace, ChartField, ChartGrid};
pub use contour::{neutral_boundary, Polyline};
pub use error::{Error, Result};
pub use optimize::{
    error_profile, objective_value, optimal_nc, InstabilityPolicy, Objective, ObjectiveKind,
    OptimalResult, DEFAULT_SEARCH_INTERVAL,
};
pub use point::{exact_gsa_point, gsa_point, gsa_point_with, GsaPoint};
pub use scheme::{
    amplification_factor, amplification_minus_one, exact_amplification,
    exact_amplification_minus_one, lambda_dt, SchemeSpec, TimeScheme,
};
