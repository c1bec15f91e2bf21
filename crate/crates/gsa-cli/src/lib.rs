//! Pseudo-spectral solver, file exports and CLI plumbing on top of
//! [`gsa_core`].
//!
//! - [`solver`]: FFT-based periodic solver for the 1D linear convection and
//!   convection-diffusion equations with RK2/RK3/RK4 stepping, the analytic
//!   per-mode exact solution, the diagonal GSA prediction, error norms and
//!   the error-budget decomposition.
//! - [`presets`]: the benchmark wave-packet configurations.
//! - [`io`]: CSV/JSON writers for charts, snapshots, norm series, budgets
//!   and optimizer records.
//! - [`manifest`]: the per-run reproducibility manifest.
//! - [`cli`]: subcommand implementations behind the `gsa` binary.

// `!(x > 0.0)` is the NaN-rejecting validation idiom used throughout
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod io;
pub mod manifest;
pub mod presets;
pub mod solver;
