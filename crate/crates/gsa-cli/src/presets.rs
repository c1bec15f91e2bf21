//! Benchmark wave-packet configurations.
//!
//! All three presets propagate the same Gaussian wave packet
//! `u(x, 0) = exp(-10 (x - 5)^2) sin(k0 x)` with carrier `k0 dx = 0.22` on a
//! 4096-point periodic grid over `0 <= x <= 10` at phase speed `c = 0.5`:
//!
//! - `fig1`: pure convection, `Nc = 0.1`, 30000 steps,
//! - `fig2`: convection-diffusion, `Nc = 0.1`, `Pe = 0.01`, 30000 steps,
//! - `fig3`: convection-diffusion, `Nc = 0.5`, `Pe = 0.01`, 101 steps.
//!
//! The time step is derived from the CFL number (`dt = Nc dx / c`, e.g.
//! 4.8828125e-4 for `Nc = 0.1`) and the diffusivity from the Peclet number
//! (`nu = Pe dx^2 / dt`, 1.220703125e-4 for the `fig2` preset).

use crate::solver::{SimConfig, SolverError, WavePacket};
use gsa_core::{Error, Result, TimeScheme};

/// Grid points common to all presets.
pub const PRESET_GRID_POINTS: usize = 4096;
/// Domain length common to all presets.
pub const PRESET_DOMAIN: f64 = 10.0;
/// Phase speed common to all presets.
pub const PRESET_PHASE_SPEED: f64 = 0.5;
/// Carrier wavenumber in `k0 dx` form.
pub const PRESET_CARRIER_KDX: f64 = 0.22;

/// Named benchmark configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Convection equation, `Nc = 0.1`, 30000 steps.
    Fig1,
    /// Convection-diffusion, `Nc = 0.1`, `Pe = 0.01`, 30000 steps.
    Fig2,
    /// Convection-diffusion, `Nc = 0.5`, `Pe = 0.01`, 101 steps.
    Fig3,
}

impl Figure {
    /// Parse `"fig1" | "fig2" | "fig3"`.
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fig1" => Ok(Figure::Fig1),
            "fig2" => Ok(Figure::Fig2),
            "fig3" => Ok(Figure::Fig3),
            _ => Err(Error::InvalidParameter("figure must be fig1, fig2 or fig3")),
        }
    }

    /// Preset name.
    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
        }
    }

    /// Nondimensional parameters `(Nc, Pe, steps)`.
    pub fn parameters(self) -> (f64, f64, u64) {
        match self {
            Figure::Fig1 => (0.1, 0.0, 30000),
            Figure::Fig2 => (0.1, 0.01, 30000),
            Figure::Fig3 => (0.5, 0.01, 101),
        }
    }

    /// Default snapshot stride for [`crate::solver::run`].
    pub fn default_stride(self) -> u64 {
        match self {
            Figure::Fig1 | Figure::Fig2 => 5000,
            Figure::Fig3 => 25,
        }
    }
}

/// The standard wave packet for a given grid spacing.
pub fn standard_packet(dx: f64) -> WavePacket {
    WavePacket {
        x0: 5.0,
        envelope_rate: 10.0,
        k0: PRESET_CARRIER_KDX / dx,
    }
}

/// Full configuration of a preset for the chosen time scheme.
pub fn figure_config(
    figure: Figure,
    scheme: TimeScheme,
) -> std::result::Result<SimConfig, SolverError> {
    let (nc, pe, steps) = figure.parameters();
    let dx = PRESET_DOMAIN / PRESET_GRID_POINTS as f64;
    SimConfig::from_nondim(
        PRESET_GRID_POINTS,
        PRESET_DOMAIN,
        PRESET_PHASE_SPEED,
        scheme,
        nc,
        pe,
        steps,
        standard_packet(dx),
    )
}
