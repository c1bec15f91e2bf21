//! Runge-Kutta scheme descriptions and closed-form amplification factors.
//!
//! For the 1D equation `u_t + c u_x = nu u_xx` discretized by the Fourier
//! spectral method in space, each mode evolves independently with the exact
//! semi-discrete symbol `lambda = -i c k - nu k^2`. An s-stage order-s
//! explicit Runge-Kutta step multiplies the mode by the degree-s truncated
//! exponential
//!
//! ```text
//! G = sum_{j=0..s} (lambda dt)^j / j!
//! ```
//!
//! which is the linear stability function of every consistent s-stage
//! order-s explicit scheme for s <= 4, so no Butcher tableau needs to be
//! fixed here. In nondimensional form `lambda dt = -i Nc kdx - Pe kdx^2`
//! with `Nc = c dt/dx`, `Pe = nu dt/dx^2`, `kdx in [0, pi]`.

use crate::error::{Error, Result};
use crate::math;
use num_complex::Complex64;

/// Number of Runge-Kutta stages (equal to the formal order here).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TimeScheme {
    /// Two-stage, second-order scheme (stability function `1 + z + z^2/2`).
    Rk2,
    /// Three-stage, third-order scheme.
    Rk3,
    /// Four-stage, fourth-order scheme.
    Rk4,
}

impl TimeScheme {
    /// Stage count s; the stability polynomial has degree s.
    pub fn stages(self) -> u32 {
        match self {
            TimeScheme::Rk2 => 2,
            TimeScheme::Rk3 => 3,
            TimeScheme::Rk4 => 4,
        }
    }

    /// Lower-case name used in CLI flags and file metadata.
    pub fn name(self) -> &'static str {
        match self {
            TimeScheme::Rk2 => "rk2",
            TimeScheme::Rk3 => "rk3",
            TimeScheme::Rk4 => "rk4",
        }
    }

    /// Parse `"rk2" | "rk3" | "rk4"` (case-insensitive ASCII).
    pub fn parse(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("rk2") {
            Ok(TimeScheme::Rk2)
        } else if s.eq_ignore_ascii_case("rk3") {
            Ok(TimeScheme::Rk3)
        } else if s.eq_ignore_ascii_case("rk4") {
            Ok(TimeScheme::Rk4)
        } else {
            Err(Error::InvalidParameter("scheme must be rk2, rk3 or rk4"))
        }
    }
}

/// A fully discrete scheme: stage count plus the nondimensional step sizes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeSpec {
    /// Time integration scheme.
    pub scheme: TimeScheme,
    /// CFL number `Nc = c dt / dx`, must be positive.
    pub nc: f64,
    /// Peclet number `Pe = nu dt / dx^2`; zero selects the pure convection
    /// equation.
    pub pe: f64,
}

impl SchemeSpec {
    /// Validating constructor: requires `nc > 0`, `pe >= 0`, both finite.
    pub fn new(scheme: TimeScheme, nc: f64, pe: f64) -> Result<Self> {
        if !(nc > 0.0) || !nc.is_finite() {
            return Err(Error::InvalidParameter("Nc must be finite and > 0"));
        }
        if !(pe >= 0.0) || !pe.is_finite() {
            return Err(Error::InvalidParameter("Pe must be finite and >= 0"));
        }
        Ok(SchemeSpec { scheme, nc, pe })
    }
}

/// Exact per-mode operator scaled by the time step:
/// `lambda dt = -i Nc kdx - Pe kdx^2`.
pub fn lambda_dt(spec: &SchemeSpec, kdx: f64) -> Complex64 {
    Complex64::new(-spec.pe * kdx * kdx, -spec.nc * kdx)
}

/// Degree-s truncated exponential `sum_{j=0..s} z^j / j!`.
pub fn stability_polynomial(stages: u32, z: Complex64) -> Complex64 {
    Complex64::new(1.0, 0.0) + stability_polynomial_minus_one(stages, z)
}

/// `stability_polynomial(stages, z) - 1`, evaluated without forming the
/// leading 1 so that tiny `z` keep full relative precision:
/// `z (1 + z/2 (1 + z/3 (1 + z/4)))`.
pub fn stability_polynomial_minus_one(stages: u32, z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for j in (2..=stages).rev() {
        acc = Complex64::new(1.0, 0.0) + z * acc / (j as f64);
    }
    z * acc
}

/// Amplification factor `G(kdx)` of the fully discrete scheme.
pub fn amplification_factor(spec: &SchemeSpec, kdx: f64) -> Complex64 {
    stability_polynomial(spec.scheme.stages(), lambda_dt(spec, kdx))
}

/// `G(kdx) - 1` without cancellation at small `kdx`.
pub fn amplification_minus_one(spec: &SchemeSpec, kdx: f64) -> Complex64 {
    stability_polynomial_minus_one(spec.scheme.stages(), lambda_dt(spec, kdx))
}

/// Physical (exact time integration) amplification factor `exp(lambda dt)`.
pub fn exact_amplification(spec: &SchemeSpec, kdx: f64) -> Complex64 {
    let z = lambda_dt(spec, kdx);
    let r = math::exp(z.re);
    Complex64::new(r * math::cos(z.im), r * math::sin(z.im))
}

/// `exp(lambda dt) - 1` without cancellation at small `kdx`.
pub fn exact_amplification_minus_one(spec: &SchemeSpec, kdx: f64) -> Complex64 {
    let z = lambda_dt(spec, kdx);
    // e^a cos b - 1 = expm1(a) cos b - 2 sin^2(b/2)
    let s = math::sin(0.5 * z.im);
    Complex64::new(
        math::exp_m1(z.re) * math::cos(z.im) - 2.0 * s * s,
        math::exp(z.re) * math::sin(z.im),
    )
}
