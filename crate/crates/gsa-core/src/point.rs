//! All GSA diagnostics at a single `(scheme, Nc, Pe, kdx)` point.

use crate::error::{Error, Result};
use crate::math;
use crate::scheme::{amplification_minus_one, exact_amplification_minus_one, SchemeSpec};
use num_complex::Complex64;

/// Step used for the finite-difference group velocity `d phi / d kdx`.
/// Second-order central differences at interior points, one-sided at the
/// interval ends; halving the step moves results by well under 1e-6.
pub const GROUP_VELOCITY_STEP: f64 = 1e-5;

const TWO_PI: f64 = core::f64::consts::TAU;

/// Diagnostics of the fully discrete scheme at one nondimensional wavenumber.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GsaPoint {
    /// Nondimensional wavenumber `k dx` in `[0, pi]`.
    pub kdx: f64,
    /// Complex amplification factor.
    pub g: Complex64,
    /// `|G|`.
    pub gmod: f64,
    /// Phase shift per time step (radians), continuous in `kdx` with
    /// `phi(0) = 0` when unwrapped along a sweep.
    pub phi: f64,
    /// Numerical phase speed over physical: `phi / (Nc kdx)`, limit 1 at 0.
    pub cn_over_c: f64,
    /// Numerical group velocity over physical: `(1/Nc) d phi / d kdx`.
    pub vgn_over_c: f64,
    /// Numerical diffusion over physical: `-ln|G| / (Pe kdx^2)`; `None` for
    /// the pure convection equation (Pe = 0), limit 1 at `kdx = 0`.
    pub nun_over_nu: Option<f64>,
    /// Physical amplification modulus `exp(-Pe kdx^2)`.
    pub gphys_mod: f64,
    /// Growth ratio `|G| / |G_phys|`; values above 1 mark unphysical growth.
    pub ratio: f64,
}

/// Shift `raw` by a multiple of 2 pi so it lands nearest `reference`.
pub fn unwrap_phase(raw: f64, reference: f64) -> f64 {
    raw + TWO_PI * math::round((reference - raw) / TWO_PI)
}

/// Phase of `G = 1 + d` per the convention `tan phi = -G_i / G_r`.
fn raw_phase(d: Complex64) -> f64 {
    math::atan2(-d.im, 1.0 + d.re)
}

/// `ln |1 + d|` without cancellation: `0.5 ln(1 + 2 Re d + |d|^2)`.
fn ln_mod(d: Complex64) -> f64 {
    0.5 * math::ln_1p(2.0 * d.re + d.norm_sqr())
}

/// All diagnostics with a caller-supplied amplification factor, given as
/// `kdx -> G(kdx) - 1` so that near-unity moduli keep full precision.
///
/// `phi_reference` is the previous unwrapped phase along a sweep of
/// increasing `kdx`; `None` selects the principal value.
pub fn gsa_point_with<F>(
    spec: &SchemeSpec,
    g_minus_one: F,
    kdx: f64,
    phi_reference: Option<f64>,
) -> Result<GsaPoint>
where
    F: Fn(f64) -> Complex64,
{
    let d = g_minus_one(kdx);
    let g = Complex64::new(1.0 + d.re, d.im);
    let gmod = math::sqrt(g.norm_sqr());
    if gmod == 0.0 {
        return Err(Error::DegenerateAmplification { kdx });
    }

    let phi = unwrap_phase(raw_phase(d), phi_reference.unwrap_or(0.0));

    let cn_over_c = if kdx > 0.0 {
        phi / (spec.nc * kdx)
    } else {
        1.0
    };

    let vgn_over_c = group_velocity(spec.nc, &g_minus_one, kdx, phi);

    let pk2 = spec.pe * kdx * kdx;
    let nun_over_nu = if spec.pe == 0.0 {
        None
    } else if kdx == 0.0 {
        Some(1.0)
    } else {
        Some(-ln_mod(d) / pk2)
    };

    let gphys_mod = math::exp(-pk2);
    let ratio = gmod / gphys_mod;

    Ok(GsaPoint {
        kdx,
        g,
        gmod,
        phi,
        cn_over_c,
        vgn_over_c,
        nun_over_nu,
        gphys_mod,
        ratio,
    })
}

/// `(1/Nc) d phi / d kdx` by second-order differences with step
/// [`GROUP_VELOCITY_STEP`]. Stencil phases are unwrapped against the center
/// value, so the 2 pi branch drops out of the differences.
fn group_velocity<F>(nc: f64, g_minus_one: &F, kdx: f64, phi_center: f64) -> f64
where
    F: Fn(f64) -> Complex64,
{
    let h = GROUP_VELOCITY_STEP;
    let phase_at = |x: f64, reference: f64| unwrap_phase(raw_phase(g_minus_one(x)), reference);
    let dphi = if kdx - h < 0.0 {
        let p1 = phase_at(kdx + h, phi_center);
        let p2 = phase_at(kdx + 2.0 * h, p1);
        (-3.0 * phi_center + 4.0 * p1 - p2) / (2.0 * h)
    } else if kdx + h > core::f64::consts::PI {
        let p1 = phase_at(kdx - h, phi_center);
        let p2 = phase_at(kdx - 2.0 * h, p1);
        (3.0 * phi_center - 4.0 * p1 + p2) / (2.0 * h)
    } else {
        let pm = phase_at(kdx - h, phi_center);
        let pp = phase_at(kdx + h, phi_center);
        (pp - pm) / (2.0 * h)
    };
    dphi / nc
}

/// Diagnostics of the Runge-Kutta scheme itself.
pub fn gsa_point(spec: &SchemeSpec, kdx: f64, phi_reference: Option<f64>) -> Result<GsaPoint> {
    gsa_point_with(
        spec,
        |x| amplification_minus_one(spec, x),
        kdx,
        phi_reference,
    )
}

/// Diagnostics of exact time integration (`G = exp(lambda dt)`): the
/// reference for which every ratio is identically 1.
pub fn exact_gsa_point(
    spec: &SchemeSpec,
    kdx: f64,
    phi_reference: Option<f64>,
) -> Result<GsaPoint> {
    gsa_point_with(
        spec,
        |x| exact_amplification_minus_one(spec, x),
        kdx,
        phi_reference,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::TimeScheme;
    use core::f64::consts::PI;

    fn spec(scheme: TimeScheme, nc: f64, pe: f64) -> SchemeSpec {
        SchemeSpec::new(scheme, nc, pe).unwrap()
    }

    #[test]
    fn exact_integration_reference_is_identity() {
        // Replacing G by exp(lambda dt) gives cN/c = VgN/c = nuN/nu = ratio = 1.
        for scheme in [TimeScheme::Rk2, TimeScheme::Rk3, TimeScheme::Rk4] {
            let s = spec(scheme, 0.3, 0.02);
            let mut phi_ref = None;
            for i in 0..=200 {
                let kdx = PI * (i as f64) / 200.0;
                let p = exact_gsa_point(&s, kdx, phi_ref).unwrap();
                assert!((p.ratio - 1.0).abs() < 1e-12, "ratio at {kdx}");
                assert!((p.cn_over_c - 1.0).abs() < 1e-9, "cn at {kdx}");
                assert!((p.vgn_over_c - 1.0).abs() < 1e-7, "vgn at {kdx}");
                assert!((p.nun_over_nu.unwrap() - 1.0).abs() < 1e-9, "nun at {kdx}");
                phi_ref = Some(p.phi);
            }
        }
    }

    #[test]
    fn rk2_ratio_at_nyquist_closed_form() {
        let s = spec(TimeScheme::Rk2, 0.1, 0.0);
        let p = gsa_point(&s, PI, None).unwrap();
        let expected = (1.0 + (0.1 * PI).powi(4) / 4.0).sqrt();
        assert!((p.ratio - expected).abs() < 1e-13);
        assert!((expected - 1.0012168).abs() < 1e-7);
        assert!(p.ratio > 1.0);
        assert_eq!(p.ratio, p.gmod); // Pe = 0: G_phys = 1 exactly
        assert_eq!(p.gphys_mod, 1.0);
        assert!(p.nun_over_nu.is_none());
    }

    #[test]
    fn rk2_pe_001_stays_stable_across_sweep_at_nc_01() {
        let s = spec(TimeScheme::Rk2, 0.1, 0.01);
        let mut phi_ref = None;
        for i in 1..=512 {
            let kdx = PI * (i as f64) / 512.0;
            let p = gsa_point(&s, kdx, phi_ref).unwrap();
            assert!(p.ratio <= 1.0 + 1e-12, "ratio {} at {kdx}", p.ratio);
            phi_ref = Some(p.phi);
        }
    }

    #[test]
    fn gmod_is_norm_of_g() {
        let s = spec(TimeScheme::Rk3, 0.4, 0.01);
        for i in 0..=64 {
            let kdx = PI * (i as f64) / 64.0;
            let p = gsa_point(&s, kdx, None).unwrap();
            assert!((p.gmod - (p.g.re * p.g.re + p.g.im * p.g.im).sqrt()).abs() < 1e-15);
            assert!((p.ratio - p.gmod / p.gphys_mod).abs() < 1e-15 * p.ratio);
        }
    }

    #[test]
    fn phi_zero_at_zero_and_continuous() {
        // continuity survives raw-atan2 branch wraps at large Nc kdx
        let s = spec(TimeScheme::Rk4, 0.9, 0.0);
        let mut prev = gsa_point(&s, 0.0, None).unwrap();
        assert_eq!(prev.phi, 0.0);
        for i in 1..=2000 {
            let kdx = PI * (i as f64) / 2000.0;
            let p = gsa_point(&s, kdx, Some(prev.phi)).unwrap();
            assert!((p.phi - prev.phi).abs() < 0.02, "jump at {kdx}");
            prev = p;
        }
        // at moderate Nc the accumulated phase tracks Nc pi closely
        let s = spec(TimeScheme::Rk4, 0.3, 0.0);
        let mut phi = 0.0;
        for i in 1..=2000 {
            let kdx = PI * (i as f64) / 2000.0;
            phi = gsa_point(&s, kdx, Some(phi)).unwrap().phi;
        }
        assert!((phi - 0.3 * PI).abs() < 0.01);
    }

    #[test]
    fn limit_consistency_near_zero() {
        // kdx = 1e-6: every ratio within 1e-4 of 1 (well within, in fact).
        for scheme in [TimeScheme::Rk2, TimeScheme::Rk3, TimeScheme::Rk4] {
            let s = spec(scheme, 0.1, 0.01);
            let p = gsa_point(&s, 1e-6, None).unwrap();
            assert!((p.ratio - 1.0).abs() < 1e-4);
            assert!((p.cn_over_c - 1.0).abs() < 1e-4);
            assert!((p.vgn_over_c - 1.0).abs() < 1e-4);
            assert!((p.nun_over_nu.unwrap() - 1.0).abs() < 1e-4);
        }
    }

    #[test]
    fn group_velocity_step_halving_refines_below_1e6() {
        // Same stencil with half the step; interior kdx, all schemes.
        let halve = |spec: &SchemeSpec, kdx: f64| {
            let h = GROUP_VELOCITY_STEP / 2.0;
            let f = |x: f64| amplification_minus_one(spec, x);
            let p0 = raw_phase(f(kdx));
            let pm = unwrap_phase(raw_phase(f(kdx - h)), p0);
            let pp = unwrap_phase(raw_phase(f(kdx + h)), p0);
            (pp - pm) / (2.0 * h) / spec.nc
        };
        for scheme in [TimeScheme::Rk2, TimeScheme::Rk3, TimeScheme::Rk4] {
            for pe in [0.0, 0.01] {
                let s = spec(scheme, 0.1, pe);
                for kdx in [0.3, 1.0, 2.0, 3.0] {
                    let p = gsa_point(&s, kdx, None).unwrap();
                    assert!(
                        (p.vgn_over_c - halve(&s, kdx)).abs() < 1e-6,
                        "{scheme:?} pe={pe} kdx={kdx}"
                    );
                }
            }
        }
    }

    #[test]
    fn degenerate_amplification_flagged() {
        let s = spec(TimeScheme::Rk2, 0.1, 0.0);
        let err = gsa_point_with(&s, |_| Complex64::new(-1.0, 0.0), 0.5, None).unwrap_err();
        assert!(matches!(err, Error::DegenerateAmplification { .. }));
    }
}
