//! Rectangular sweeps of GSA diagnostics over the `(Nc, kdx)`-plane.

use crate::error::{Error, Result};
use crate::point::{gsa_point, unwrap_phase, GsaPoint};
use crate::scheme::{amplification_minus_one, SchemeSpec, TimeScheme};
use alloc::vec::Vec;
use core::f64::consts::PI;

/// Default Nc axis: 200 samples on [0.01, 1.0].
pub const DEFAULT_NC_AXIS: (f64, f64, usize) = (0.01, 1.0, 200);
/// Default kdx axis: 400 samples on [0, pi].
pub const DEFAULT_KDX_SAMPLES: usize = 400;

/// Step of the phase-reference ladder walked from kdx = 0 up to the first
/// axis sample, so rows unwrap from phi(0) = 0 even when the axis starts
/// above zero.
const LADDER_STEP: f64 = 5e-3;

/// Which diagnostic of a [`GsaPoint`] to extract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChartField {
    /// Real part of `G`.
    GRe,
    /// Imaginary part of `G`.
    GIm,
    /// `|G|`.
    Gmod,
    /// Unwrapped phase shift per step.
    Phi,
    /// `c_N / c`.
    CnOverC,
    /// `V_gN / c`.
    VgnOverC,
    /// `nu_N / nu` (undefined when Pe = 0).
    NunOverNu,
    /// `|G| / |G_phys|`.
    Ratio,
}

impl ChartField {
    /// Extract the field value; `None` only for [`ChartField::NunOverNu`]
    /// at Pe = 0.
    pub fn extract(self, p: &GsaPoint) -> Option<f64> {
        Some(match self {
            ChartField::GRe => p.g.re,
            ChartField::GIm => p.g.im,
            ChartField::Gmod => p.gmod,
            ChartField::Phi => p.phi,
            ChartField::CnOverC => p.cn_over_c,
            ChartField::VgnOverC => p.vgn_over_c,
            ChartField::NunOverNu => return p.nun_over_nu,
            ChartField::Ratio => p.ratio,
        })
    }
}

/// GSA diagnostics sampled on a rectangular `(Nc, kdx)` grid at fixed Pe.
///
/// Row index follows `nc_axis`, column index follows `kdx_axis`; within each
/// row the phase is unwrapped along increasing `kdx` starting from
/// `phi(0) = 0`.
#[derive(Debug, Clone)]
pub struct ChartGrid {
    /// Time integration scheme common to every cell.
    pub scheme: TimeScheme,
    /// Peclet number common to every cell.
    pub pe: f64,
    /// Strictly increasing CFL samples.
    pub nc_axis: Vec<f64>,
    /// Strictly increasing wavenumber samples within `[0, pi]`.
    pub kdx_axis: Vec<f64>,
    points: Vec<GsaPoint>,
}

fn check_axis(axis: &[f64], what: &'static str) -> Result<()> {
    if axis.is_empty() {
        return Err(Error::InvalidAxis(what));
    }
    for w in axis.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::InvalidAxis(what));
        }
    }
    Ok(())
}

impl ChartGrid {
    /// Evaluate [`gsa_point`] at every grid cell.
    ///
    /// Rows are independent; the output is identical regardless of
    /// evaluation order (each cell is a pure function of `(nc, kdx)` and the
    /// row's unwrap chain).
    pub fn sweep(
        scheme: TimeScheme,
        pe: f64,
        nc_axis: &[f64],
        kdx_axis: &[f64],
    ) -> Result<ChartGrid> {
        check_axis(nc_axis, "Nc axis must be nonempty and strictly increasing")?;
        check_axis(
            kdx_axis,
            "kdx axis must be nonempty and strictly increasing",
        )?;
        if nc_axis[0] <= 0.0 {
            return Err(Error::InvalidAxis("Nc axis must be positive"));
        }
        if kdx_axis[0] < 0.0 || *kdx_axis.last().unwrap() > PI + 1e-12 {
            return Err(Error::InvalidAxis("kdx axis must lie within [0, pi]"));
        }
        if !(pe >= 0.0) {
            return Err(Error::InvalidParameter("Pe must be finite and >= 0"));
        }

        let mut points = Vec::with_capacity(nc_axis.len() * kdx_axis.len());
        for &nc in nc_axis {
            let spec = SchemeSpec::new(scheme, nc, pe)?;
            let mut phi_ref = phi_reference_at(&spec, kdx_axis[0]);
            for &kdx in kdx_axis {
                let p = gsa_point(&spec, kdx, Some(phi_ref))?;
                phi_ref = p.phi;
                points.push(p);
            }
        }
        Ok(ChartGrid {
            scheme,
            pe,
            nc_axis: nc_axis.to_vec(),
            kdx_axis: kdx_axis.to_vec(),
            points,
        })
    }

    /// Cell at row `i` (Nc) and column `j` (kdx).
    pub fn at(&self, i: usize, j: usize) -> &GsaPoint {
        &self.points[i * self.kdx_axis.len() + j]
    }

    /// All cells of row `i`, ordered by `kdx`.
    pub fn row(&self, i: usize) -> &[GsaPoint] {
        let w = self.kdx_axis.len();
        &self.points[i * w..(i + 1) * w]
    }

    /// Row-major iterator over `(i, j, point)`.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, &GsaPoint)> {
        let w = self.kdx_axis.len();
        self.points
            .iter()
            .enumerate()
            .map(move |(n, p)| (n / w, n % w, p))
    }

    /// Extract one diagnostic as a row-major matrix.
    pub fn field_matrix(&self, field: ChartField) -> Result<Vec<Vec<f64>>> {
        self.nc_axis
            .iter()
            .enumerate()
            .map(|(i, _)| {
                self.row(i)
                    .iter()
                    .map(|p| {
                        field
                            .extract(p)
                            .ok_or(Error::MissingField("nuN/nu is undefined when Pe = 0"))
                    })
                    .collect()
            })
            .collect()
    }
}

/// Unwrapped phase at `kdx_start`, chained from `phi(0) = 0` in steps of at
/// most [`LADDER_STEP`]. Returns 0 when the axis starts at 0.
fn phi_reference_at(spec: &SchemeSpec, kdx_start: f64) -> f64 {
    if kdx_start <= 0.0 {
        return 0.0;
    }
    let steps = crate::math::ceil(kdx_start / LADDER_STEP) as usize;
    let mut phi = 0.0;
    for i in 1..=steps {
        let kdx = kdx_start * (i as f64) / (steps as f64);
        let d = amplification_minus_one(spec, kdx);
        phi = unwrap_phase(crate::math::atan2(-d.im, 1.0 + d.re), phi);
    }
    phi
}

/// `n` evenly spaced samples covering `[a, b]` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return alloc::vec![a];
    }
    (0..n)
        .map(|i| a + (b - a) * (i as f64) / ((n - 1) as f64))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_dimensions_and_row_example() {
        // (RK2, Pe=0, Nc=[0.1], kdx=[0, pi/2, pi]): closed-form ratio row.
        let grid = ChartGrid::sweep(TimeScheme::Rk2, 0.0, &[0.1], &[0.0, PI / 2.0, PI]).unwrap();
        assert_eq!(grid.nc_axis.len(), 1);
        assert_eq!(grid.kdx_axis.len(), 3);
        let expect = |z: f64| (1.0 + z.powi(4) / 4.0).sqrt();
        let row = grid.row(0);
        assert!((row[0].ratio - 1.0).abs() < 1e-15);
        assert!((row[1].ratio - expect(0.05 * PI)).abs() < 1e-13);
        assert!((row[2].ratio - expect(0.1 * PI)).abs() < 1e-13);
    }

    #[test]
    fn zero_wavenumber_column_has_unit_ratio() {
        let nc = linspace(0.05, 0.9, 7);
        let kdx = linspace(0.0, PI, 9);
        for scheme in [TimeScheme::Rk2, TimeScheme::Rk3, TimeScheme::Rk4] {
            let grid = ChartGrid::sweep(scheme, 0.01, &nc, &kdx).unwrap();
            for i in 0..nc.len() {
                assert_eq!(grid.at(i, 0).ratio, 1.0);
            }
        }
    }

    #[test]
    fn rk2_pe_001_has_contiguous_stable_band() {
        // A contiguous band of Nc rows with ratio <= 1 for every kdx.
        let nc = linspace(0.05, 1.0, 96);
        let kdx = linspace(0.0, PI, 128);
        let grid = ChartGrid::sweep(TimeScheme::Rk2, 0.01, &nc, &kdx).unwrap();
        let stable: Vec<bool> = (0..nc.len())
            .map(|i| grid.row(i).iter().all(|p| p.ratio <= 1.0 + 1e-14))
            .collect();
        let first = stable.iter().position(|&s| s);
        let last = stable.iter().rposition(|&s| s);
        let (first, last) = (first.expect("band exists"), last.unwrap());
        assert!(last > first, "band wider than one row");
        assert!(stable[first..=last].iter().all(|&s| s), "band contiguous");
        // the band ends before Nc = 0.3: the method is unstable there
        assert!(nc[last] < 0.3);
    }

    #[test]
    fn row_phase_is_continuous() {
        let nc = [0.7];
        let kdx = linspace(0.0, PI, 400);
        let grid = ChartGrid::sweep(TimeScheme::Rk4, 0.1, &nc, &kdx).unwrap();
        for w in grid.row(0).windows(2) {
            assert!((w[1].phi - w[0].phi).abs() < 0.05);
        }
    }

    #[test]
    fn axis_validation() {
        let kdx = [0.0, 1.0];
        assert!(matches!(
            ChartGrid::sweep(TimeScheme::Rk2, 0.0, &[], &kdx),
            Err(Error::InvalidAxis(_))
        ));
        assert!(ChartGrid::sweep(TimeScheme::Rk2, 0.0, &[0.2, 0.1], &kdx).is_err());
        assert!(ChartGrid::sweep(TimeScheme::Rk2, 0.0, &[0.0, 0.1], &kdx).is_err());
        assert!(ChartGrid::sweep(TimeScheme::Rk2, 0.0, &[0.1], &[0.0, 4.0]).is_err());
        assert!(ChartGrid::sweep(TimeScheme::Rk2, -0.01, &[0.1], &kdx).is_err());
    }

    #[test]
    fn sweep_is_deterministic() {
        let nc = linspace(0.05, 0.95, 13);
        let kdx = linspace(0.0, PI, 17);
        let a = ChartGrid::sweep(TimeScheme::Rk3, 0.01, &nc, &kdx).unwrap();
        let b = ChartGrid::sweep(TimeScheme::Rk3, 0.01, &nc, &kdx).unwrap();
        for ((_, _, pa), (_, _, pb)) in a.cells().zip(b.cells()) {
            assert_eq!(pa.g, pb.g);
            assert_eq!(pa.ratio, pb.ratio);
            assert_eq!(pa.vgn_over_c, pb.vgn_over_c);
        }
    }
}
