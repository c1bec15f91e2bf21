//! FFT plumbing for the periodic pseudo-spectral discretization.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

/// Cached FFT plans and the wavenumber table for an N-point periodic grid
/// of length L. Bin m holds the signed wavenumber `2 pi s / L` with
/// `s = m` for `m <= N/2` and `s = m - N` otherwise, i.e. mode indices
/// `s in (-N/2, N/2]` with the unpaired Nyquist mode counted positive.
pub struct Spectral {
    n: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
    k: Vec<f64>,
}

impl Spectral {
    pub fn new(n: usize, l: f64) -> Self {
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        let k = (0..n)
            .map(|m| {
                let s = if m <= n / 2 {
                    m as i64
                } else {
                    m as i64 - n as i64
                };
                2.0 * std::f64::consts::PI * (s as f64) / l
            })
            .collect();
        Spectral { n, fwd, inv, k }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Signed wavenumber of every FFT bin.
    pub fn k(&self) -> &[f64] {
        &self.k
    }

    /// Unnormalized forward DFT of a real field.
    pub fn forward(&self, u: &[f64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = u.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.fwd.process(&mut buf);
        buf
    }

    /// Inverse DFT (1/N normalization applied) of a conjugate-symmetric
    /// spectrum; returns the real field and the largest leaked imaginary
    /// magnitude, which is pure roundoff for symmetric input.
    pub fn inverse(&self, mut spectrum: Vec<Complex64>) -> (Vec<f64>, f64) {
        self.inv.process(&mut spectrum);
        let scale = 1.0 / self.n as f64;
        let mut max_imag = 0.0f64;
        let u = spectrum
            .iter()
            .map(|z| {
                max_imag = max_imag.max((z.im * scale).abs());
                z.re * scale
            })
            .collect();
        (u, max_imag)
    }

    /// Per-bin multiplier of the first derivative: `ik`, with the unpaired
    /// Nyquist mode zeroed (the odd derivative of a real signal has no
    /// well-defined Nyquist component).
    pub fn first_derivative_multiplier(&self) -> Vec<Complex64> {
        let nyquist = self.n / 2;
        self.k
            .iter()
            .enumerate()
            .map(|(m, &k)| {
                if m == nyquist {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(0.0, k)
                }
            })
            .collect()
    }

    /// Per-bin multiplier of the second derivative: `-k^2` (Nyquist kept).
    pub fn second_derivative_multiplier(&self) -> Vec<f64> {
        self.k.iter().map(|&k| -k * k).collect()
    }
}
