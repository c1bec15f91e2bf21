//! FFT-based periodic pseudo-spectral solver for the 1D linear convection
//! and convection-diffusion equations with Runge-Kutta time stepping.
//!
//! The right-hand side `-c u_x + nu u_xx` is evaluated in spectral space
//! (forward FFT, per-mode multiplier, inverse FFT) every stage, so the
//! stepping really exercises the discrete transform path rather than the
//! per-mode diagonal form; the diagonal form is available separately as
//! [`gsa_predicted_solution`] and serves as the cross-validation oracle.
//!
//! Stage tableaus (each with the degree-s truncated exponential as its
//! linear stability function): explicit midpoint for RK2, the Shu-Osher
//! three-stage scheme for RK3, the classical scheme for RK4.

mod budget;
mod spectral;

pub use budget::{
    error_budget, error_budget_with, exact_diagnostics, scheme_diagnostics, ErrorBudget,
    ModeDiagnostics,
};
pub use spectral::Spectral;

use gsa_core::{SchemeSpec, TimeScheme};
use num_complex::Complex64;
use std::fmt;

/// Solver-side failures.
#[derive(Debug, Clone, PartialEq)]
pub enum SolverError {
    /// A configuration parameter violates its domain.
    Invalid(&'static str),
    /// Propagated analysis error.
    Core(gsa_core::Error),
    /// Non-finite samples appeared while stepping.
    Divergence {
        /// Step index at which the field stopped being finite.
        step: u64,
        /// Largest finite magnitude seen before the blow-up.
        max_abs: f64,
    },
}

impl fmt::Display for SolverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolverError::Invalid(what) => write!(f, "invalid configuration: {what}"),
            SolverError::Core(e) => write!(f, "{e}"),
            SolverError::Divergence { step, max_abs } => {
                write!(
                    f,
                    "solution diverged at step {step} (max |u| = {max_abs:e})"
                )
            }
        }
    }
}

impl std::error::Error for SolverError {}

impl From<gsa_core::Error> for SolverError {
    fn from(e: gsa_core::Error) -> Self {
        SolverError::Core(e)
    }
}

/// Gaussian-enveloped carrier wave `exp(-a (x - x0)^2) sin(k0 x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavePacket {
    /// Envelope center.
    pub x0: f64,
    /// Envelope decay rate `a` (1/length^2).
    pub envelope_rate: f64,
    /// Carrier wavenumber (1/length), usually specified via `k0 dx`.
    pub k0: f64,
}

impl WavePacket {
    /// Sample the packet on the grid point `x`.
    pub fn sample(&self, x: f64) -> f64 {
        (-self.envelope_rate * (x - self.x0) * (x - self.x0)).exp() * (self.k0 * x).sin()
    }
}

/// Physical and discrete parameters of one simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    /// Grid points (power of two).
    pub n: usize,
    /// Domain length; the grid is `x_j = j L / N`, periodic.
    pub l: f64,
    /// Physical phase speed.
    pub c: f64,
    /// Physical diffusivity (0 selects the pure convection equation).
    pub nu: f64,
    /// Time integration scheme.
    pub scheme: TimeScheme,
    /// Time step.
    pub dt: f64,
    /// Number of steps for [`run`].
    pub steps: u64,
    /// Initial condition.
    pub ic: WavePacket,
}

impl SimConfig {
    /// Build from the nondimensional parameters, deriving `dt = Nc dx / c`
    /// and `nu = Pe dx^2 / dt`.
    #[allow(clippy::too_many_arguments)]
    pub fn from_nondim(
        n: usize,
        l: f64,
        c: f64,
        scheme: TimeScheme,
        nc: f64,
        pe: f64,
        steps: u64,
        ic: WavePacket,
    ) -> Result<Self, SolverError> {
        if !(nc > 0.0) || !(pe >= 0.0) {
            return Err(SolverError::Invalid("need Nc > 0 and Pe >= 0"));
        }
        let dx = l / n as f64;
        let dt = nc * dx / c;
        let nu = if pe > 0.0 { pe * dx * dx / dt } else { 0.0 };
        let cfg = SimConfig {
            n,
            l,
            c,
            nu,
            scheme,
            dt,
            steps,
            ic,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Check every invariant the solver relies on.
    pub fn validate(&self) -> Result<(), SolverError> {
        if self.n < 4 || !self.n.is_power_of_two() {
            return Err(SolverError::Invalid("N must be a power of two >= 4"));
        }
        if !(self.l > 0.0) {
            return Err(SolverError::Invalid("L must be > 0"));
        }
        if !(self.c > 0.0) {
            return Err(SolverError::Invalid("c must be > 0"));
        }
        if !(self.nu >= 0.0) {
            return Err(SolverError::Invalid("nu must be >= 0"));
        }
        if !(self.dt > 0.0) {
            return Err(SolverError::Invalid("dt must be > 0"));
        }
        Ok(())
    }

    /// Grid spacing `L / N`.
    pub fn dx(&self) -> f64 {
        self.l / self.n as f64
    }

    /// CFL number `c dt / dx`.
    pub fn nc(&self) -> f64 {
        self.c * self.dt / self.dx()
    }

    /// Peclet number `nu dt / dx^2`.
    pub fn pe(&self) -> f64 {
        self.nu * self.dt / (self.dx() * self.dx())
    }

    /// Nondimensional scheme parameters of this run.
    pub fn spec(&self) -> SchemeSpec {
        SchemeSpec::new(self.scheme, self.nc(), self.pe()).expect("validated config")
    }

    /// Grid coordinates.
    pub fn grid(&self) -> Vec<f64> {
        let dx = self.dx();
        (0..self.n).map(|j| j as f64 * dx).collect()
    }
}

/// Field samples on the periodic grid at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    /// Simulation time.
    pub t: f64,
    /// Real samples `u(x_j, t)`.
    pub u: Vec<f64>,
}

/// Sample the initial condition.
pub fn initial_state(cfg: &SimConfig) -> SimState {
    let dx = cfg.dx();
    SimState {
        t: 0.0,
        u: (0..cfg.n).map(|j| cfg.ic.sample(j as f64 * dx)).collect(),
    }
}

/// Spectral derivative order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivOrder {
    /// `d/dx` (Nyquist mode zeroed).
    First,
    /// `d^2/dx^2` (Nyquist mode kept).
    Second,
}

/// Differentiate a real periodic field by FFT.
pub fn spectral_derivative(u: &[f64], l: f64, order: DerivOrder) -> Vec<f64> {
    let sp = Spectral::new(u.len(), l);
    let mut spec = sp.forward(u);
    match order {
        DerivOrder::First => {
            for (z, m) in spec.iter_mut().zip(sp.first_derivative_multiplier()) {
                *z *= m;
            }
        }
        DerivOrder::Second => {
            for (z, m) in spec.iter_mut().zip(sp.second_derivative_multiplier()) {
                *z *= m;
            }
        }
    }
    sp.inverse(spec).0
}

/// Reusable stepper: cached FFT plans plus the per-bin right-hand-side
/// multiplier `-i c k_eff - nu k^2`.
pub struct Stepper {
    cfg: SimConfig,
    sp: Spectral,
    rhs_mult: Vec<Complex64>,
}

impl Stepper {
    pub fn new(cfg: &SimConfig) -> Result<Self, SolverError> {
        cfg.validate()?;
        let sp = Spectral::new(cfg.n, cfg.l);
        let ik = sp.first_derivative_multiplier();
        let k2 = sp.second_derivative_multiplier();
        let rhs_mult = ik
            .iter()
            .zip(&k2)
            .map(|(ik, &mk2)| -cfg.c * ik + cfg.nu * mk2)
            .collect();
        Ok(Stepper {
            cfg: *cfg,
            sp,
            rhs_mult,
        })
    }

    /// `-c u_x + nu u_xx` by one FFT round trip; also reports the imaginary
    /// leakage of the inverse transform.
    fn rhs(&self, u: &[f64]) -> (Vec<f64>, f64) {
        let mut spec = self.sp.forward(u);
        for (z, m) in spec.iter_mut().zip(&self.rhs_mult) {
            *z *= m;
        }
        self.sp.inverse(spec)
    }

    /// Advance one step; [`SolverError::Divergence`] (with `step` left 0 for
    /// the caller to fill) when non-finite samples appear.
    pub fn step(&self, state: &SimState) -> Result<SimState, SolverError> {
        self.step_audited(state).map(|(s, _)| s)
    }

    /// Advance one step and report the largest imaginary residual leaked by
    /// the stage transforms (roundoff-sized for healthy runs).
    pub fn step_audited(&self, state: &SimState) -> Result<(SimState, f64), SolverError> {
        let dt = self.cfg.dt;
        let u = &state.u;
        let n = u.len();
        let mut imag = 0.0f64;
        let mut rhs = |v: &[f64]| {
            let (r, leak) = self.rhs(v);
            imag = imag.max(leak);
            r
        };

        let next = match self.cfg.scheme {
            TimeScheme::Rk2 => {
                // explicit midpoint
                let k1 = rhs(u);
                let mid: Vec<f64> = (0..n).map(|j| u[j] + 0.5 * dt * k1[j]).collect();
                let k2 = rhs(&mid);
                (0..n).map(|j| u[j] + dt * k2[j]).collect::<Vec<f64>>()
            }
            TimeScheme::Rk3 => {
                // Shu-Osher three-stage scheme
                let k1 = rhs(u);
                let u1: Vec<f64> = (0..n).map(|j| u[j] + dt * k1[j]).collect();
                let k2 = rhs(&u1);
                let u2: Vec<f64> = (0..n)
                    .map(|j| 0.75 * u[j] + 0.25 * (u1[j] + dt * k2[j]))
                    .collect();
                let k3 = rhs(&u2);
                (0..n)
                    .map(|j| u[j] / 3.0 + 2.0 / 3.0 * (u2[j] + dt * k3[j]))
                    .collect()
            }
            TimeScheme::Rk4 => {
                // classical four-stage scheme
                let k1 = rhs(u);
                let s1: Vec<f64> = (0..n).map(|j| u[j] + 0.5 * dt * k1[j]).collect();
                let k2 = rhs(&s1);
                let s2: Vec<f64> = (0..n).map(|j| u[j] + 0.5 * dt * k2[j]).collect();
                let k3 = rhs(&s2);
                let s3: Vec<f64> = (0..n).map(|j| u[j] + dt * k3[j]).collect();
                let k4 = rhs(&s3);
                (0..n)
                    .map(|j| u[j] + dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]))
                    .collect()
            }
        };

        let mut max_abs = 0.0f64;
        for &v in &next {
            if !v.is_finite() {
                return Err(SolverError::Divergence { step: 0, max_abs });
            }
            max_abs = max_abs.max(v.abs());
        }
        Ok((
            SimState {
                t: state.t + dt,
                u: next,
            },
            imag,
        ))
    }
}

/// One Runge-Kutta step of `cfg` applied to `state`.
pub fn rk_step(state: &SimState, cfg: &SimConfig) -> Result<SimState, SolverError> {
    Stepper::new(cfg)?.step(state)
}

/// Per-bin amplification factor the stepper realizes: the degree-s truncated
/// exponential of `(-i c k_eff - nu k^2) dt`, where `k_eff` carries the
/// zeroed Nyquist convective part. For every bin below Nyquist this equals
/// the closed-form `amplification_factor` at `kdx = k dx`.
pub fn mode_amplification(cfg: &SimConfig, sp: &Spectral, bin: usize) -> Complex64 {
    let ik = sp.first_derivative_multiplier()[bin];
    let k2 = sp.second_derivative_multiplier()[bin];
    let lam_dt = (-cfg.c * ik + cfg.nu * k2) * cfg.dt;
    gsa_core::scheme::stability_polynomial(cfg.scheme.stages(), lam_dt)
}

/// Analytic per-mode evolution of the initial condition's discrete spectrum:
/// mode k is multiplied by `exp(-nu k^2 t) exp(-i k c t)`; for `nu = 0` this
/// is pure translation by `c t`. The self-conjugate Nyquist mode keeps the
/// real multiplier `cos(k c t)` so the field stays exactly real.
pub fn exact_solution(cfg: &SimConfig, t: f64) -> Vec<f64> {
    let sp = Spectral::new(cfg.n, cfg.l);
    let u0 = initial_state(cfg).u;
    let mut spec = sp.forward(&u0);
    let nyquist = cfg.n / 2;
    for (m, z) in spec.iter_mut().enumerate() {
        let k = sp.k()[m];
        let decay = (-cfg.nu * k * k * t).exp();
        let phase = k * cfg.c * t;
        let factor = if m == nyquist {
            Complex64::new(decay * phase.cos(), 0.0)
        } else {
            Complex64::new(0.0, -phase).exp() * decay
        };
        *z *= factor;
    }
    sp.inverse(spec).0
}

/// GSA prediction of the time-stepped solution: each discrete mode of the
/// initial spectrum multiplied by `G(k dx)^n`, inverse transformed. Matches
/// the composed [`rk_step`] to roundoff by per-mode diagonalization of the
/// linear scheme.
pub fn gsa_predicted_solution(cfg: &SimConfig, n: u64) -> Vec<f64> {
    let sp = Spectral::new(cfg.n, cfg.l);
    let u0 = initial_state(cfg).u;
    let mut spec = sp.forward(&u0);
    let ik = sp.first_derivative_multiplier();
    let k2 = sp.second_derivative_multiplier();
    let stages = cfg.scheme.stages();
    for (m, z) in spec.iter_mut().enumerate() {
        let lam_dt = (-cfg.c * ik[m] + cfg.nu * k2[m]) * cfg.dt;
        let g = gsa_core::scheme::stability_polynomial(stages, lam_dt);
        *z *= powu(g, n);
    }
    sp.inverse(spec).0
}

/// `g^n` by binary exponentiation (exact complex products, no polar loss).
fn powu(g: Complex64, mut n: u64) -> Complex64 {
    let mut base = g;
    let mut acc = Complex64::new(1.0, 0.0);
    while n > 0 {
        if n & 1 == 1 {
            acc *= base;
        }
        base *= base;
        n >>= 1;
    }
    acc
}

/// Root-mean-square of a sample vector, scaled so that magnitudes near the
/// f64 overflow threshold square safely.
pub fn rms(v: &[f64]) -> f64 {
    let m = v.iter().fold(0.0f64, |a, &x| a.max(x.abs()));
    if m == 0.0 || !m.is_finite() {
        return m;
    }
    let s: f64 = v.iter().map(|&x| (x / m) * (x / m)).sum();
    m * (s / v.len() as f64).sqrt()
}

/// Largest absolute sample.
pub fn linf(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |a, &x| a.max(x.abs()))
}

/// `||a - b||_rms / ||b||_rms`, overflow-safe.
pub fn relative_l2(a: &[f64], b: &[f64]) -> f64 {
    let diff: Vec<f64> = a.iter().zip(b).map(|(&x, &y)| x - y).collect();
    rms(&diff) / rms(b)
}

/// Error norms recorded at one snapshot.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormRecord {
    pub step: u64,
    pub t: f64,
    pub l2_error: f64,
    pub linf_error: f64,
    pub l2_norm: f64,
}

/// Field snapshot paired with the exact solution at the same time.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub step: u64,
    pub state: SimState,
    pub exact: Vec<f64>,
}

/// Everything [`run`] produces.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub snapshots: Vec<Snapshot>,
    pub norms: Vec<NormRecord>,
}

/// Step the solver, recording L2/Linf errors against [`exact_solution`] at
/// step 0, every `snapshot_stride` steps (0 disables interior snapshots)
/// and the final step. Deterministic for fixed `cfg`.
pub fn run(cfg: &SimConfig, snapshot_stride: u64) -> Result<RunOutput, SolverError> {
    let stepper = Stepper::new(cfg)?;
    let mut state = initial_state(cfg);
    let mut out = RunOutput {
        snapshots: Vec::new(),
        norms: Vec::new(),
    };
    record(cfg, 0, &state, &mut out);
    for step in 1..=cfg.steps {
        state = stepper.step(&state).map_err(|e| match e {
            SolverError::Divergence { max_abs, .. } => SolverError::Divergence { step, max_abs },
            other => other,
        })?;
        // recompute t from the step count so snapshots land on exact times
        state.t = step as f64 * cfg.dt;
        let due = snapshot_stride > 0 && step % snapshot_stride == 0;
        if due || step == cfg.steps {
            record(cfg, step, &state, &mut out);
        }
    }
    Ok(out)
}

fn record(cfg: &SimConfig, step: u64, state: &SimState, out: &mut RunOutput) {
    let exact = exact_solution(cfg, state.t);
    let err: Vec<f64> = state.u.iter().zip(&exact).map(|(&a, &b)| a - b).collect();
    out.norms.push(NormRecord {
        step,
        t: state.t,
        l2_error: rms(&err),
        linf_error: linf(&err),
        l2_norm: rms(&state.u),
    });
    out.snapshots.push(Snapshot {
        step,
        state: state.clone(),
        exact,
    });
}
