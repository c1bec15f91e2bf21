//! Solver-level checks: spectral differentiation, the per-mode
//! diagonalization oracle, exact-solution identities and the error budget.

use gsa_cli::presets::{figure_config, standard_packet, Figure};
use gsa_cli::solver::{
    self, error_budget, error_budget_with, exact_diagnostics, exact_solution,
    gsa_predicted_solution, initial_state, linf, relative_l2, rk_step, rms, DerivOrder, SimConfig,
    SimState, SolverError, Spectral, Stepper, WavePacket,
};
use gsa_core::TimeScheme;
use std::f64::consts::PI;

fn small_cfg(scheme: TimeScheme, nc: f64, pe: f64, n: usize, steps: u64) -> SimConfig {
    let dx = 10.0 / n as f64;
    SimConfig::from_nondim(n, 10.0, 0.5, scheme, nc, pe, steps, standard_packet(dx)).unwrap()
}

/// Deterministic xorshift64* stream for reproducible "random" fields.
fn pseudo_random(n: usize, mut seed: u64) -> Vec<f64> {
    (0..n)
        .map(|_| {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        })
        .collect()
}

#[test]
fn derivative_of_single_mode_is_exact() {
    let (n, l) = (128, 10.0);
    let u: Vec<f64> = (0..n)
        .map(|j| (2.0 * PI * (j as f64) * (l / n as f64) / l).sin())
        .collect();
    let d = solver::spectral_derivative(&u, l, DerivOrder::First);
    for (j, &v) in d.iter().enumerate() {
        let x = j as f64 * l / n as f64;
        let expect = 2.0 * PI / l * (2.0 * PI * x / l).cos();
        assert!((v - expect).abs() < 1e-12, "at {x}: {v} vs {expect}");
    }
}

#[test]
fn derivative_of_constant_vanishes() {
    let u = vec![3.25; 64];
    for order in [DerivOrder::First, DerivOrder::Second] {
        let d = solver::spectral_derivative(&u, 2.0, order);
        assert!(d.iter().all(|&v| v.abs() < 1e-12));
    }
}

#[test]
fn second_derivative_composes_first() {
    // Random field with the Nyquist bin removed: the first-derivative
    // multiplier zeroes that unpaired mode by convention, the second keeps
    // it, so the composition identity lives on the Nyquist-free subspace.
    let (n, l) = (256, 10.0);
    let sp = Spectral::new(n, l);
    let mut spec = sp.forward(&pseudo_random(n, 0x9E3779B97F4A7C15));
    spec[n / 2] = num_complex::Complex64::new(0.0, 0.0);
    let (u, _) = sp.inverse(spec);

    let d2 = solver::spectral_derivative(&u, l, DerivOrder::Second);
    let d11 = solver::spectral_derivative(
        &solver::spectral_derivative(&u, l, DerivOrder::First),
        l,
        DerivOrder::First,
    );
    let kmax = (n / 2) as f64 * 2.0 * PI / l;
    let bound = 1e-10 * linf(&u) * kmax * kmax;
    let max_diff = d2
        .iter()
        .zip(&d11)
        .map(|(&a, &b)| (a - b).abs())
        .fold(0.0f64, f64::max);
    assert!(max_diff <= bound, "{max_diff} > {bound}");
}

#[test]
fn zero_field_steps_to_zero_field() {
    let cfg = small_cfg(TimeScheme::Rk3, 0.2, 0.01, 64, 1);
    let state = SimState {
        t: 0.0,
        u: vec![0.0; 64],
    };
    let next = rk_step(&state, &cfg).unwrap();
    assert!(next.u.iter().all(|&v| v == 0.0));
}

#[test]
fn single_mode_one_step_matches_amplification_factor() {
    for scheme in [TimeScheme::Rk2, TimeScheme::Rk3, TimeScheme::Rk4] {
        let cfg = small_cfg(scheme, 0.3, 0.01, 128, 1);
        let sp = Spectral::new(cfg.n, cfg.l);
        for bin in [1usize, 17, 40, 63] {
            let k = sp.k()[bin];
            let u: Vec<f64> = (0..cfg.n)
                .map(|j| (k * (j as f64) * cfg.dx()).cos())
                .collect();
            let stepped = rk_step(
                &SimState {
                    t: 0.0,
                    u: u.clone(),
                },
                &cfg,
            )
            .unwrap();
            let before = sp.forward(&u)[bin];
            let after = sp.forward(&stepped.u)[bin];
            let g = solver::mode_amplification(&cfg, &sp, bin);
            let rel = (after - before * g).norm() / (before * g).norm();
            assert!(rel <= 1e-12, "{scheme:?} bin {bin}: rel {rel}");
        }
    }
}

#[test]
fn composed_steps_match_power_of_g() {
    // n steps of a single mode equal u_hat * G^n within 1e-10 relative.
    let cfg = small_cfg(TimeScheme::Rk4, 0.2, 0.01, 128, 1);
    let sp = Spectral::new(cfg.n, cfg.l);
    let bin = 9usize;
    let k = sp.k()[bin];
    let u: Vec<f64> = (0..cfg.n)
        .map(|j| (k * (j as f64) * cfg.dx()).sin())
        .collect();
    let before = sp.forward(&u)[bin];
    let stepper = Stepper::new(&cfg).unwrap();
    let mut state = SimState { t: 0.0, u };
    for _ in 0..1000 {
        state = stepper.step(&state).unwrap();
    }
    let after = sp.forward(&state.u)[bin];
    let g = solver::mode_amplification(&cfg, &sp, bin);
    let mut gn = num_complex::Complex64::new(1.0, 0.0);
    for _ in 0..1000 {
        gn *= g;
    }
    let rel = (after - before * gn).norm() / (before * gn).norm();
    assert!(rel <= 1e-10, "rel {rel}");
}

#[test]
fn predicted_solution_matches_composed_steps() {
    let cfg = small_cfg(TimeScheme::Rk3, 0.4, 0.01, 256, 101);
    let stepper = Stepper::new(&cfg).unwrap();
    let mut state = initial_state(&cfg);
    for _ in 0..101 {
        state = stepper.step(&state).unwrap();
    }
    let predicted = gsa_predicted_solution(&cfg, 101);
    assert!(relative_l2(&state.u, &predicted) <= 1e-10);

    let p0 = gsa_predicted_solution(&cfg, 0);
    let ic = initial_state(&cfg).u;
    assert!(relative_l2(&p0, &ic) <= 1e-13);
}

#[test]
fn reality_preserved_at_every_step() {
    let cfg = small_cfg(TimeScheme::Rk4, 0.5, 0.01, 256, 1);
    let stepper = Stepper::new(&cfg).unwrap();
    let mut state = initial_state(&cfg);
    for _ in 0..200 {
        let (next, imag) = stepper.step_audited(&state).unwrap();
        assert!(imag <= 1e-12 * linf(&next.u).max(linf(&state.u)));
        state = next;
    }
}

#[test]
fn exact_solution_full_revolution_is_identity() {
    let cfg = small_cfg(TimeScheme::Rk2, 0.1, 0.0, 256, 0);
    let t = cfg.l / cfg.c;
    let u = exact_solution(&cfg, t);
    let ic = initial_state(&cfg).u;
    assert!(relative_l2(&u, &ic) <= 1e-10);
}

#[test]
fn exact_solution_decays_to_mean() {
    let cfg = small_cfg(TimeScheme::Rk2, 0.1, 0.01, 128, 0);
    let u = exact_solution(&cfg, 5e4);
    let ic = initial_state(&cfg).u;
    let mean: f64 = ic.iter().sum::<f64>() / ic.len() as f64;
    assert!(u.iter().all(|&v| (v - mean).abs() < 1e-12));
}

#[test]
fn exact_solution_translates_by_whole_cells() {
    // advancing by t and circularly shifting by c t / dx cells agree when
    // the shift is an integer
    let cfg = small_cfg(TimeScheme::Rk2, 0.1, 0.0, 256, 0);
    let shift = 37usize;
    let t = shift as f64 * cfg.dx() / cfg.c;
    let u = exact_solution(&cfg, t);
    let ic = initial_state(&cfg).u;
    for j in 0..cfg.n {
        let expect = ic[(j + cfg.n - shift) % cfg.n];
        assert!((u[j] - expect).abs() < 1e-11, "cell {j}");
    }
}

#[test]
fn exact_integration_surrogate_conserves_l2_norm() {
    // pure convection, G replaced by exp(lambda dt): per-mode modulus 1
    let cfg = small_cfg(TimeScheme::Rk4, 0.1, 0.0, 256, 0);
    let n0 = rms(&exact_solution(&cfg, 0.0));
    for n in [1u64, 10, 100, 1000] {
        let norm = rms(&exact_solution(&cfg, n as f64 * cfg.dt));
        assert!((norm - n0).abs() <= 1e-12 * n0, "n = {n}");
    }
}

#[test]
fn stable_diffusive_run_has_nonincreasing_l2_norm() {
    // Pe > 0, ratio <= 1 for all modes: L2 norm non-increasing over any
    // 100-step window.
    let cfg = small_cfg(TimeScheme::Rk4, 0.3, 0.01, 256, 0);
    let stepper = Stepper::new(&cfg).unwrap();
    let mut state = initial_state(&cfg);
    let mut prev = rms(&state.u);
    for _ in 0..5 {
        for _ in 0..100 {
            state = stepper.step(&state).unwrap();
        }
        let now = rms(&state.u);
        assert!(now <= prev * (1.0 + 1e-13));
        prev = now;
    }
}

#[test]
fn divergence_reports_step_index() {
    let cfg = small_cfg(TimeScheme::Rk2, 3.0, 0.0, 64, 2000);
    match solver::run(&cfg, 0) {
        Err(SolverError::Divergence { step, max_abs }) => {
            assert!(step > 0 && step < 2000, "step {step}");
            assert!(max_abs.is_finite());
        }
        other => panic!("expected divergence, got {other:?}"),
    }
}

#[test]
fn run_records_norms_and_snapshots() {
    let cfg = small_cfg(TimeScheme::Rk4, 0.2, 0.01, 128, 60);
    let out = solver::run(&cfg, 25).unwrap();
    let steps: Vec<u64> = out.snapshots.iter().map(|s| s.step).collect();
    assert_eq!(steps, vec![0, 25, 50, 60]);
    assert_eq!(out.norms.len(), 4);
    assert!(out.norms[0].linf_error < 1e-14);
    for r in &out.norms {
        assert!(r.l2_error <= r.linf_error + 1e-15);
        assert!(r.l2_norm > 0.0);
    }
    // deterministic
    let again = solver::run(&cfg, 25).unwrap();
    assert_eq!(
        out.snapshots.last().unwrap().state.u,
        again.snapshots.last().unwrap().state.u
    );
}

#[test]
fn budget_rejects_negative_step() {
    let cfg = small_cfg(TimeScheme::Rk2, 0.1, 0.01, 64, 10);
    assert!(error_budget(&cfg, -1).is_err());
}

#[test]
fn budget_mismatch_and_dispersion_vanish_for_exact_integration() {
    let cfg = small_cfg(TimeScheme::Rk3, 0.2, 0.01, 256, 0);
    let diag = exact_diagnostics(&cfg);
    let b = error_budget_with(&cfg, 50, &diag);
    let scale = rms(&b.term_phase); // the surviving transport term
    assert!(rms(&b.term_diff_mismatch) <= 1e-12 * scale);
    assert!(rms(&b.term_dispersion) <= 1e-12 * scale);
    // boundary and phase cancel to the compact (c_N(kmax) - c) form = 0 here
    let sum = b.sum();
    let residual: Vec<f64> = sum
        .iter()
        .zip(b.term_boundary.iter().zip(&b.term_phase))
        .map(|(&s, (&tb, &tp))| s - tb - tp)
        .collect();
    assert!(rms(&residual) <= 1e-12 * scale.max(1e-300));
}

#[test]
fn budget_matches_residual_for_pure_convection() {
    // The convection form folds the wavenumber-boundary term into the
    // compact phase term; check the budget sum against the independently
    // computed residual e_t + c e_x across one step.
    let cfg = small_cfg(TimeScheme::Rk2, 0.1, 0.0, 256, 51);
    let stepper = Stepper::new(&cfg).unwrap();
    let mut state = initial_state(&cfg);
    for _ in 0..50 {
        state = stepper.step(&state).unwrap();
    }
    let u50 = state.u.clone();
    let u51 = stepper.step(&state).unwrap().u;
    let e50: Vec<f64> = exact_solution(&cfg, 50.0 * cfg.dt)
        .iter()
        .zip(&u50)
        .map(|(&a, &b)| a - b)
        .collect();
    let e51: Vec<f64> = exact_solution(&cfg, 51.0 * cfg.dt)
        .iter()
        .zip(&u51)
        .map(|(&a, &b)| a - b)
        .collect();
    let ebar: Vec<f64> = e50.iter().zip(&e51).map(|(&a, &b)| 0.5 * (a + b)).collect();
    let ex = solver::spectral_derivative(&ebar, cfg.l, DerivOrder::First);
    let residual: Vec<f64> = (0..cfg.n)
        .map(|j| (e51[j] - e50[j]) / cfg.dt + cfg.c * ex[j])
        .collect();

    let b50 = error_budget(&cfg, 50).unwrap();
    let b51 = error_budget(&cfg, 51).unwrap();
    assert!(b50.term_boundary.iter().all(|&v| v == 0.0));
    let (s50, s51) = (b50.sum(), b51.sum());
    let budget: Vec<f64> = s50.iter().zip(&s51).map(|(&a, &b)| 0.5 * (a + b)).collect();
    let diff: Vec<f64> = residual.iter().zip(&budget).map(|(&a, &b)| a - b).collect();
    let rel = rms(&diff) / rms(&residual);
    assert!(rel <= 0.05, "relative mismatch {rel}");
}

#[test]
fn run_with_zero_steps_records_initial_state_only() {
    let cfg = small_cfg(TimeScheme::Rk3, 0.1, 0.0, 64, 0);
    let out = solver::run(&cfg, 10).unwrap();
    assert_eq!(out.snapshots.len(), 1);
    assert_eq!(out.snapshots[0].step, 0);
    assert_eq!(out.norms.len(), 1);
    assert!(out.norms[0].linf_error < 1e-14);
}

#[test]
fn budget_growth_terms_dominate_dispersion_for_unstable_rk2() {
    // 101 steps at Nc = 0.5, Pe = 0.01: the RK2 error is carried by the
    // growth/diffusion-mismatch forcing, not by dispersion.
    let cfg = figure_config(Figure::Fig3, TimeScheme::Rk2).unwrap();
    let b = error_budget(&cfg, 101).unwrap();
    assert!(rms(&b.term_diff_mismatch) > 10.0 * rms(&b.term_dispersion));
}

#[test]
fn packet_carrier_sits_at_022() {
    let cfg = figure_config(Figure::Fig1, TimeScheme::Rk2).unwrap();
    let ic = initial_state(&cfg).u;
    let sp = Spectral::new(cfg.n, cfg.l);
    let spec = sp.forward(&ic);
    let peak = (1..cfg.n / 2)
        .max_by(|&a, &b| spec[a].norm().total_cmp(&spec[b].norm()))
        .unwrap();
    let kdx_peak = sp.k()[peak] * cfg.dx();
    assert!((kdx_peak - 0.22).abs() < 0.01, "peak at {kdx_peak}");
}

#[test]
fn nondim_roundtrip() {
    let cfg = small_cfg(TimeScheme::Rk2, 0.1, 0.01, 4096, 1);
    assert!((cfg.nc() - 0.1).abs() < 1e-15);
    assert!((cfg.pe() - 0.01).abs() < 1e-16);
    assert!(SimConfig::from_nondim(
        100, // not a power of two
        10.0,
        0.5,
        TimeScheme::Rk2,
        0.1,
        0.0,
        1,
        WavePacket {
            x0: 5.0,
            envelope_rate: 10.0,
            k0: 1.0
        },
    )
    .is_err());
}
