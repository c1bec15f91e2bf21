//! Location of the CFL number minimizing the amplification-error forcing
//! `|1 - |G|/|G_phys||` over all resolvable wavenumbers at fixed Pe.

use crate::error::{Error, Result};
use crate::math;
use crate::point::gsa_point;
use crate::scheme::{amplification_minus_one, SchemeSpec, TimeScheme};
use alloc::vec::Vec;
use core::f64::consts::PI;

/// Default search interval for the CFL optimum.
///
/// At fixed Pe the error forcing of every scheme collapses to its
/// time-discretization floor as Nc -> 0, so a norm objective over an
/// interval reaching that corner is trivially minimized there. The interval
/// starts at 0.05, the smallest CFL of practical interest here, which keeps
/// the optimizer pointed at the nontrivial balance the property charts show.
pub const DEFAULT_SEARCH_INTERVAL: (f64, f64) = (0.05, 1.0);

/// Scalar reduction of the error profile over wavenumbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectiveKind {
    /// `max` over kdx of `|1 - ratio|`.
    MaxAbs,
    /// Root-mean-square over kdx of `1 - ratio`.
    L2,
}

impl ObjectiveKind {
    /// Name used in CLI flags and JSON records.
    pub fn name(self) -> &'static str {
        match self {
            ObjectiveKind::MaxAbs => "max-abs",
            ObjectiveKind::L2 => "l2",
        }
    }

    /// Parse `"max-abs" | "l2"`.
    pub fn parse(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("max-abs") {
            Ok(ObjectiveKind::MaxAbs)
        } else if s.eq_ignore_ascii_case("l2") {
            Ok(ObjectiveKind::L2)
        } else {
            Err(Error::InvalidParameter("objective must be max-abs or l2"))
        }
    }
}

/// How CFL numbers with growth ratios above `1 + epsilon` are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstabilityPolicy {
    /// Reject such Nc outright (they are inadmissible, J undefined).
    ExcludeUnstable,
    /// Keep them; the excess ratio simply enters the norm.
    IncludeAll,
}

impl InstabilityPolicy {
    /// Name used in CLI flags and JSON records.
    pub fn name(self) -> &'static str {
        match self {
            InstabilityPolicy::ExcludeUnstable => "exclude-unstable",
            InstabilityPolicy::IncludeAll => "include-all",
        }
    }

    /// Parse `"exclude-unstable" | "include-all"`.
    pub fn parse(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("exclude-unstable") {
            Ok(InstabilityPolicy::ExcludeUnstable)
        } else if s.eq_ignore_ascii_case("include-all") {
            Ok(InstabilityPolicy::IncludeAll)
        } else {
            Err(Error::InvalidParameter(
                "policy must be exclude-unstable or include-all",
            ))
        }
    }
}

/// Objective configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Objective {
    /// Norm applied to the profile.
    pub kind: ObjectiveKind,
    /// Number of uniform kdx samples on `(0, pi]`; at least 64.
    pub kdx_samples: usize,
    /// Instability handling.
    pub policy: InstabilityPolicy,
    /// Tolerance of the exclusion test `ratio > 1 + epsilon`.
    pub epsilon: f64,
}

impl Default for Objective {
    fn default() -> Self {
        Objective {
            kind: ObjectiveKind::MaxAbs,
            kdx_samples: 2048,
            policy: InstabilityPolicy::ExcludeUnstable,
            epsilon: 1e-12,
        }
    }
}

impl Objective {
    fn validate(&self) -> Result<()> {
        if self.kdx_samples < 64 {
            return Err(Error::InvalidParameter("kdx_samples must be >= 64"));
        }
        if !(self.epsilon >= 0.0) {
            return Err(Error::InvalidParameter("epsilon must be >= 0"));
        }
        Ok(())
    }
}

/// Outcome of [`optimal_nc`].
#[derive(Debug, Clone)]
pub struct OptimalResult {
    /// Located CFL optimum.
    pub nc_star: f64,
    /// Objective value at `nc_star`.
    pub j_star: f64,
    /// `(kdx, |1 - ratio|)` profile at `nc_star`.
    pub profile: Vec<(f64, f64)>,
    /// Final golden-section bracket around `nc_star`.
    pub bracket: (f64, f64),
    /// `(Nc, J)` audit table; `None` marks inadmissible Nc.
    pub audit: Vec<(f64, Option<f64>)>,
}

/// Growth ratio `|G| exp(Pe kdx^2)` via the cancellation-free modulus.
fn ratio_at(spec: &SchemeSpec, kdx: f64) -> f64 {
    let d = amplification_minus_one(spec, kdx);
    let gmod = math::sqrt((1.0 + d.re) * (1.0 + d.re) + d.im * d.im);
    gmod * math::exp(spec.pe * kdx * kdx)
}

/// Uniform samples of `|1 - ratio|` on `(0, pi]`, each mapped through
/// [`gsa_point`] with the phase chain carried along the sweep.
pub fn error_profile(
    scheme: TimeScheme,
    nc: f64,
    pe: f64,
    kdx_samples: usize,
) -> Result<Vec<(f64, f64)>> {
    let spec = SchemeSpec::new(scheme, nc, pe)?;
    let mut out = Vec::with_capacity(kdx_samples);
    let mut phi_ref = Some(0.0);
    for i in 1..=kdx_samples {
        let kdx = PI * (i as f64) / (kdx_samples as f64);
        let p = gsa_point(&spec, kdx, phi_ref)?;
        phi_ref = Some(p.phi);
        out.push((kdx, (1.0 - p.ratio).abs()));
    }
    Ok(out)
}

/// Objective value at one Nc; `None` when the exclusion policy rejects it.
pub fn objective_value(scheme: TimeScheme, pe: f64, nc: f64, objective: &Objective) -> Option<f64> {
    let spec = SchemeSpec::new(scheme, nc, pe).ok()?;
    let m = objective.kdx_samples;
    let mut max = 0.0_f64;
    let mut sum_sq = 0.0_f64;
    for i in 1..=m {
        let kdx = PI * (i as f64) / (m as f64);
        let r = ratio_at(&spec, kdx);
        if matches!(objective.policy, InstabilityPolicy::ExcludeUnstable)
            && r > 1.0 + objective.epsilon
        {
            return None;
        }
        let e = (1.0 - r).abs();
        max = max.max(e);
        sum_sq += e * e;
    }
    Some(match objective.kind {
        ObjectiveKind::MaxAbs => max,
        ObjectiveKind::L2 => math::sqrt(sum_sq / (m as f64)),
    })
}

const AUDIT_SPACING: f64 = 1e-3;
const BRACKET_TOL: f64 = 1e-6;
const GOLDEN: f64 = 0.618_033_988_749_894_9;

/// Golden-section minimization of `f` on `[a, b]` down to a bracket of width
/// [`BRACKET_TOL`]; inadmissible evaluations count as +infinity. Returns the
/// midpoint, its value (`None` if inadmissible) and the final bracket.
fn golden_section<F>(f: F, mut a: f64, mut b: f64) -> (f64, Option<f64>, (f64, f64))
where
    F: Fn(f64) -> Option<f64>,
{
    let lift = |v: Option<f64>| v.unwrap_or(f64::INFINITY);
    let mut x1 = b - GOLDEN * (b - a);
    let mut x2 = a + GOLDEN * (b - a);
    let mut f1 = lift(f(x1));
    let mut f2 = lift(f(x2));
    while b - a > BRACKET_TOL {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - GOLDEN * (b - a);
            f1 = lift(f(x1));
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + GOLDEN * (b - a);
            f2 = lift(f(x2));
        }
    }
    let mid = 0.5 * (a + b);
    (mid, f(mid), (a, b))
}

/// Locate the CFL number minimizing the objective on `search_interval`.
///
/// Golden-section minimization to a 1e-6 bracket, followed by an audit of J
/// on a uniform 1e-3 grid to guard against multimodality; the best basin
/// found is refined again and the global best is returned.
pub fn optimal_nc(
    scheme: TimeScheme,
    pe: f64,
    objective: &Objective,
    search_interval: (f64, f64),
) -> Result<OptimalResult> {
    objective.validate()?;
    let (lo, hi) = search_interval;
    if !(lo > 0.0 && hi > lo && hi <= 2.0) {
        return Err(Error::InvalidParameter(
            "search interval must satisfy 0 < lo < hi <= 2",
        ));
    }
    if !(pe >= 0.0) {
        return Err(Error::InvalidParameter("Pe must be finite and >= 0"));
    }
    let f = |nc: f64| objective_value(scheme, pe, nc, objective);

    // 1. golden section over the full interval
    let (g_nc, g_j, g_bracket) = golden_section(f, lo, hi);

    // 2. audit grid
    let n_cells = math::ceil((hi - lo) / AUDIT_SPACING) as usize;
    let mut audit = Vec::with_capacity(n_cells + 1);
    let mut best_audit: Option<(f64, f64)> = None;
    for i in 0..=n_cells {
        let nc = (lo + (i as f64) * AUDIT_SPACING).min(hi);
        let j = f(nc);
        if let Some(j) = j {
            if best_audit.is_none_or(|(_, bj)| j < bj) {
                best_audit = Some((nc, j));
            }
        }
        audit.push((nc, j));
    }

    // 3. refine around the audit minimum and keep the global best
    let mut candidates: Vec<(f64, f64, (f64, f64))> = Vec::new();
    if let Some(j) = g_j {
        candidates.push((g_nc, j, g_bracket));
    }
    if let Some((a_nc, _)) = best_audit {
        let (r_nc, r_j, r_bracket) = golden_section(
            f,
            (a_nc - AUDIT_SPACING).max(lo),
            (a_nc + AUDIT_SPACING).min(hi),
        );
        if let Some(j) = r_j {
            candidates.push((r_nc, j, r_bracket));
        }
    }
    for (nc, j) in audit.iter().filter_map(|&(nc, j)| j.map(|j| (nc, j))) {
        candidates.push((nc, j, (nc, nc)));
    }
    let best = candidates
        .into_iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .ok_or(Error::NoAdmissibleCfl)?;

    let (nc_star, _, bracket) = best;
    let j_star = f(nc_star).ok_or(Error::NoAdmissibleCfl)?;
    let profile = error_profile(scheme, nc_star, pe, objective.kdx_samples)?;
    Ok(OptimalResult {
        nc_star,
        j_star,
        profile,
        bracket,
        audit,
    })
}
