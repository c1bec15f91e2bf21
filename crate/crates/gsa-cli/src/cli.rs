//! Subcommand implementations for the `gsa` binary.
//!
//! Exit codes: 0 success, 2 validation failure, 3 I/O failure, 4 no
//! admissible optimum, 5 solver divergence.

use crate::io as gio;
use crate::manifest::RunManifest;
use crate::presets::{self, Figure};
use crate::solver::{self, SimConfig, SolverError, WavePacket};
use clap::{Args, Parser, Subcommand};
use gsa_core::{
    gsa_point, linspace, ChartGrid, Error as CoreError, InstabilityPolicy, Objective,
    ObjectiveKind, SchemeSpec, TimeScheme,
};
use serde::Deserialize;
use serde_json::json;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

/// Top-level command line.
#[derive(Parser)]
#[command(
    name = "gsa",
    version,
    about = "Spectral analysis of Fourier/Runge-Kutta schemes for the 1D convection(-diffusion) equation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Print the GSA diagnostics of a single (scheme, Nc, Pe, kdx) point as JSON.
    Point(PointArgs),
    /// Sweep the (Nc, kdx)-plane and export contour-ready chart files.
    Chart(ChartArgs),
    /// Locate the CFL number minimizing the amplification error.
    Optimize(OptimizeArgs),
    /// Run a wave-packet simulation and export snapshots plus error norms.
    Simulate(SimulateArgs),
    /// Evaluate the error-budget decomposition at one step.
    Budget(BudgetArgs),
}

/// Failures mapped to process exit codes.
#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Io(String),
    NoAdmissible,
    Divergence { step: u64, max_abs: f64 },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Io(_) => 3,
            CliError::NoAdmissible => 4,
            CliError::Divergence { .. } => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "{m}"),
            CliError::Io(m) => write!(f, "{m}"),
            CliError::NoAdmissible => write!(f, "no admissible Nc in the search interval"),
            CliError::Divergence { step, max_abs } => {
                write!(
                    f,
                    "solution diverged at step {step} (max |u| = {max_abs:e})"
                )
            }
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::NoAdmissibleCfl => CliError::NoAdmissible,
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::Divergence { step, max_abs } => CliError::Divergence { step, max_abs },
            SolverError::Invalid(m) => CliError::Validation(m.to_string()),
            SolverError::Core(c) => c.into(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Dispatch a parsed command line.
pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Point(a) => cmd_point(a),
        Command::Chart(a) => cmd_chart(a),
        Command::Optimize(a) => cmd_optimize(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Budget(a) => cmd_budget(a),
    }
}

fn parse_scheme(s: &str) -> Result<TimeScheme, CliError> {
    TimeScheme::parse(s).map_err(CliError::from)
}

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    Ok(())
}

// ---------------------------------------------------------------- point ---

#[derive(Args)]
pub struct PointArgs {
    /// Time scheme: rk2, rk3 or rk4.
    #[arg(long)]
    pub scheme: String,
    /// CFL number Nc > 0.
    #[arg(long)]
    pub nc: f64,
    /// Peclet number Pe >= 0 (0 selects the convection equation).
    #[arg(long)]
    pub pe: f64,
    /// Nondimensional wavenumber in [0, pi].
    #[arg(long)]
    pub kdx: f64,
}

fn cmd_point(a: PointArgs) -> Result<(), CliError> {
    if !(0.0..=std::f64::consts::PI + 1e-12).contains(&a.kdx) {
        return Err(CliError::Validation("kdx must lie within [0, pi]".into()));
    }
    let spec = SchemeSpec::new(parse_scheme(&a.scheme)?, a.nc, a.pe)?;
    let p = gsa_point(&spec, a.kdx, None)?;
    let doc = json!({
        "kdx": p.kdx,
        "g_re": p.g.re,
        "g_im": p.g.im,
        "gmod": p.gmod,
        "phi": p.phi,
        "cn_over_c": p.cn_over_c,
        "vgn_over_c": p.vgn_over_c,
        "nun_over_nu": p.nun_over_nu,
        "gphys_mod": p.gphys_mod,
        "ratio": p.ratio,
    });
    println!(
        "{}",
        serde_json::to_string_pretty(&doc).expect("serializable")
    );
    Ok(())
}

// ---------------------------------------------------------------- chart ---

#[derive(Args)]
pub struct ChartArgs {
    /// JSON config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Time scheme: rk2, rk3 or rk4.
    #[arg(long)]
    pub scheme: Option<String>,
    /// Peclet number.
    #[arg(long)]
    pub pe: Option<f64>,
    /// Lower end of the Nc axis.
    #[arg(long)]
    pub nc_min: Option<f64>,
    /// Upper end of the Nc axis.
    #[arg(long)]
    pub nc_max: Option<f64>,
    /// Number of Nc samples.
    #[arg(long)]
    pub nc_samples: Option<usize>,
    /// Number of kdx samples on [0, pi].
    #[arg(long)]
    pub kdx_samples: Option<usize>,
    /// Export format: csv, json or both.
    #[arg(long, default_value = "both")]
    pub format: String,
    /// Also emit a self-contained plotting script next to the CSV.
    #[arg(long)]
    pub emit_plot_script: bool,
    /// Output directory.
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ChartFileConfig {
    scheme: Option<String>,
    pe: Option<f64>,
    nc_min: Option<f64>,
    nc_max: Option<f64>,
    nc_samples: Option<usize>,
    kdx_samples: Option<usize>,
}

fn read_json_config<T: serde::de::DeserializeOwned + Default>(
    path: &Option<PathBuf>,
) -> Result<T, CliError> {
    match path {
        None => Ok(T::default()),
        Some(p) => {
            let text = fs::read_to_string(p)?;
            serde_json::from_str(&text)
                .map_err(|e| CliError::Validation(format!("config {}: {e}", p.display())))
        }
    }
}

fn cmd_chart(a: ChartArgs) -> Result<(), CliError> {
    let file: ChartFileConfig = read_json_config(&a.config)?;
    let scheme_name = a
        .scheme
        .or(file.scheme)
        .ok_or_else(|| CliError::Validation("missing --scheme".into()))?;
    let scheme = parse_scheme(&scheme_name)?;
    let pe = a.pe.or(file.pe).unwrap_or(0.0);
    let (def_nc_min, def_nc_max, def_nc_samples) = gsa_core::chart::DEFAULT_NC_AXIS;
    let nc_min = a.nc_min.or(file.nc_min).unwrap_or(def_nc_min);
    let nc_max = a.nc_max.or(file.nc_max).unwrap_or(def_nc_max);
    let nc_samples = a.nc_samples.or(file.nc_samples).unwrap_or(def_nc_samples);
    let kdx_samples = a
        .kdx_samples
        .or(file.kdx_samples)
        .unwrap_or(gsa_core::chart::DEFAULT_KDX_SAMPLES);
    if nc_samples == 0 || kdx_samples == 0 {
        return Err(CliError::Validation(
            "axis sample counts must be > 0".into(),
        ));
    }

    let nc_axis = linspace(nc_min, nc_max, nc_samples);
    let kdx_axis = linspace(0.0, std::f64::consts::PI, kdx_samples);
    let grid = ChartGrid::sweep(scheme, pe, &nc_axis, &kdx_axis)?;

    ensure_dir(&a.out_dir)?;
    let mut outputs = Vec::new();
    let (want_csv, want_json) = match a.format.as_str() {
        "csv" => (true, false),
        "json" => (false, true),
        "both" => (true, true),
        _ => {
            return Err(CliError::Validation(
                "format must be csv, json or both".into(),
            ))
        }
    };
    if want_csv {
        gio::write_chart_csv(&grid, &a.out_dir.join("chart.csv"))?;
        outputs.push("chart.csv".to_string());
    }
    if want_json {
        gio::write_chart_json(&grid, &a.out_dir.join("chart.json"))?;
        outputs.push("chart.json".to_string());
    }
    if a.emit_plot_script {
        if !want_csv {
            return Err(CliError::Validation(
                "--emit-plot-script requires the csv format".into(),
            ));
        }
        gio::write_plot_script("chart.csv", &a.out_dir.join("plot_chart.py"))?;
        outputs.push("plot_chart.py".to_string());
    }

    let parameters = json!({
        "scheme": scheme.name(),
        "pe": pe,
        "nc_min": nc_min,
        "nc_max": nc_max,
        "nc_samples": nc_samples,
        "kdx_samples": kdx_samples,
        "format": a.format,
    });
    RunManifest::new("chart", parameters, outputs).write(&a.out_dir)?;
    Ok(())
}

// ------------------------------------------------------------- optimize ---

#[derive(Args)]
pub struct OptimizeArgs {
    /// Time scheme: rk2, rk3 or rk4.
    #[arg(long)]
    pub scheme: String,
    /// Peclet number.
    #[arg(long)]
    pub pe: f64,
    /// Objective norm: max-abs or l2.
    #[arg(long, default_value = "max-abs")]
    pub objective: String,
    /// Instability handling: exclude-unstable or include-all.
    #[arg(long, default_value = "exclude-unstable")]
    pub policy: String,
    /// Lower end of the search interval.
    #[arg(long, default_value_t = gsa_core::DEFAULT_SEARCH_INTERVAL.0)]
    pub lo: f64,
    /// Upper end of the search interval.
    #[arg(long, default_value_t = gsa_core::DEFAULT_SEARCH_INTERVAL.1)]
    pub hi: f64,
    /// Wavenumber samples of the objective.
    #[arg(long, default_value_t = 2048)]
    pub kdx_samples: usize,
    /// Optional output directory (result JSON plus manifest); otherwise the
    /// result prints to stdout.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

fn cmd_optimize(a: OptimizeArgs) -> Result<(), CliError> {
    let scheme = parse_scheme(&a.scheme)?;
    let objective = Objective {
        kind: ObjectiveKind::parse(&a.objective)?,
        kdx_samples: a.kdx_samples,
        policy: InstabilityPolicy::parse(&a.policy)?,
        epsilon: 1e-12,
    };
    let interval = (a.lo, a.hi);
    let result = gsa_core::optimal_nc(scheme, a.pe, &objective, interval)?;
    let doc = gio::optimal_result_json(scheme, a.pe, &objective, interval, &result);
    match &a.out_dir {
        None => println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("serializable")
        ),
        Some(dir) => {
            ensure_dir(dir)?;
            fs::write(
                dir.join("optimize.json"),
                serde_json::to_vec_pretty(&doc).expect("serializable"),
            )?;
            let parameters = json!({
                "scheme": scheme.name(),
                "pe": a.pe,
                "objective": a.objective,
                "policy": a.policy,
                "lo": a.lo,
                "hi": a.hi,
                "kdx_samples": a.kdx_samples,
            });
            RunManifest::new("optimize", parameters, vec!["optimize.json".to_string()])
                .write(dir)?;
        }
    }
    Ok(())
}

// ------------------------------------------------------------- simulate ---

#[derive(Args, Clone)]
pub struct SimulateArgs {
    /// JSON config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Benchmark preset: fig1, fig2 or fig3.
    #[arg(long)]
    pub figure: Option<String>,
    /// Time scheme: rk2, rk3 or rk4.
    #[arg(long)]
    pub scheme: Option<String>,
    /// Grid points (power of two).
    #[arg(long)]
    pub n: Option<usize>,
    /// CFL number.
    #[arg(long)]
    pub nc: Option<f64>,
    /// Peclet number.
    #[arg(long)]
    pub pe: Option<f64>,
    /// Step count.
    #[arg(long)]
    pub steps: Option<u64>,
    /// Snapshot stride (0 keeps only the initial and final snapshots).
    #[arg(long)]
    pub snapshot_stride: Option<u64>,
    /// Output directory.
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Deserialize, Default, Clone)]
#[serde(deny_unknown_fields)]
struct PacketFileConfig {
    x0: Option<f64>,
    envelope_rate: Option<f64>,
    k0_dx: Option<f64>,
}

#[derive(Deserialize, Default, Clone)]
#[serde(deny_unknown_fields)]
struct SimFileConfig {
    figure: Option<String>,
    scheme: Option<String>,
    n: Option<usize>,
    l: Option<f64>,
    c: Option<f64>,
    nc: Option<f64>,
    pe: Option<f64>,
    dt: Option<f64>,
    nu: Option<f64>,
    steps: Option<u64>,
    snapshot_stride: Option<u64>,
    packet: Option<PacketFileConfig>,
}

/// Resolve a simulation config from preset, file and flags (flags win).
fn resolve_sim(args: &SimulateArgs) -> Result<(SimConfig, u64, serde_json::Value), CliError> {
    let file: SimFileConfig = read_json_config(&args.config)?;
    let figure = match args.figure.as_deref().or(file.figure.as_deref()) {
        Some(name) => Some(Figure::parse(name)?),
        None => None,
    };
    let scheme_name = args
        .scheme
        .clone()
        .or(file.scheme.clone())
        .ok_or_else(|| CliError::Validation("missing --scheme".into()))?;
    let scheme = parse_scheme(&scheme_name)?;

    let (mut nc, mut pe, mut steps) = match figure {
        Some(f) => f.parameters(),
        None => (0.1, 0.0, 0),
    };
    let n = args.n.or(file.n).unwrap_or(presets::PRESET_GRID_POINTS);
    let l = file.l.unwrap_or(presets::PRESET_DOMAIN);
    let c = file.c.unwrap_or(presets::PRESET_PHASE_SPEED);
    if let Some(v) = args.nc.or(file.nc) {
        nc = v;
    }
    if let Some(v) = args.pe.or(file.pe) {
        pe = v;
    }
    if let Some(v) = args.steps.or(file.steps) {
        steps = v;
    }
    if figure.is_none() && steps == 0 && args.steps.is_none() && file.steps.is_none() {
        return Err(CliError::Validation(
            "missing step count: pass --figure or --steps".into(),
        ));
    }

    let dx = l / n as f64;
    let pc = file.packet.unwrap_or_default();
    let packet = WavePacket {
        x0: pc.x0.unwrap_or(5.0),
        envelope_rate: pc.envelope_rate.unwrap_or(10.0),
        k0: pc.k0_dx.unwrap_or(presets::PRESET_CARRIER_KDX) / dx,
    };

    // physical overrides take precedence over nondimensional values
    let mut cfg = SimConfig::from_nondim(n, l, c, scheme, nc, pe, steps, packet)?;
    if let Some(dt) = file.dt {
        cfg.dt = dt;
    }
    if let Some(nu) = file.nu {
        cfg.nu = nu;
    }
    cfg.validate()?;

    let stride = args
        .snapshot_stride
        .or(file.snapshot_stride)
        .unwrap_or_else(|| figure.map_or(0, Figure::default_stride));

    let parameters = json!({
        "figure": figure.map(Figure::name),
        "scheme": scheme.name(),
        "n": cfg.n,
        "l": cfg.l,
        "c": cfg.c,
        "dx": cfg.dx(),
        "dt": cfg.dt,
        "nu": cfg.nu,
        "nc": cfg.nc(),
        "pe": cfg.pe(),
        "steps": cfg.steps,
        "snapshot_stride": stride,
        "packet": {
            "x0": cfg.ic.x0,
            "envelope_rate": cfg.ic.envelope_rate,
            "k0": cfg.ic.k0,
            "k0_dx": cfg.ic.k0 * cfg.dx(),
        },
    });
    Ok((cfg, stride, parameters))
}

fn cmd_simulate(a: SimulateArgs) -> Result<(), CliError> {
    let (cfg, stride, parameters) = resolve_sim(&a)?;
    let out = solver::run(&cfg, stride)?;
    ensure_dir(&a.out_dir)?;
    let mut outputs = gio::write_snapshots_csv(&cfg, &out, &a.out_dir)?;
    gio::write_norms_csv(&out, &a.out_dir.join("norms.csv"))?;
    outputs.push("norms.csv".to_string());
    RunManifest::new("simulate", parameters, outputs).write(&a.out_dir)?;
    Ok(())
}

// --------------------------------------------------------------- budget ---

#[derive(Args)]
pub struct BudgetArgs {
    #[command(flatten)]
    pub sim: SimulateArgs,
    /// Step count n at which the budget is evaluated (default: the
    /// configured step count).
    #[arg(long)]
    pub step: Option<i64>,
}

fn cmd_budget(a: BudgetArgs) -> Result<(), CliError> {
    let (cfg, _, parameters) = resolve_sim(&a.sim)?;
    let n = a.step.unwrap_or(cfg.steps as i64);
    let budget = solver::error_budget(&cfg, n)?;
    ensure_dir(&a.sim.out_dir)?;
    let name = format!("budget_{n}.csv");
    gio::write_budget_csv(&cfg, &budget, &a.sim.out_dir.join(&name))?;
    let mut parameters = parameters;
    parameters["budget_step"] = json!(n);
    RunManifest::new("budget", parameters, vec![name]).write(&a.sim.out_dir)?;
    Ok(())
}
