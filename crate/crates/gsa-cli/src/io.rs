//! File exports. All floating-point CSV fields are serialized with 17
//! significant digits so round-tripping is lossless; JSON goes through
//! serde_json's shortest-roundtrip encoding.

use crate::solver::{ErrorBudget, RunOutput, SimConfig};
use gsa_core::{ChartGrid, Objective, OptimalResult, TimeScheme};
use serde::Serialize;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

/// 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Chart CSV: one row per cell, row-major in Nc then kdx; `nuN_over_nu`
/// left empty when Pe = 0.
pub fn write_chart_csv(grid: &ChartGrid, path: &Path) -> io::Result<()> {
    let mut w = io::BufWriter::new(fs::File::create(path)?);
    writeln!(
        w,
        "Nc,kdx,G_re,G_im,Gmod,phi,cN_over_c,VgN_over_c,nuN_over_nu,ratio"
    )?;
    for (i, j, p) in grid.cells() {
        let nun = p.nun_over_nu.map(fmt17).unwrap_or_default();
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{},{}",
            fmt17(grid.nc_axis[i]),
            fmt17(grid.kdx_axis[j]),
            fmt17(p.g.re),
            fmt17(p.g.im),
            fmt17(p.gmod),
            fmt17(p.phi),
            fmt17(p.cn_over_c),
            fmt17(p.vgn_over_c),
            nun,
            fmt17(p.ratio),
        )?;
    }
    w.flush()
}

#[derive(Serialize)]
struct ChartCell {
    g_re: f64,
    g_im: f64,
    gmod: f64,
    phi: f64,
    cn_over_c: f64,
    vgn_over_c: f64,
    nun_over_nu: Option<f64>,
    ratio: f64,
}

#[derive(Serialize)]
struct ChartDoc<'a> {
    schema: &'static str,
    scheme: &'a str,
    pe: f64,
    nc_axis: &'a [f64],
    kdx_axis: &'a [f64],
    values: Vec<Vec<ChartCell>>,
}

/// Chart JSON document, schema `gsa_chart_v1`.
pub fn write_chart_json(grid: &ChartGrid, path: &Path) -> io::Result<()> {
    let values = (0..grid.nc_axis.len())
        .map(|i| {
            grid.row(i)
                .iter()
                .map(|p| ChartCell {
                    g_re: p.g.re,
                    g_im: p.g.im,
                    gmod: p.gmod,
                    phi: p.phi,
                    cn_over_c: p.cn_over_c,
                    vgn_over_c: p.vgn_over_c,
                    nun_over_nu: p.nun_over_nu,
                    ratio: p.ratio,
                })
                .collect()
        })
        .collect();
    let doc = ChartDoc {
        schema: "gsa_chart_v1",
        scheme: grid.scheme.name(),
        pe: grid.pe,
        nc_axis: &grid.nc_axis,
        kdx_axis: &grid.kdx_axis,
        values,
    };
    fs::write(path, serde_json::to_vec_pretty(&doc)?)
}

#[derive(Serialize)]
struct ObjectiveDoc {
    kind: &'static str,
    kdx_samples: usize,
    policy: &'static str,
    epsilon: f64,
}

#[derive(Serialize)]
struct OptDoc<'a> {
    schema: &'static str,
    scheme: &'a str,
    pe: f64,
    objective: ObjectiveDoc,
    search_interval: [f64; 2],
    nc_star: f64,
    j_star: f64,
    bracket: [f64; 2],
    profile: &'a [(f64, f64)],
    audit: Vec<(f64, Option<f64>)>,
}

/// Optimizer result JSON, schema `gsa_opt_v1`.
pub fn optimal_result_json(
    scheme: TimeScheme,
    pe: f64,
    objective: &Objective,
    interval: (f64, f64),
    result: &OptimalResult,
) -> serde_json::Value {
    let doc = OptDoc {
        schema: "gsa_opt_v1",
        scheme: scheme.name(),
        pe,
        objective: ObjectiveDoc {
            kind: objective.kind.name(),
            kdx_samples: objective.kdx_samples,
            policy: objective.policy.name(),
            epsilon: objective.epsilon,
        },
        search_interval: [interval.0, interval.1],
        nc_star: result.nc_star,
        j_star: result.j_star,
        bracket: [result.bracket.0, result.bracket.1],
        profile: &result.profile,
        audit: result.audit.clone(),
    };
    serde_json::to_value(doc).expect("serializable")
}

/// Norm series CSV: `step,t,l2_error,linf_error,l2_norm`.
pub fn write_norms_csv(out: &RunOutput, path: &Path) -> io::Result<()> {
    let mut w = io::BufWriter::new(fs::File::create(path)?);
    writeln!(w, "step,t,l2_error,linf_error,l2_norm")?;
    for r in &out.norms {
        writeln!(
            w,
            "{},{},{},{},{}",
            r.step,
            fmt17(r.t),
            fmt17(r.l2_error),
            fmt17(r.linf_error),
            fmt17(r.l2_norm),
        )?;
    }
    w.flush()
}

/// Snapshot CSVs `snap_<step>.csv` with `x,u_num,u_exact,error`; returns the
/// file names written.
pub fn write_snapshots_csv(
    cfg: &SimConfig,
    out: &RunOutput,
    dir: &Path,
) -> io::Result<Vec<String>> {
    let x = cfg.grid();
    let mut names = Vec::new();
    for snap in &out.snapshots {
        let name = format!("snap_{}.csv", snap.step);
        let mut w = io::BufWriter::new(fs::File::create(dir.join(&name))?);
        writeln!(w, "x,u_num,u_exact,error")?;
        for (j, &xj) in x.iter().enumerate() {
            writeln!(
                w,
                "{},{},{},{}",
                fmt17(xj),
                fmt17(snap.state.u[j]),
                fmt17(snap.exact[j]),
                fmt17(snap.state.u[j] - snap.exact[j]),
            )?;
        }
        w.flush()?;
        names.push(name);
    }
    Ok(names)
}

/// Budget CSV: `x,term_diff_mismatch,term_boundary,term_dispersion,term_phase`.
pub fn write_budget_csv(cfg: &SimConfig, budget: &ErrorBudget, path: &Path) -> io::Result<()> {
    let x = cfg.grid();
    let mut w = io::BufWriter::new(fs::File::create(path)?);
    writeln!(
        w,
        "x,term_diff_mismatch,term_boundary,term_dispersion,term_phase"
    )?;
    for (j, &xj) in x.iter().enumerate() {
        writeln!(
            w,
            "{},{},{},{},{}",
            fmt17(xj),
            fmt17(budget.term_diff_mismatch[j]),
            fmt17(budget.term_boundary[j]),
            fmt17(budget.term_dispersion[j]),
            fmt17(budget.term_phase[j]),
        )?;
    }
    w.flush()
}

/// Self-contained matplotlib script consuming the chart CSV next to it.
pub fn write_plot_script(csv_name: &str, path: &Path) -> io::Result<()> {
    let script = format!(
        r#"#!/usr/bin/env python3
"""Contour plot of a chart CSV (written next to this script)."""
import csv
import os
import sys

import matplotlib.pyplot as plt
import numpy as np

here = os.path.dirname(os.path.abspath(__file__))
field = sys.argv[1] if len(sys.argv) > 1 else "ratio"

ncs, kdxs, rows = [], [], []
with open(os.path.join(here, "{csv_name}")) as fh:
    for row in csv.DictReader(fh):
        ncs.append(float(row["Nc"]))
        kdxs.append(float(row["kdx"]))
        rows.append(float(row[field]) if row[field] else np.nan)

nc_axis = sorted(set(ncs))
kdx_axis = sorted(set(kdxs))
z = np.array(rows).reshape(len(nc_axis), len(kdx_axis))

fig, ax = plt.subplots(figsize=(7, 5))
cs = ax.contourf(kdx_axis, nc_axis, z, levels=31)
ax.contour(kdx_axis, nc_axis, z, levels=[1.0], colors="k", linestyles="--")
fig.colorbar(cs, ax=ax, label=field)
ax.set_xlabel(r"$k\Delta x$")
ax.set_ylabel(r"$N_c$")
fig.tight_layout()
out = os.path.join(here, f"chart_{{field}}.png")
fig.savefig(out, dpi=160)
print(out)
"#
    );
    fs::write(path, script)
}
