//! Reproducibility manifest written alongside every output set.
//!
//! The manifest echoes the fully resolved parameters (including every
//! derived quantity), so re-running the subcommand with them reproduces the
//! primary outputs byte-for-byte; only the timestamp varies between runs.

use serde::Serialize;
use std::io;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

/// Run provenance record, schema `gsa_manifest_v1`.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    schema: &'static str,
    /// Subcommand that produced the outputs.
    pub subcommand: String,
    /// Tool version.
    pub version: String,
    /// Wall-clock time of the run (seconds since the epoch); informational
    /// only, excluded from reproducibility comparisons.
    pub created_unix: u64,
    /// Fully resolved parameter set.
    pub parameters: serde_json::Value,
    /// Files written, relative to the manifest.
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(subcommand: &str, parameters: serde_json::Value, outputs: Vec<String>) -> Self {
        RunManifest {
            schema: "gsa_manifest_v1",
            subcommand: subcommand.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            created_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            parameters,
            outputs,
        }
    }

    /// Write `manifest.json` into `dir`.
    pub fn write(&self, dir: &Path) -> io::Result<()> {
        std::fs::write(dir.join("manifest.json"), serde_json::to_vec_pretty(self)?)
    }
}
