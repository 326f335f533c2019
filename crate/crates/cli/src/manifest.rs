use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use alphaflow::io::write_json;
use alphaflow::{Result, SimConfig};
use serde::Serialize;

#[derive(Serialize)]
pub struct Manifest<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'a str,
    pub seed: Option<u64>,
    pub workers: Option<usize>,
    pub gamma: Option<f64>,
    pub tolerance: Option<f64>,
    pub config: Option<&'a SimConfig>,
    /// Seconds since the epoch; `SOURCE_DATE_EPOCH` wins when set.
    pub created_unix: u64,
}

pub fn created_unix() -> u64 {
    std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or_else(|| SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0))
}

pub fn write(dir: &Path, manifest: &Manifest<'_>) -> Result<()> {
    write_json(dir.join("manifest.json"), manifest)
}
