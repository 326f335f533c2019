use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::PhysicalParams;
use crate::spectral::Grid;

use super::initial::PRESETS;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default = "default_dim")]
    pub dim: usize,
    pub n: usize,
}

fn default_dim() -> usize {
    2
}
fn one() -> f64 {
    1.0
}
fn one_usize() -> usize {
    1
}
fn yes() -> bool {
    true
}
fn default_preset() -> String {
    "taylor-green".to_string()
}
fn default_decay() -> f64 {
    2.5
}

/// Everything needed to reproduce one simulation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub grid: GridConfig,
    pub alpha: f64,
    pub eta: f64,
    pub lambda: f64,
    /// Regularization strength ε.
    #[serde(default)]
    pub epsilon: f64,
    /// Homotopy parameter δ ∈ [0, 1].
    #[serde(default = "one")]
    pub delta: f64,
    pub dt: f64,
    pub t_end: f64,
    #[serde(default = "one_usize")]
    pub snapshot_stride: usize,
    #[serde(default = "default_preset")]
    pub initial_condition: String,
    /// Start from a checkpoint file instead of a preset.
    #[serde(default)]
    pub checkpoint: Option<PathBuf>,
    #[serde(default)]
    pub seed: u64,
    /// Spectral decay used by the random presets.
    #[serde(default = "default_decay")]
    pub spectrum_decay: f64,
    #[serde(default = "one")]
    pub velocity_amplitude: f64,
    /// RMS magnitude of a random initial stress; zero gives σ₀ = 0.
    #[serde(default)]
    pub stress_amplitude: f64,
    /// Multiply the initial data by δ.
    #[serde(default = "yes")]
    pub scale_initial_data: bool,
    /// Upper bound for `dt·max|u|·N`.
    #[serde(default = "one")]
    pub cfl_limit: f64,
}

impl SimConfig {
    /// A small 2D configuration with every optional key at its default.
    pub fn new(n: usize, alpha: f64, eta: f64, lambda: f64, dt: f64, t_end: f64) -> Self {
        SimConfig {
            grid: GridConfig { dim: 2, n },
            alpha,
            eta,
            lambda,
            epsilon: 0.0,
            delta: 1.0,
            dt,
            t_end,
            snapshot_stride: 1,
            initial_condition: default_preset(),
            checkpoint: None,
            seed: 0,
            spectrum_decay: default_decay(),
            velocity_amplitude: 1.0,
            stress_amplitude: 0.0,
            scale_initial_data: true,
            cfl_limit: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        Grid::new(self.grid.dim, self.grid.n).map_err(|e| match e {
            Error::Config(m) => Error::key("grid", m),
            other => other,
        })?;
        self.params()?;
        let finite_nonneg = |key: &str, v: f64| {
            if v.is_finite() && v >= 0.0 {
                Ok(())
            } else {
                Err(Error::key(key, format!("must be finite and >= 0, got {v}")))
            }
        };
        finite_nonneg("epsilon", self.epsilon)?;
        if !(0.0..=1.0).contains(&self.delta) {
            return Err(Error::key("delta", format!("must lie in [0, 1], got {}", self.delta)));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::key("dt", format!("must be > 0, got {}", self.dt)));
        }
        finite_nonneg("t_end", self.t_end)?;
        if self.snapshot_stride == 0 {
            return Err(Error::key("snapshot_stride", "must be >= 1"));
        }
        if self.checkpoint.is_none() && !PRESETS.contains(&self.initial_condition.as_str()) {
            return Err(Error::UnknownPreset {
                name: self.initial_condition.clone(),
                expected: PRESETS.join(", "),
            });
        }
        if !(self.spectrum_decay > 1.0) {
            return Err(Error::key("spectrum_decay", format!("must exceed 1, got {}", self.spectrum_decay)));
        }
        finite_nonneg("velocity_amplitude", self.velocity_amplitude)?;
        finite_nonneg("stress_amplitude", self.stress_amplitude)?;
        if self.eta == 0.0 && self.stress_amplitude > 0.0 {
            return Err(Error::key(
                "stress_amplitude",
                "must be 0 when eta = 0 (Euler-alpha runs carry no stress)",
            ));
        }
        if !(self.cfl_limit > 0.0) {
            return Err(Error::key("cfl_limit", format!("must be > 0, got {}", self.cfl_limit)));
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.grid.dim, self.grid.n)
    }

    pub fn params(&self) -> Result<PhysicalParams> {
        PhysicalParams::new(self.eta, self.lambda, self.alpha)
    }

    /// Number of steps needed to reach `t_end`.
    pub fn step_count(&self) -> usize {
        (self.t_end / self.dt).round() as usize
    }
}
