use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solver::{run, SimConfig};

/// Relative slack allowed on `sup_t E(t) ≤ E(0)`.
pub const ENERGY_SLACK: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub alpha: f64,
    pub initial_energy: f64,
    pub sup_energy: f64,
    /// `(t, ‖u(t)‖₀)` at every snapshot.
    pub l2_norm: Vec<(f64, f64)>,
    /// `‖u‖₀²` cap implied by the energy bound, `E(0)/w`.
    pub l2_cap: f64,
    pub bounded: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub entries: Vec<SweepEntry>,
    pub pass: bool,
}

fn one(base: &SimConfig, alpha: f64) -> SweepEntry {
    let mut config = base.clone();
    config.alpha = alpha;
    let failed = |e: Error| SweepEntry {
        alpha,
        initial_energy: f64::NAN,
        sup_energy: f64::NAN,
        l2_norm: Vec::new(),
        l2_cap: f64::NAN,
        bounded: false,
        error: Some(e.to_string()),
    };
    let traj = match run(&config) {
        Ok(t) => t,
        Err(e) => return failed(e),
    };
    let params = match config.params() {
        Ok(p) => p,
        Err(e) => return failed(e),
    };
    let e0 = traj.initial_energy();
    let sup = traj.steps.iter().map(|s| s.energy).fold(f64::NEG_INFINITY, f64::max);
    let w = crate::fields::velocity_weight(&params);
    SweepEntry {
        alpha,
        initial_energy: e0,
        sup_energy: sup,
        l2_norm: traj.snapshots.iter().map(|s| (s.t, s.u.norm(0.0))).collect(),
        l2_cap: e0 / w,
        bounded: sup <= e0 * (1.0 + ENERGY_SLACK),
        error: None,
    }
}

/// Runs the base configuration once per α on at most `workers` threads.
/// Failed runs are recorded and do not stop the sweep.
pub fn alpha_sweep(base: &SimConfig, alphas: &[f64], workers: usize) -> Result<SweepReport> {
    if alphas.is_empty() {
        return Err(Error::Contract("alpha sweep needs at least one value".into()));
    }
    if alphas.iter().any(|&a| !(a > 0.0)) {
        return Err(Error::key("alphas", "every alpha must be positive"));
    }
    if alphas.windows(2).any(|w| !(w[1] < w[0])) {
        return Err(Error::key("alphas", "values must be strictly decreasing"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    let entries: Vec<SweepEntry> = pool.install(|| alphas.par_iter().map(|&a| one(base, a)).collect());
    let pass = entries.iter().all(|e| e.bounded);
    Ok(SweepReport { entries, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_alpha_matches_run() {
        let mut c = SimConfig::new(16, 1.0, 1.0, 1.0, 2e-3, 0.02);
        c.epsilon = 1e-3;
        let r = alpha_sweep(&c, &[1.0], 1).unwrap();
        let t = run(&c).unwrap();
        assert_eq!(r.entries[0].initial_energy, t.initial_energy());
        assert!(r.pass);
        assert!(alpha_sweep(&c, &[0.5, 1.0], 1).is_err());
    }
}
