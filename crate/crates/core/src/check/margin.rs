use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alpha::{e1_residual, e2_residual, gamma_weight, TestPair};
use crate::error::{Error, Result};
use crate::fields::{velocity_weight, PhysicalParams};
use crate::solver::{run, SimConfig, Trajectory};

use super::gronwall::{bound_from, cumulative_trapezoid};

/// Relative tolerance used when none is given.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;
/// Floor on the energy scale the tolerance multiplies.
pub const TOLERANCE_FLOOR: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckMode {
    Maxwell,
    EulerAlpha,
}

impl CheckMode {
    pub fn for_params(params: &PhysicalParams) -> Self {
        if params.is_euler_alpha() {
            CheckMode::EulerAlpha
        } else {
            CheckMode::Maxwell
        }
    }
}

/// Per-snapshot sides of the dissipative inequality.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DissipativeReport {
    pub mode: CheckMode,
    pub t: Vec<f64>,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    pub margin: Vec<f64>,
    /// `∫₀ᵗ Γ` at every sample.
    pub gamma_integral: Vec<f64>,
    pub gamma: f64,
    pub tolerance: f64,
    pub min_margin: f64,
    pub pass: bool,
    pub verdict: String,
}

impl DissipativeReport {
    fn assemble(mode: CheckMode, t: Vec<f64>, lhs: Vec<f64>, rhs: Vec<f64>, g: Vec<f64>, gamma: f64, tolerance: f64) -> Self {
        let margin: Vec<f64> = rhs.iter().zip(&lhs).map(|(r, l)| r - l).collect();
        let min_margin = min_or_nan(&margin);
        let pass = min_margin >= -tolerance;
        DissipativeReport {
            mode,
            t,
            lhs,
            rhs,
            margin,
            gamma_integral: g,
            gamma,
            tolerance,
            min_margin,
            pass,
            verdict: if pass { "no violation found" } else { "violation found" }.to_string(),
        }
    }
}

/// Minimum that propagates NaN, so a non-finite bound can never pass.
pub(crate) fn min_or_nan(values: &[f64]) -> f64 {
    values
        .iter()
        .copied()
        .fold(f64::INFINITY, |m, x| if m.is_nan() || x.is_nan() { f64::NAN } else { m.min(x) })
}

fn absolute_tolerance(traj: &Trajectory, relative: Option<f64>) -> f64 {
    relative.unwrap_or(DEFAULT_TOLERANCE) * traj.initial_energy().max(TOLERANCE_FLOOR)
}

/// Evaluates both sides of the dissipative inequality at every snapshot of
/// `traj` against the test pair. `tolerance` is relative to `max(E(0), 1e-12)`.
pub fn inequality_margin(
    traj: &Trajectory,
    test: &TestPair,
    params: &PhysicalParams,
    gamma_const: f64,
    mode: CheckMode,
    tolerance: Option<f64>,
) -> Result<DissipativeReport> {
    if traj.grid() != test.grid() {
        return Err(Error::GridMismatch("trajectory and test pair live on different grids".into()));
    }
    match mode {
        CheckMode::Maxwell if params.mu() <= 0.0 => {
            return Err(Error::Contract("Maxwell check requires mu = eta/lambda > 0".into()));
        }
        CheckMode::EulerAlpha if !params.is_euler_alpha() => {
            return Err(Error::Contract("Euler-alpha check requires eta = 0".into()));
        }
        _ => {}
    }
    let w = velocity_weight(params);
    let alpha = params.alpha;

    let samples = traj
        .snapshots
        .par_iter()
        .map(|snap| -> Result<(f64, f64, f64)> {
            let t = snap.t;
            let du = snap.u.sub(&test.zeta(t))?;
            let ds = snap.sigma.sub(&test.theta(t))?;
            let e1 = e1_residual(test, t, params, 1.0)?;
            let ctx = du.grid().spectral();
            let pair_u: f64 = e1
                .coeffs()
                .iter()
                .zip(du.coeffs().iter())
                .map(|(a, b)| crate::spectral::ops::inner(&ctx, a, b, 0.0))
                .sum();
            let (lhs, forcing) = match mode {
                CheckMode::Maxwell => {
                    let e2 = e2_residual(test, t, params, 1.0)?;
                    (
                        w * du.v_norm_sq(alpha) + ds.norm_sq(0.0),
                        2.0 * w * pair_u + 2.0 * e2.inner(&ds, 0.0),
                    )
                }
                CheckMode::EulerAlpha => (du.v_norm_sq(alpha), 2.0 * pair_u),
            };
            let weight = gamma_weight(test, t, params, gamma_const)?;
            Ok((lhs, forcing, weight))
        })
        .collect::<Result<Vec<_>>>()?;

    let times = traj.times();
    let lhs: Vec<f64> = samples.iter().map(|s| s.0).collect();
    let m: Vec<f64> = samples.iter().map(|s| s.1).collect();
    let l: Vec<f64> = samples.iter().map(|s| s.2).collect();
    let rhs = bound_from(&times, lhs[0], &l, &m);
    let g = cumulative_trapezoid(&times, &l);
    Ok(DissipativeReport::assemble(
        mode,
        times,
        lhs,
        rhs,
        g,
        gamma_const,
        absolute_tolerance(traj, tolerance),
    ))
}

/// The dissipative estimate `E(t) ≤ E(0)`: the inequality with the zero
/// test pair, evaluated directly from the recorded energies.
pub fn dissipative_estimate(traj: &Trajectory, params: &PhysicalParams, gamma_const: f64, tolerance: Option<f64>) -> Result<DissipativeReport> {
    let mode = CheckMode::for_params(params);
    if mode == CheckMode::Maxwell && params.mu() <= 0.0 {
        return Err(Error::Contract("Maxwell check requires mu > 0".into()));
    }
    let times = traj.times();
    let lhs: Vec<f64> = traj.snapshots.iter().map(|s| s.energy).collect();
    let zeros = vec![0.0; times.len()];
    let rhs = bound_from(&times, lhs[0], &zeros, &zeros);
    Ok(DissipativeReport::assemble(
        mode,
        times,
        lhs,
        rhs,
        zeros,
        gamma_const,
        absolute_tolerance(traj, tolerance),
    ))
}

/// Settings for [`coincidence_check`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoincidenceOptions {
    /// Reference run uses `dt / refine`.
    pub refine: usize,
    /// Chebyshev degree of the fitted test pair.
    pub degree: usize,
}

impl Default for CoincidenceOptions {
    fn default() -> Self {
        CoincidenceOptions { refine: 8, degree: 12 }
    }
}

/// Fits a test pair to a refined reference run of `config` (same initial
/// data, `dt / refine`), so the pair is a close stand-in for the strong
/// solution.
pub fn reference_test_pair(config: &SimConfig, options: CoincidenceOptions) -> Result<TestPair> {
    let mut fine = config.clone();
    fine.dt = config.dt / options.refine as f64;
    fine.snapshot_stride = options.refine;
    let reference = run(&fine)?;
    let times = reference.times();
    let u: Vec<_> = reference.snapshots.iter().map(|s| s.u.clone()).collect();
    let s: Vec<_> = reference.snapshots.iter().map(|s| s.sigma.clone()).collect();
    TestPair::fit(&times, &u, &s, options.degree)
}

/// Runs `config` and checks it against a test pair fitted to a refined run
/// of itself. For a smooth solution this is the coincidence situation: both
/// sides of the inequality should be close to zero.
pub fn coincidence_check(
    config: &SimConfig,
    gamma_const: f64,
    options: CoincidenceOptions,
    tolerance: Option<f64>,
) -> Result<(Trajectory, DissipativeReport)> {
    let pair = reference_test_pair(config, options)?;
    let traj = run(config)?;
    let params = config.params()?;
    let report = inequality_margin(&traj, &pair, &params, gamma_const, CheckMode::for_params(&params), tolerance)?;
    Ok((traj, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn maxwell_run() -> Trajectory {
        let mut c = SimConfig::new(16, 1.0, 1.0, 1.0, 2e-3, 0.05);
        c.epsilon = 1e-3;
        c.stress_amplitude = 0.3;
        run(&c).unwrap()
    }

    #[test]
    fn zero_pair_matches_dissipative_estimate() {
        let tr = maxwell_run();
        let p = tr.config.params().unwrap();
        let a = inequality_margin(&tr, &TestPair::zero(tr.grid()), &p, 3.0, CheckMode::Maxwell, None).unwrap();
        let b = dissipative_estimate(&tr, &p, 3.0, None).unwrap();
        for i in 0..a.t.len() {
            assert!((a.lhs[i] - b.lhs[i]).abs() <= 1e-13 * b.lhs[0]);
            assert_eq!(a.rhs[i], b.rhs[0]);
        }
        assert!(a.pass && b.pass);
        assert_eq!(a.margin[0], 0.0);
    }

    #[test]
    fn corrupted_trajectory_is_flagged() {
        let mut c = SimConfig::new(16, 1.0, 1.0, 1.0, 2e-3, 0.1);
        c.epsilon = 1e-3;
        c.velocity_amplitude = 0.01;
        let opts = CoincidenceOptions { refine: 4, degree: 8 };
        let pair = reference_test_pair(&c, opts).unwrap();
        let mut tr = run(&c).unwrap();
        let p = c.params().unwrap();
        let clean = inequality_margin(&tr, &pair, &p, 20.0, CheckMode::Maxwell, None).unwrap();
        assert!(clean.pass);
        for s in tr.snapshots.iter_mut().skip(1) {
            s.u = s.u.scaled(1.2);
        }
        let bad = inequality_margin(&tr, &pair, &p, 20.0, CheckMode::Maxwell, None).unwrap();
        assert!(!bad.pass);
        assert_eq!(bad.verdict, "violation found");
    }

    #[test]
    fn nan_margin_fails() {
        assert!(min_or_nan(&[1.0, f64::NAN, -1.0]).is_nan());
        let r = DissipativeReport::assemble(CheckMode::Maxwell, vec![0.0, 1.0], vec![0.0, 0.0], vec![0.0, f64::NAN], vec![0.0; 2], 1.0, 1e-6);
        assert!(!r.pass);
        assert_eq!(r.verdict, "violation found");
    }

    #[test]
    fn maxwell_mode_rejects_zero_mu() {
        let mut c = SimConfig::new(16, 1.0, 0.0, 1.0, 2e-3, 0.004);
        c.initial_condition = "random-spectrum".into();
        let tr = run(&c).unwrap();
        let p = c.params().unwrap();
        assert!(inequality_margin(&tr, &TestPair::zero(tr.grid()), &p, 1.0, CheckMode::Maxwell, None).is_err());
        assert!(inequality_margin(&tr, &TestPair::zero(tr.grid()), &p, 1.0, CheckMode::EulerAlpha, None).is_ok());
    }

    #[test]
    fn t0_degenerates_to_initial_comparison() {
        let tr = maxwell_run();
        let p = tr.config.params().unwrap();
        let z = crate::fields::random_divfree(tr.grid(), 9, 2.0).unwrap().scaled(0.1);
        let pair = TestPair::steady(z, crate::fields::StressField::zeros(tr.grid())).unwrap();
        let r = inequality_margin(&tr, &pair, &p, 1.0, CheckMode::Maxwell, None).unwrap();
        assert_eq!(r.lhs[0], r.rhs[0]);
    }
}
