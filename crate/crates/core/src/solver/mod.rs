//! Time integration of the ε,δ-regularized Maxwell-α / Euler-α system.
//!
//! The momentum equation is advanced in the filtered variable
//! `v = Δ_α u`. The stiff diagonal parts (`ε(1+|k|²)³` on velocity,
//! `δ/λ + ε(1+|k|²)²` on stress) are absorbed into an integrating factor and
//! the remaining terms are integrated with Heun's method.

mod config;
mod initial;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

pub use config::{GridConfig, SimConfig};
pub use initial::{initial_condition, initial_state, PRESETS};

use crate::error::{Error, Result};
use crate::fields::{energy, velocity_weight, PhysicalParams, StressField, VelocityField};
use crate::kernels::{self, Coeffs};
use crate::spectral::{ops, Grid, Spectral};

#[derive(Clone, Debug, PartialEq)]
pub struct SolverState {
    pub t: f64,
    pub u: VelocityField,
    pub sigma: StressField,
    pub step_count: u64,
}

/// Non-finite values appeared during a step.
#[derive(Clone, Debug)]
pub struct Blowup {
    /// Time the failing step started from.
    pub t: f64,
    pub step: u64,
    /// Wavevector of the first non-finite coefficient.
    pub mode: [i64; 3],
    pub last_good: SolverState,
}

impl fmt::Display for Blowup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dim = self.last_good.u.grid().dim();
        write!(
            f,
            "integration blew up in step {} from t = {}: first non-finite mode k = {:?}",
            self.step,
            self.t,
            &self.mode[..dim]
        )
    }
}

impl std::error::Error for Blowup {}

#[derive(Clone, Debug, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub u: VelocityField,
    pub sigma: StressField,
    pub energy: f64,
}

/// Per-step energy bookkeeping.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepRecord {
    pub t: f64,
    pub energy: f64,
    /// Instantaneous `dE/dt` predicted by the energy law.
    pub dissipation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub config: SimConfig,
    pub snapshots: Vec<Snapshot>,
    /// One entry per time level, including the initial one.
    pub steps: Vec<StepRecord>,
}

impl Trajectory {
    pub fn grid(&self) -> Grid {
        self.snapshots[0].u.grid()
    }

    pub fn times(&self) -> Vec<f64> {
        self.snapshots.iter().map(|s| s.t).collect()
    }

    pub fn initial_energy(&self) -> f64 {
        self.snapshots[0].energy
    }

    pub fn last(&self) -> &Snapshot {
        self.snapshots.last().expect("trajectory is never empty")
    }
}

/// Right-hand side of the energy law,
/// `−2wε‖u‖₃² − (2δ/λ)‖σ‖² − 2ε‖σ‖₂²` with `w` the velocity weight of the
/// energy (`2μ`, or 1 in Euler-α mode).
pub fn energy_rate(u: &VelocityField, sigma: &StressField, params: &PhysicalParams, epsilon: f64, delta: f64) -> f64 {
    -2.0 * velocity_weight(params) * epsilon * u.norm(3.0).powi(2)
        - 2.0 * delta / params.lambda * sigma.norm_sq(0.0)
        - 2.0 * epsilon * sigma.norm_sq(2.0)
}

/// Precomputed integrating factors for one configuration.
pub struct Stepper {
    ctx: Arc<Spectral>,
    params: PhysicalParams,
    epsilon: f64,
    delta: f64,
    dt: f64,
    cfl_limit: f64,
    phi_v: Vec<f64>,
    phi_s: Vec<f64>,
}

impl Stepper {
    pub fn new(config: &SimConfig) -> Result<Self> {
        config.validate()?;
        let grid = config.grid()?;
        let ctx = grid.spectral();
        let params = config.params()?;
        let (eps, delta, dt) = (config.epsilon, config.delta, config.dt);
        let a2 = params.alpha * params.alpha;
        let phi_v = ctx
            .k2()
            .iter()
            .map(|&k2| (-eps * (1.0 + k2).powi(3) / (1.0 + a2 * k2) * dt).exp())
            .collect();
        let phi_s = ctx
            .k2()
            .iter()
            .map(|&k2| (-(delta / params.lambda + eps * (1.0 + k2).powi(2)) * dt).exp())
            .collect();
        Ok(Stepper {
            ctx,
            params,
            epsilon: eps,
            delta,
            dt,
            cfl_limit: config.cfl_limit,
            phi_v,
            phi_s,
        })
    }

    pub fn grid(&self) -> Grid {
        self.ctx.grid()
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    fn velocity_from_filtered(&self, v: &[Coeffs]) -> Vec<Coeffs> {
        v.iter()
            .map(|c| {
                let mut c = c.clone();
                ops::helmholtz_in_place(&self.ctx, &mut c, self.params.alpha, true);
                c
            })
            .collect()
    }

    fn forcing(&self, v: &[Coeffs], s: &[Coeffs]) -> (Vec<Coeffs>, Vec<Coeffs>) {
        let u = self.velocity_from_filtered(v);
        (
            kernels::velocity_forcing(&self.ctx, &u, s, self.params.alpha, self.delta),
            kernels::stress_forcing(&self.ctx, &u, s, self.params.mu(), self.delta),
        )
    }

    /// Heun predictor/corrector in integrating-factor form:
    /// `y* = Φ(y + dt N(y))`, `y⁺ = Φy + dt/2 (Φ N(y) + N(y*))`.
    fn advance(&self, y: &[Coeffs], n0: &[Coeffs], n1: Option<&[Coeffs]>, phi: &[f64]) -> Vec<Coeffs> {
        let dt = self.dt;
        y.iter()
            .zip(n0)
            .enumerate()
            .map(|(c, (yc, nc))| {
                (0..yc.len())
                    .map(|p| match n1 {
                        None => phi[p] * (yc[p] + dt * nc[p]),
                        Some(n1) => phi[p] * yc[p] + 0.5 * dt * (phi[p] * nc[p] + n1[c][p]),
                    })
                    .collect()
            })
            .collect()
    }

    pub fn step(&self, state: &SolverState) -> Result<SolverState> {
        let grid = self.grid();
        if state.u.grid() != grid || state.sigma.grid() != grid {
            return Err(Error::GridMismatch("state does not live on the configured grid".into()));
        }
        let cfl = self.dt * state.u.max_speed() * grid.n() as f64;
        if cfl > self.cfl_limit {
            return Err(Error::Cfl {
                t: state.t,
                value: cfl,
                limit: self.cfl_limit,
            });
        }

        let v0: Vec<Coeffs> = state
            .u
            .coeffs()
            .into_iter()
            .map(|mut c| {
                ops::helmholtz_in_place(&self.ctx, &mut c, self.params.alpha, false);
                c
            })
            .collect();
        let s0 = state.sigma.coeffs();

        let (nv0, ns0) = self.forcing(&v0, &s0);
        let v_pred = self.advance(&v0, &nv0, None, &self.phi_v);
        let s_pred = self.advance(&s0, &ns0, None, &self.phi_s);
        let (nv1, ns1) = self.forcing(&v_pred, &s_pred);
        let v1 = self.advance(&v0, &nv0, Some(&nv1), &self.phi_v);
        let s1 = self.advance(&s0, &ns0, Some(&ns1), &self.phi_s);

        let mut u1 = self.velocity_from_filtered(&v1);
        ops::leray_in_place(&self.ctx, &mut u1);
        for c in u1.iter_mut() {
            ops::remove_mean(c);
        }

        if let Some(idx) = first_non_finite(&u1).or_else(|| first_non_finite(&s1)) {
            return Err(Error::Blowup(Box::new(Blowup {
                t: state.t,
                step: state.step_count + 1,
                mode: grid.mode(idx),
                last_good: state.clone(),
            })));
        }

        Ok(SolverState {
            t: state.t + self.dt,
            u: VelocityField::from_coeffs(grid, u1),
            sigma: StressField::from_coeffs(grid, s1),
            step_count: state.step_count + 1,
        })
    }

    fn rate(&self, state: &SolverState) -> f64 {
        energy_rate(&state.u, &state.sigma, &self.params, self.epsilon, self.delta)
    }
}

fn first_non_finite(arrays: &[Coeffs]) -> Option<usize> {
    arrays
        .iter()
        .filter_map(|a| a.iter().position(|z: &Complex64| !z.re.is_finite() || !z.im.is_finite()))
        .min()
}

/// Advances one step of length `config.dt`.
pub fn imex_step(state: &SolverState, config: &SimConfig) -> Result<SolverState> {
    Stepper::new(config)?.step(state)
}

/// Integrates from the configured initial condition to `t_end`.
pub fn run(config: &SimConfig) -> Result<Trajectory> {
    let state = initial_state(config)?;
    run_from(config, state)
}

/// Integrates `config.step_count()` steps starting from `state`.
pub fn run_from(config: &SimConfig, mut state: SolverState) -> Result<Trajectory> {
    let stepper = Stepper::new(config)?;
    let params = config.params()?;
    let snap = |s: &SolverState| -> Result<Snapshot> {
        Ok(Snapshot {
            t: s.t,
            u: s.u.clone(),
            sigma: s.sigma.clone(),
            energy: energy(&s.u, &s.sigma, &params)?,
        })
    };
    let t0 = state.t;
    let first = snap(&state)?;
    let mut steps = vec![StepRecord {
        t: state.t,
        energy: first.energy,
        dissipation: stepper.rate(&state),
    }];
    let mut snapshots = vec![first];
    let total = config.step_count();
    for k in 1..=total {
        let mut next = stepper.step(&state)?;
        // avoid drift from repeated addition
        next.t = t0 + k as f64 * config.dt;
        let e = energy(&next.u, &next.sigma, &params)?;
        if !e.is_finite() {
            return Err(Error::Blowup(Box::new(Blowup {
                t: state.t,
                step: next.step_count,
                mode: [0; 3],
                last_good: state,
            })));
        }
        steps.push(StepRecord {
            t: next.t,
            energy: e,
            dissipation: stepper.rate(&next),
        });
        if k % config.snapshot_stride == 0 || k == total {
            snapshots.push(snap(&next)?);
        }
        state = next;
    }
    Ok(Trajectory {
        config: config.clone(),
        snapshots,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::ScalarField;

    fn base(n: usize) -> SimConfig {
        let mut c = SimConfig::new(n, 1.0, 1.0, 1.0, 1e-3, 0.01);
        c.epsilon = 1e-3;
        c
    }

    #[test]
    fn zero_state_is_fixed_point() {
        let mut c = base(16);
        c.initial_condition = "zero".into();
        let s0 = initial_state(&c).unwrap();
        let s1 = imex_step(&s0, &c).unwrap();
        assert_eq!(s1.u.norm(0.0), 0.0);
        assert_eq!(s1.sigma.norm_sq(0.0), 0.0);
        assert!((s1.t - c.dt).abs() < 1e-15);
    }

    #[test]
    fn t_end_zero_gives_initial_snapshot() {
        let mut c = base(16);
        c.t_end = 0.0;
        let tr = run(&c).unwrap();
        assert_eq!(tr.snapshots.len(), 1);
        assert_eq!(tr.snapshots[0].u, initial_state(&c).unwrap().u);
    }

    #[test]
    fn steady_shear_in_euler_alpha() {
        let mut c = SimConfig::new(32, 1.0, 0.0, 1.0, 1e-2, 0.5);
        c.initial_condition = "shear".into();
        let s0 = initial_state(&c).unwrap();
        let stepper = Stepper::new(&c).unwrap();
        let mut s = s0.clone();
        for _ in 0..10 {
            let next = stepper.step(&s).unwrap();
            assert!(next.u.sub(&s.u).unwrap().norm(0.0) <= c.dt.powi(3) * s0.u.norm(0.0));
            s = next;
        }
    }

    #[test]
    fn linear_decay_matches_closed_form() {
        let mut c = base(16);
        c.delta = 0.0;
        c.scale_initial_data = false;
        c.stress_amplitude = 0.5;
        c.epsilon = 1e-2;
        let s0 = initial_state(&c).unwrap();
        let stepper = Stepper::new(&c).unwrap();
        let s1 = stepper.step(&s0).unwrap();
        let ctx = s0.u.grid().spectral();
        let u0 = s0.u.coeffs();
        let u1 = s1.u.coeffs();
        for p in 0..u0[0].len() {
            let k2 = ctx.k2()[p];
            let f = (-c.epsilon * (1.0 + k2).powi(3) * c.dt / (1.0 + k2)).exp();
            assert!((u1[0][p] - f * u0[0][p]).norm() <= 1e-12 * (1.0 + u0[0][p].norm()));
        }
    }

    #[test]
    fn energy_nonincreasing_short_run() {
        let mut c = base(32);
        c.stress_amplitude = 0.3;
        c.t_end = 0.05;
        let tr = run(&c).unwrap();
        let e0 = tr.initial_energy();
        for w in tr.steps.windows(2) {
            assert!(w[1].energy <= w[0].energy + 1e-8 * e0);
        }
        for s in &tr.snapshots {
            assert!(s.u.divergence_norm() <= 1e-10 * s.u.norm(1.0));
        }
    }

    #[test]
    fn cfl_violation_is_an_error() {
        let mut c = base(32);
        c.velocity_amplitude = 100.0;
        c.dt = 1e-2;
        assert!(matches!(run(&c), Err(Error::Cfl { .. })));
    }

    #[test]
    fn blowup_reports_last_good_state() {
        let g = Grid::new(2, 16).unwrap();
        let c = base(16);
        let mut u = vec![0.0; g.len()];
        u[3] = f64::NAN;
        let bad = SolverState {
            t: 0.0,
            u: VelocityField::from_coeffs(g, vec![ScalarField::from_real(g, vec![0.0; g.len()]).unwrap().coeffs().into_owned(); 2]),
            sigma: StressField::from_coeffs(g, vec![u.iter().map(|&x| Complex64::new(x, 0.0)).collect(), vec![Complex64::default(); g.len()], vec![Complex64::default(); g.len()]]),
            step_count: 7,
        };
        match imex_step(&bad, &c) {
            Err(Error::Blowup(b)) => {
                assert_eq!(b.step, 8);
                assert_eq!(b.last_good.step_count, 7);
            }
            other => panic!("expected blowup, got {other:?}"),
        }
    }
}
