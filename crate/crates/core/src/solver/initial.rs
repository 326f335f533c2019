use crate::error::{Error, Result};
use crate::fields::{random_divfree, random_stress, StressField, VelocityField};
use crate::spectral::{Grid, ScalarField};

use super::{SimConfig, SolverState};

/// Names accepted by [`initial_condition`].
pub const PRESETS: [&str; 4] = ["taylor-green", "shear", "random-spectrum", "zero"];

/// Unit-amplitude preset velocity with zero stress.
pub fn initial_condition(name: &str, grid: Grid, seed: u64, spectrum_decay: f64) -> Result<(VelocityField, StressField)> {
    let dim = grid.dim();
    let u = match name {
        "zero" => VelocityField::zeros(grid),
        "taylor-green" => {
            let third = |x: [f64; 3]| if dim == 3 { x[2].cos() } else { 1.0 };
            let mut comps = vec![
                ScalarField::from_fn(grid, |x| x[0].sin() * x[1].cos() * third(x)),
                ScalarField::from_fn(grid, |x| -x[0].cos() * x[1].sin() * third(x)),
            ];
            if dim == 3 {
                comps.push(ScalarField::zeros(grid));
            }
            VelocityField::new(comps)?
        }
        "shear" => {
            let mut comps = vec![ScalarField::from_fn(grid, |x| x[1].sin())];
            comps.extend((1..dim).map(|_| ScalarField::zeros(grid)));
            VelocityField::new(comps)?
        }
        "random-spectrum" => random_divfree(grid, seed, spectrum_decay)?,
        other => {
            return Err(Error::UnknownPreset {
                name: other.to_string(),
                expected: PRESETS.join(", "),
            })
        }
    };
    Ok((u.to_spectral(), StressField::zeros(grid)))
}

/// Initial solver state for a configuration: preset or checkpoint, the
/// configured amplitudes, and the optional scaling by δ.
pub fn initial_state(config: &SimConfig) -> Result<SolverState> {
    config.validate()?;
    let grid = config.grid()?;
    let (u, sigma, t) = match &config.checkpoint {
        Some(path) => {
            let (header, state) = crate::io::read_checkpoint(path)?;
            if header.grid != grid {
                return Err(Error::GridMismatch(format!(
                    "checkpoint grid {:?} differs from configured {:?}",
                    header.grid, grid
                )));
            }
            (state.u, state.sigma, state.t)
        }
        None => {
            let (u, _) = initial_condition(&config.initial_condition, grid, config.seed, config.spectrum_decay)?;
            let sigma = if config.stress_amplitude > 0.0 {
                random_stress(grid, config.seed, config.spectrum_decay)?.scaled(config.stress_amplitude)
            } else {
                StressField::zeros(grid)
            };
            (u.scaled(config.velocity_amplitude), sigma, 0.0)
        }
    };
    let scale = if config.scale_initial_data { config.delta } else { 1.0 };
    Ok(SolverState {
        t,
        u: u.scaled(scale),
        sigma: sigma.scaled(scale),
        step_count: 0,
    })
}
