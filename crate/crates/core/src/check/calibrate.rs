use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::random_scalar_coeffs;
use crate::kernels;
use crate::spectral::{ops, Grid};

pub const DEFAULT_SAFETY: f64 = 2.0;
pub const MIN_SAMPLES: usize = 50;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaCalibration {
    /// Largest observed `‖uv‖ / (‖u‖₂ ‖v‖)`.
    pub c_h2_l2: f64,
    /// Largest observed `‖uv‖ / (‖u‖₁ ‖v‖₁)`.
    pub c_h1_h1: f64,
    pub safety: f64,
    pub samples: usize,
    pub seed: u64,
    pub gamma: f64,
}

/// Combines the two product constants the way the energy estimate for the
/// difference `(u − ζ, σ − θ)` consumes them, summing over components in
/// dimension `dim`.
pub fn combine_constants(dim: usize, c1: f64, c2: f64) -> f64 {
    let n = dim as f64;
    let cmax = c1.max(c2);
    let velocity = 2.0 * (2.0 * n * n * c2).max(3.0 * n.powi(3) * cmax);
    let stress = (2.0 * n * c2 + 4.0 * n * c1) / 2.0;
    velocity.max(stress)
}

fn ratios(grid: Grid, a: &[num_complex::Complex64], b: &[num_complex::Complex64]) -> (f64, f64) {
    let ctx = grid.spectral();
    let ar = kernels::real(&ctx, a);
    let br = kernels::real(&ctx, b);
    // both factors are band-limited to N/3, so the grid product is exact
    let prod = (ar.iter().zip(&br).map(|(x, y)| (x * y).powi(2)).sum::<f64>() * grid.cell_volume()).sqrt();
    let r1 = prod / (ops::norm_sq(&ctx, a, 2.0) * ops::norm_sq(&ctx, b, 0.0)).sqrt();
    let r2 = prod / (ops::norm_sq(&ctx, a, 1.0) * ops::norm_sq(&ctx, b, 1.0)).sqrt();
    (r1, r2)
}

/// Band-limited field `Σ_k (1+|k|²)^{-s} e^{ik·x}`, all phases aligned at
/// the origin. These approach the extremals of the embedding ratios.
fn peaked_coeffs(grid: Grid, s: f64) -> Vec<num_complex::Complex64> {
    let ctx = grid.spectral();
    let scale = grid.len() as f64;
    ctx.k2()
        .iter()
        .zip(ctx.keep())
        .map(|(&k2, &keep)| {
            let v = if keep { scale * (1.0 + k2).powf(-s) } else { 0.0 };
            num_complex::Complex64::new(v, 0.0)
        })
        .collect()
}

const PEAK_EXPONENTS: [f64; 6] = [0.75, 1.0, 1.25, 1.5, 2.0, 3.0];

/// Numerical surrogate for the domain constant γ: maximizes the two product
/// ratios over constant fields, peaked fields and `samples` random pairs, combines them
/// and multiplies by `safety`.
pub fn calibrate_gamma(grid: Grid, samples: usize, seed: u64, safety: f64) -> Result<GammaCalibration> {
    if samples < MIN_SAMPLES {
        return Err(Error::Contract(format!("calibration needs at least {MIN_SAMPLES} samples, got {samples}")));
    }
    if !(safety > 0.0) {
        return Err(Error::Contract(format!("safety factor must be positive, got {safety}")));
    }
    // constants: ‖c₁c₂‖/(‖c₁‖‖c₂‖) = |Ω|^{-1/2}
    let constant = grid.volume().sqrt().recip();
    let (mut c1, mut c2) = (constant, constant);
    for &sa in &PEAK_EXPONENTS {
        for &sb in &PEAK_EXPONENTS {
            let (r1, r2) = ratios(grid, &peaked_coeffs(grid, sa), &peaked_coeffs(grid, sb));
            c1 = c1.max(r1);
            c2 = c2.max(r2);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let da = rng.random_range(1.5..4.0);
        let db = rng.random_range(1.5..4.0);
        let a = random_scalar_coeffs(grid, &mut rng, da);
        let b = random_scalar_coeffs(grid, &mut rng, db);
        let (r1, r2) = ratios(grid, &a, &b);
        let (s1, s2) = ratios(grid, &b, &a);
        c1 = c1.max(r1).max(s1);
        c2 = c2.max(r2).max(s2);
    }
    Ok(GammaCalibration {
        c_h2_l2: c1,
        c_h1_h1: c2,
        safety,
        samples,
        seed,
        gamma: safety * combine_constants(grid.dim(), c1, c2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn constant_field_ratio() {
        let g = Grid::new(2, 16).unwrap();
        let mut a = vec![Complex64::default(); g.len()];
        let mut b = a.clone();
        a[0] = Complex64::new(3.0 * g.len() as f64, 0.0);
        b[0] = Complex64::new(0.5 * g.len() as f64, 0.0);
        let (r1, r2) = ratios(g, &a, &b);
        let expect = 1.0 / std::f64::consts::TAU;
        assert!((r1 - expect).abs() < 1e-14 && (r2 - expect).abs() < 1e-14);
        let cal = calibrate_gamma(g, 50, 1, 1.0).unwrap();
        assert!(cal.gamma >= combine_constants(2, expect, expect));
    }

    #[test]
    fn safety_is_linear() {
        let g = Grid::new(2, 16).unwrap();
        let a = calibrate_gamma(g, 60, 5, 1.0).unwrap();
        let b = calibrate_gamma(g, 60, 5, 2.0).unwrap();
        assert_eq!(b.gamma, 2.0 * a.gamma);
        assert!(calibrate_gamma(g, 10, 5, 1.0).is_err());
    }

    #[test]
    fn stable_across_seeds() {
        let g = Grid::new(2, 32).unwrap();
        let gs: Vec<f64> = (0..3).map(|s| calibrate_gamma(g, 200, s, DEFAULT_SAFETY).unwrap().gamma).collect();
        let (lo, hi) = gs.iter().fold((f64::INFINITY, 0.0f64), |(l, h), &x| (l.min(x), h.max(x)));
        assert!(hi <= 1.2 * lo);
    }
}
