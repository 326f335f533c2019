use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alpha::{advect_stress, trilinear_identity_defect};
use crate::error::{Error, Result};
use crate::fields::{corotational_commutator, random_divfree, random_scalar_coeffs, random_stress, vorticity};
use crate::spectral::{ops, Grid};

/// Allowed relative defect of the cancellation identities.
pub const IDENTITY_TOLERANCE: f64 = 1e-10;
/// Allowed relative defect of the Leray and Helmholtz round trips.
pub const ROUNDTRIP_TOLERANCE: f64 = 1e-11;

/// Worst relative defects over all samples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub samples: usize,
    pub seed: u64,
    /// trilinear form over `‖κ‖_∞ ‖Δ_ακ‖ ‖κ‖₁`
    pub trilinear: f64,
    /// `(u·∇σ, σ)` over `‖u‖_∞ ‖σ‖₁ ‖σ‖`
    pub transport: f64,
    /// `(σW − Wσ, σ)` over `n max|W| ‖σ‖²`
    pub commutator: f64,
    /// `‖P(Pf) − Pf‖ / ‖f‖`
    pub leray_idempotence: f64,
    /// `|(Pf, g) − (f, Pg)| / (‖f‖ ‖g‖)`
    pub leray_self_adjoint: f64,
    /// worst of `‖H⁻¹Hf − f‖` and `‖HH⁻¹f − f‖` over `‖f‖`
    pub helmholtz_roundtrip: f64,
    pub identities_pass: bool,
    pub roundtrips_pass: bool,
}

struct Sample {
    trilinear: f64,
    transport: f64,
    commutator: f64,
    idem: f64,
    adjoint: f64,
    helmholtz: f64,
}

fn vec_norm(ctx: &crate::spectral::Spectral, v: &[Vec<Complex64>], s: f64) -> f64 {
    v.iter().map(|c| ops::norm_sq(ctx, c, s)).sum::<f64>().sqrt()
}

fn one(grid: Grid, seed: u64, alpha: f64) -> Result<Sample> {
    let ctx = grid.spectral();
    let decay = 2.0;
    let kappa = random_divfree(grid, seed, decay)?;
    let sigma = random_stress(grid, seed, decay)?;

    let helm: Vec<Vec<Complex64>> = kappa
        .coeffs()
        .into_iter()
        .map(|mut c| {
            ops::helmholtz_in_place(&ctx, &mut c, alpha, false);
            c
        })
        .collect();
    let tri_scale = kappa.max_speed() * vec_norm(&ctx, &helm, 0.0) * kappa.norm(1.0);
    let trilinear = trilinear_identity_defect(&kappa, alpha) / tri_scale;

    let transport_scale = kappa.max_speed() * sigma.norm_sq(1.0).sqrt() * sigma.norm_sq(0.0).sqrt();
    let transport = advect_stress(&kappa, &sigma)?.inner(&sigma, 0.0).abs() / transport_scale;

    let w = vorticity(&kappa);
    let dim = grid.dim();
    let mut wmax: f64 = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            wmax = w.entry_values(i, j).iter().fold(wmax, |m, v| m.max(v.abs()));
        }
    }
    let commutator = corotational_commutator(&sigma, &w)?.inner(&sigma, 0.0).abs() / (dim as f64 * wmax * sigma.norm_sq(0.0));

    // general (not divergence-free) vector fields for the projection
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let f: Vec<Vec<Complex64>> = (0..dim).map(|_| random_scalar_coeffs(grid, &mut rng, 1.5)).collect();
    let g: Vec<Vec<Complex64>> = (0..dim).map(|_| random_scalar_coeffs(grid, &mut rng, 1.5)).collect();
    let mut pf = f.clone();
    ops::leray_in_place(&ctx, &mut pf);
    let mut ppf = pf.clone();
    ops::leray_in_place(&ctx, &mut ppf);
    let diff: Vec<Vec<Complex64>> = ppf
        .iter()
        .zip(&pf)
        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect())
        .collect();
    let idem = vec_norm(&ctx, &diff, 0.0) / vec_norm(&ctx, &f, 0.0);
    let mut pg = g.clone();
    ops::leray_in_place(&ctx, &mut pg);
    let pair = |a: &[Vec<Complex64>], b: &[Vec<Complex64>]| -> f64 { a.iter().zip(b).map(|(x, y)| ops::inner(&ctx, x, y, 0.0)).sum() };
    let adjoint = (pair(&pf, &g) - pair(&f, &pg)).abs() / (vec_norm(&ctx, &f, 0.0) * vec_norm(&ctx, &g, 0.0));

    let mut worst: f64 = 0.0;
    for c in &f {
        for order in [false, true] {
            let mut h = c.clone();
            ops::helmholtz_in_place(&ctx, &mut h, alpha, order);
            ops::helmholtz_in_place(&ctx, &mut h, alpha, !order);
            let d: Vec<Complex64> = h.iter().zip(c).map(|(x, y)| x - y).collect();
            worst = worst.max((ops::norm_sq(&ctx, &d, 0.0) / ops::norm_sq(&ctx, c, 0.0)).sqrt());
        }
    }
    Ok(Sample {
        trilinear,
        transport,
        commutator,
        idem,
        adjoint,
        helmholtz: worst,
    })
}

/// Evaluates the cancellation identities and operator round trips on
/// `samples` seeded random fields.
pub fn identity_suite(grid: Grid, samples: usize, seed: u64, alpha: f64) -> Result<IdentityReport> {
    if samples == 0 {
        return Err(Error::Contract("identity suite needs at least one sample".into()));
    }
    if !(alpha > 0.0) {
        return Err(Error::key("alpha", "must be positive"));
    }
    let all = (0..samples as u64)
        .into_par_iter()
        .map(|i| one(grid, seed.wrapping_add(i), alpha))
        .collect::<Result<Vec<_>>>()?;
    let worst = |f: fn(&Sample) -> f64| all.iter().map(f).fold(0.0, f64::max);
    let trilinear = worst(|s| s.trilinear);
    let transport = worst(|s| s.transport);
    let commutator = worst(|s| s.commutator);
    let leray_idempotence = worst(|s| s.idem);
    let leray_self_adjoint = worst(|s| s.adjoint);
    let helmholtz_roundtrip = worst(|s| s.helmholtz);
    Ok(IdentityReport {
        samples,
        seed,
        trilinear,
        transport,
        commutator,
        leray_idempotence,
        leray_self_adjoint,
        helmholtz_roundtrip,
        identities_pass: trilinear.max(transport).max(commutator) <= IDENTITY_TOLERANCE,
        roundtrips_pass: leray_idempotence.max(leray_self_adjoint).max(helmholtz_roundtrip) <= ROUNDTRIP_TOLERANCE,
    })
}
