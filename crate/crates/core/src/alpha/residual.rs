use crate::error::{Error, Result};
use crate::fields::{PhysicalParams, StressField, VelocityField};
use crate::kernels;
use crate::spectral::ops;

use super::TestPair;

fn check_delta(delta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::Contract(format!("delta must lie in [0, 1], got {delta}")));
    }
    Ok(())
}

/// Momentum residual
/// `E₁ = −∂Δ_αζ/∂t − δP[Σ ζ_i ∂Δ_αζ/∂x_i] − δP[Σ (Δ_αζ)_i ∇ζ_i] + δP div θ`,
/// returned Leray-projected.
pub fn e1_residual(test: &TestPair, t: f64, params: &PhysicalParams, delta: f64) -> Result<VelocityField> {
    check_delta(delta)?;
    let grid = test.grid();
    let ctx = grid.spectral();
    let zeta = test.zeta(t).coeffs();
    let theta = test.theta(t).coeffs();
    let mut out = kernels::velocity_forcing(&ctx, &zeta, &theta, params.alpha, delta);
    for (o, d) in out.iter_mut().zip(test.zeta_dt(t).coeffs()) {
        let mut d = d;
        ops::helmholtz_in_place(&ctx, &mut d, params.alpha, false);
        for (a, b) in o.iter_mut().zip(d) {
            *a -= b;
        }
    }
    Ok(VelocityField::from_coeffs(grid, out))
}

/// Stress residual
/// `E₂ = −δθ/λ − ∂θ/∂t − δΣ ζ_i ∂θ/∂x_i − δ(θW(ζ) − W(ζ)θ) + 2δμ E(ζ)`.
pub fn e2_residual(test: &TestPair, t: f64, params: &PhysicalParams, delta: f64) -> Result<StressField> {
    check_delta(delta)?;
    let grid = test.grid();
    let ctx = grid.spectral();
    let zeta = test.zeta(t).coeffs();
    let theta = test.theta(t).coeffs();
    let mut out = kernels::stress_forcing(&ctx, &zeta, &theta, params.mu(), delta);
    let relax = delta / params.lambda;
    for ((o, th), d) in out.iter_mut().zip(&theta).zip(test.theta_dt(t).coeffs()) {
        for ((a, b), c) in o.iter_mut().zip(th).zip(d) {
            *a -= relax * b + c;
        }
    }
    Ok(StressField::from_coeffs(grid, out))
}

/// Gronwall weight
/// `Γ = γ max(1, 1/α²)(‖Δ_αζ‖₁ + ‖ζ‖₁ + α²‖ζ‖₃ + (1+μ)‖θ‖₂/μ)`.
///
/// With `η = 0` the stress term is dropped; a nonzero θ is then rejected.
pub fn gamma_weight(test: &TestPair, t: f64, params: &PhysicalParams, gamma_const: f64) -> Result<f64> {
    if !(gamma_const > 0.0) {
        return Err(Error::Contract(format!("gamma must be positive, got {gamma_const}")));
    }
    let grid = test.grid();
    let ctx = grid.spectral();
    let alpha = params.alpha;
    let zeta = test.zeta(t);
    let theta = test.theta(t);
    let theta_norm = theta.norm_sq(2.0).sqrt();

    let helm_norm = zeta
        .coeffs()
        .into_iter()
        .map(|mut c| {
            ops::helmholtz_in_place(&ctx, &mut c, alpha, false);
            ops::norm_sq(&ctx, &c, 1.0)
        })
        .sum::<f64>()
        .sqrt();
    let mut sum = helm_norm + zeta.norm(1.0) + alpha * alpha * zeta.norm(3.0);

    let mu = params.mu();
    if mu > 0.0 {
        sum += (1.0 + mu) * theta_norm / mu;
    } else if theta_norm > 0.0 {
        return Err(Error::Contract(
            "stress test function must vanish when eta = 0 (Euler-alpha mode)".into(),
        ));
    }
    Ok(gamma_const * (1.0f64).max(1.0 / (alpha * alpha)) * sum)
}
