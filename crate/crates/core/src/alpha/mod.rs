//! Composite nonlinear operators of the α-model: transport terms, the
//! residuals `E₁`, `E₂` and the Gronwall weight `Γ`.

mod residual;
mod testpair;

pub use residual::{e1_residual, e2_residual, gamma_weight};
pub use testpair::{TestPair, TimeBasis};

use crate::error::{Error, Result};
use crate::fields::{StressField, VelocityField};
use crate::kernels;
use crate::spectral::{ops, ScalarField};

fn same_grid(a: crate::Grid, b: crate::Grid) -> Result<()> {
    if a != b {
        return Err(Error::GridMismatch(format!("{a:?} vs {b:?}")));
    }
    Ok(())
}

/// Transport of a scalar, `Σ_i u_i ∂q/∂x_i`, dealiased.
pub fn advect(u: &VelocityField, q: &ScalarField) -> Result<ScalarField> {
    same_grid(u.grid(), q.grid())?;
    let ctx = u.grid().spectral();
    let ur: Vec<Vec<f64>> = u.components().iter().map(|c| c.values().into_owned()).collect();
    Ok(ScalarField::spectral_unchecked(
        u.grid(),
        kernels::advect(&ctx, &ur, &q.coeffs()),
    ))
}

/// Componentwise transport of a stress field.
pub fn advect_stress(u: &VelocityField, sigma: &StressField) -> Result<StressField> {
    same_grid(u.grid(), sigma.grid())?;
    let ctx = u.grid().spectral();
    let ur: Vec<Vec<f64>> = u.components().iter().map(|c| c.values().into_owned()).collect();
    let c = sigma
        .entries()
        .iter()
        .map(|e| kernels::advect(&ctx, &ur, &e.coeffs()))
        .collect();
    Ok(StressField::from_coeffs(u.grid(), c))
}

/// `Σ_i v_i ∇u_i`, dealiased. `v` need not be divergence-free.
pub fn grad_transpose(v: &[ScalarField], u: &VelocityField) -> Result<Vec<ScalarField>> {
    if v.len() != u.grid().dim() {
        return Err(Error::Contract(format!(
            "expected {} components, got {}",
            u.grid().dim(),
            v.len()
        )));
    }
    for c in v {
        same_grid(c.grid(), u.grid())?;
    }
    let ctx = u.grid().spectral();
    let vr: Vec<Vec<f64>> = v.iter().map(|c| c.values().into_owned()).collect();
    Ok(kernels::grad_transpose(&ctx, &vr, &u.coeffs())
        .into_iter()
        .map(|c| ScalarField::spectral_unchecked(u.grid(), c))
        .collect())
}

/// `|−Σ_i (κ_i Δ_ακ, ∂κ/∂x_i) + Σ_i ((Δ_ακ)_i ∇κ_i, κ)|` with dealiased
/// products. Vanishes identically for divergence-free `κ`.
pub fn trilinear_identity_defect(kappa: &VelocityField, alpha: f64) -> f64 {
    let grid = kappa.grid();
    let ctx = grid.spectral();
    let k = kappa.coeffs();
    let v: Vec<Vec<_>> = k
        .iter()
        .map(|c| {
            let mut c = c.clone();
            ops::helmholtz_in_place(&ctx, &mut c, alpha, false);
            c
        })
        .collect();
    let kr: Vec<Vec<f64>> = k.iter().map(|c| kernels::real(&ctx, c)).collect();
    let vr: Vec<Vec<f64>> = v.iter().map(|c| kernels::real(&ctx, c)).collect();

    // Σ_i (κ_i v, ∂κ/∂x_i) = Σ_j (v_j, κ·∇κ_j)
    let first: f64 = (0..grid.dim())
        .map(|j| ops::inner(&ctx, &v[j], &kernels::advect(&ctx, &kr, &k[j]), 0.0))
        .sum();
    let gt = kernels::grad_transpose(&ctx, &vr, &k);
    let second: f64 = (0..grid.dim()).map(|j| ops::inner(&ctx, &gt[j], &k[j], 0.0)).sum();
    (second - first).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{random_divfree, random_stress};
    use crate::spectral::{leray_project, Grid};

    fn shear(g: Grid) -> VelocityField {
        VelocityField::new(vec![
            ScalarField::from_fn(g, |x| x[1].sin()),
            ScalarField::zeros(g),
        ])
        .unwrap()
    }

    #[test]
    fn advect_trivial_cases() {
        let g = Grid::new(2, 32).unwrap();
        let u = random_divfree(g, 3, 2.0).unwrap();
        let c = ScalarField::from_fn(g, |_| 2.5);
        assert!(advect(&u, &c).unwrap().max_abs() < 1e-13);
        let q = ScalarField::from_fn(g, |x| (2.0 * x[1]).cos());
        assert!(advect(&shear(g), &q).unwrap().max_abs() < 1e-13);
    }

    #[test]
    fn transport_is_skew() {
        let g = Grid::new(2, 64).unwrap();
        let ctx = g.spectral();
        for seed in 0..20 {
            let u = random_divfree(g, seed, 2.0).unwrap();
            let tau = random_stress(g, seed, 2.0).unwrap();
            let q = &tau.entries()[0];
            let a = advect(&u, q).unwrap();
            let ip = ops::inner(&ctx, &a.coeffs(), &q.coeffs(), 0.0);
            let scale = u.norm(1.0) * ops::norm_sq(&ctx, &q.coeffs(), 1.0);
            assert!(ip.abs() <= 1e-10 * scale, "seed {seed}: {ip:e}");
        }
    }

    #[test]
    fn shear_grad_transpose_is_gradient() {
        let g = Grid::new(2, 32).unwrap();
        let alpha: f64 = 0.7;
        let u = shear(g);
        let v: Vec<ScalarField> = crate::spectral::helmholtz_apply(u.components(), alpha).unwrap();
        assert!(grad_transpose(&[ScalarField::zeros(g), ScalarField::zeros(g)], &u)
            .unwrap()
            .iter()
            .all(|c| c.max_abs() == 0.0));
        let gt = grad_transpose(&v, &u).unwrap();
        let a2 = 1.0 + alpha * alpha;
        let vals = gt[1].values();
        for i in 0..g.len() {
            let x = g.coords(i);
            assert!((vals[i] - a2 * x[1].sin() * x[1].cos()).abs() < 1e-12);
        }
        assert!(gt[0].max_abs() < 1e-12);
        let p = leray_project(&gt).unwrap();
        assert!(p.iter().all(|c| c.max_abs() < 1e-12));
    }

    #[test]
    fn trilinear_defect_small() {
        let g = Grid::new(2, 32).unwrap();
        assert_eq!(trilinear_identity_defect(&VelocityField::zeros(g), 1.0), 0.0);
        assert!(trilinear_identity_defect(&shear(g), 1.0) <= 1e-12);
        for seed in 0..10 {
            let k = random_divfree(g, seed, 2.0).unwrap();
            let d = trilinear_identity_defect(&k, 0.5);
            assert!(d <= 1e-10 * k.norm(1.0).powi(3));
        }
    }
}
