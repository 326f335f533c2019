//! Raw coefficient-array kernels for the nonlinear terms.
//!
//! Velocity components are `Vec<Complex64>` per axis, stresses are the upper
//! triangle in [`Grid::sym_pair`] order. Every product is formed in real space,
//! transformed back and truncated by the 2/3 rule.

use num_complex::Complex64;

use crate::spectral::{ops, Grid, Spectral};

pub(crate) type Coeffs = Vec<Complex64>;

pub(crate) fn real(ctx: &Spectral, c: &[Complex64]) -> Vec<f64> {
    ctx.plan().inverse_real(c)
}

pub(crate) fn dealiased(ctx: &Spectral, values: &[f64]) -> Coeffs {
    let mut c = ctx.plan().forward_real(values);
    ops::dealias_in_place(ctx, &mut c);
    c
}

/// `Σ_i u_i ∂q/∂x_i` for real-space `u`.
pub(crate) fn advect(ctx: &Spectral, u: &[Vec<f64>], q: &[Complex64]) -> Coeffs {
    let len = q.len();
    let mut acc = vec![0.0; len];
    let mut d = vec![Complex64::default(); len];
    for (axis, ui) in u.iter().enumerate() {
        ops::derivative_into(ctx, q, axis, &mut d);
        let dq = real(ctx, &d);
        for ((a, x), y) in acc.iter_mut().zip(ui).zip(&dq) {
            *a += x * y;
        }
    }
    dealiased(ctx, &acc)
}

/// `Σ_i v_i ∇u_i` for real-space `v` and spectral `u`.
pub(crate) fn grad_transpose(ctx: &Spectral, v: &[Vec<f64>], u: &[Coeffs]) -> Vec<Coeffs> {
    let dim = ctx.grid().dim();
    let len = ctx.grid().len();
    let mut d = vec![Complex64::default(); len];
    (0..dim)
        .map(|j| {
            let mut acc = vec![0.0; len];
            for (vi, ui) in v.iter().zip(u) {
                ops::derivative_into(ctx, ui, j, &mut d);
                let du = real(ctx, &d);
                for ((a, x), y) in acc.iter_mut().zip(vi).zip(&du) {
                    *a += x * y;
                }
            }
            dealiased(ctx, &acc)
        })
        .collect()
}

/// Row divergence `(div σ)_i = Σ_j ∂σ_ij/∂x_j`.
pub(crate) fn div_stress(ctx: &Spectral, sigma: &[Coeffs]) -> Vec<Coeffs> {
    let grid = ctx.grid();
    let dim = grid.dim();
    let len = grid.len();
    let mut d = vec![Complex64::default(); len];
    (0..dim)
        .map(|i| {
            let mut acc = vec![Complex64::default(); len];
            for j in 0..dim {
                ops::derivative_into(ctx, &sigma[grid.sym_index(i, j)], j, &mut d);
                for (a, x) in acc.iter_mut().zip(&d) {
                    *a += x;
                }
            }
            acc
        })
        .collect()
}

/// Full gradient table `[i][j] = ∂u_i/∂x_j`.
pub(crate) fn gradient(ctx: &Spectral, u: &[Coeffs]) -> Vec<Vec<Coeffs>> {
    let dim = ctx.grid().dim();
    u.iter()
        .map(|c| (0..dim).map(|j| ops::derivative(ctx, c, j)).collect())
        .collect()
}

/// Strain rate in upper-triangle storage.
pub(crate) fn strain(ctx: &Spectral, u: &[Coeffs]) -> Vec<Coeffs> {
    let grid = ctx.grid();
    let g = gradient(ctx, u);
    (0..grid.sym_len())
        .map(|s| {
            let (i, j) = grid.sym_pair(s);
            g[i][j].iter().zip(&g[j][i]).map(|(a, b)| 0.5 * (a + b)).collect()
        })
        .collect()
}

/// Vorticity as a full real-space matrix `[i][j]`.
pub(crate) fn vorticity_real(ctx: &Spectral, u: &[Coeffs]) -> Vec<Vec<Vec<f64>>> {
    let dim = ctx.grid().dim();
    let len = ctx.grid().len();
    let g = gradient(ctx, u);
    let mut w = vec![vec![vec![0.0; len]; dim]; dim];
    for i in 0..dim {
        for j in i + 1..dim {
            let c: Coeffs = g[i][j].iter().zip(&g[j][i]).map(|(a, b)| 0.5 * (a - b)).collect();
            let r = real(ctx, &c);
            w[j][i] = r.iter().map(|x| -x).collect();
            w[i][j] = r;
        }
    }
    w
}

/// `σW − Wσ` from real-space σ (upper triangle) and full real-space W.
#[allow(clippy::needless_range_loop)]
pub(crate) fn commutator(ctx: &Spectral, sigma: &[Vec<f64>], w: &[Vec<Vec<f64>>]) -> Vec<Coeffs> {
    let grid: Grid = ctx.grid();
    let dim = grid.dim();
    let len = grid.len();
    let sig = |i: usize, j: usize| &sigma[grid.sym_index(i, j)];
    (0..grid.sym_len())
        .map(|slot| {
            let (i, j) = grid.sym_pair(slot);
            let mut out = vec![0.0; len];
            for k in 0..dim {
                let (sik, wkj, wik, skj) = (sig(i, k), &w[k][j], &w[i][k], sig(k, j));
                for p in 0..len {
                    out[p] += sik[p] * wkj[p] - wik[p] * skj[p];
                }
            }
            dealiased(ctx, &out)
        })
        .collect()
}

/// Nonlinear and coupling part of the momentum equation written for
/// `v = Δ_α u`:
/// `P[−δ(Σ u_i ∂v/∂x_i + Σ v_i ∇u_i) + δ div σ]`.
pub(crate) fn velocity_forcing(
    ctx: &Spectral,
    u: &[Coeffs],
    sigma: &[Coeffs],
    alpha: f64,
    delta: f64,
) -> Vec<Coeffs> {
    let dim = ctx.grid().dim();
    let len = ctx.grid().len();
    let mut out = vec![vec![Complex64::default(); len]; dim];
    if delta == 0.0 {
        return out;
    }
    let v: Vec<Coeffs> = u
        .iter()
        .map(|c| {
            let mut c = c.clone();
            ops::helmholtz_in_place(ctx, &mut c, alpha, false);
            c
        })
        .collect();
    let u_real: Vec<Vec<f64>> = u.iter().map(|c| real(ctx, c)).collect();
    let v_real: Vec<Vec<f64>> = v.iter().map(|c| real(ctx, c)).collect();
    let gt = grad_transpose(ctx, &v_real, u);
    let div = div_stress(ctx, sigma);
    for i in 0..dim {
        let adv = advect(ctx, &u_real, &v[i]);
        for (p, o) in out[i].iter_mut().enumerate() {
            *o = delta * (div[i][p] - adv[p] - gt[i][p]);
        }
    }
    ops::leray_in_place(ctx, &mut out);
    out
}

/// Transport, rotation and production part of the stress equation:
/// `−δ Σ u_i ∂σ/∂x_i − δ(σW − Wσ) + 2δμ E(u)`.
pub(crate) fn stress_forcing(
    ctx: &Spectral,
    u: &[Coeffs],
    sigma: &[Coeffs],
    mu: f64,
    delta: f64,
) -> Vec<Coeffs> {
    let len = ctx.grid().len();
    if delta == 0.0 {
        return vec![vec![Complex64::default(); len]; sigma.len()];
    }
    let u_real: Vec<Vec<f64>> = u.iter().map(|c| real(ctx, c)).collect();
    let s_real: Vec<Vec<f64>> = sigma.iter().map(|c| real(ctx, c)).collect();
    let w = vorticity_real(ctx, u);
    let comm = commutator(ctx, &s_real, &w);
    let e = strain(ctx, u);
    sigma
        .iter()
        .enumerate()
        .map(|(s, c)| {
            let adv = advect(ctx, &u_real, c);
            (0..len)
                .map(|p| delta * (-adv[p] - comm[s][p] + 2.0 * mu * e[s][p]))
                .collect()
        })
        .collect()
}
