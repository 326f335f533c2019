//! Per-mode kernels on raw spectral coefficient arrays.
//!
//! These are the hot-path building blocks shared by the field types, the
//! residual operators and the time stepper. All of them act diagonally in
//! Fourier space.

use num_complex::Complex64;

use super::Spectral;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Bessel-potential weight `(1 + |k|²)^s`.
#[inline]
pub fn bessel_weight(k2: f64, s: f64) -> f64 {
    let base = 1.0 + k2;
    if s.fract() == 0.0 {
        base.powi(s as i32)
    } else {
        base.powf(s)
    }
}

/// Writes `∂/∂x_axis` of `src` into `dst`.
pub fn derivative_into(ctx: &Spectral, src: &[Complex64], axis: usize, dst: &mut [Complex64]) {
    for ((d, s), k) in dst.iter_mut().zip(src).zip(ctx.kd()) {
        *d = I * k[axis] * s;
    }
}

pub fn derivative(ctx: &Spectral, src: &[Complex64], axis: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::default(); src.len()];
    derivative_into(ctx, src, axis, &mut out);
    out
}

/// Spectral divergence `Σ_j i k_j û_j`.
pub fn divergence(ctx: &Spectral, comps: &[Vec<Complex64>]) -> Vec<Complex64> {
    let len = ctx.grid().len();
    let mut out = vec![Complex64::default(); len];
    for (axis, c) in comps.iter().enumerate() {
        for ((o, s), k) in out.iter_mut().zip(c).zip(ctx.kd()) {
            *o += I * k[axis] * s;
        }
    }
    out
}

/// Leray projection `û − k (k·û)/|k|²`, applied per mode. The zero mode is
/// left untouched.
pub fn leray_in_place(ctx: &Spectral, comps: &mut [Vec<Complex64>]) {
    let dim = ctx.grid().dim();
    debug_assert_eq!(comps.len(), dim);
    for (idx, k) in ctx.kd().iter().enumerate() {
        let kk: f64 = k[..dim].iter().map(|x| x * x).sum();
        if kk == 0.0 {
            continue;
        }
        let mut dot = Complex64::default();
        for axis in 0..dim {
            dot += k[axis] * comps[axis][idx];
        }
        let scale = dot / kk;
        for axis in 0..dim {
            comps[axis][idx] -= k[axis] * scale;
        }
    }
}

/// Multiplies every mode by `(1 + α²|k|²)`, or divides when `invert` is set.
pub fn helmholtz_in_place(ctx: &Spectral, coeffs: &mut [Complex64], alpha: f64, invert: bool) {
    let a2 = alpha * alpha;
    for (c, &k2) in coeffs.iter_mut().zip(ctx.k2()) {
        let sym = 1.0 + a2 * k2;
        if invert {
            *c /= sym;
        } else {
            *c *= sym;
        }
    }
}

/// Zeroes modes with any `|k_axis|` above the 2/3-rule cutoff.
pub fn dealias_in_place(ctx: &Spectral, coeffs: &mut [Complex64]) {
    for (c, &keep) in coeffs.iter_mut().zip(ctx.keep()) {
        if !keep {
            *c = Complex64::default();
        }
    }
}

pub fn remove_mean(coeffs: &mut [Complex64]) {
    coeffs[0] = Complex64::default();
}

/// H^s inner product with the Bessel symbol.
pub fn inner(ctx: &Spectral, f: &[Complex64], g: &[Complex64], s: f64) -> f64 {
    let sum: f64 = if s == 0.0 {
        f.iter().zip(g).map(|(a, b)| a.re * b.re + a.im * b.im).sum()
    } else {
        f.iter()
            .zip(g)
            .zip(ctx.k2())
            .map(|((a, b), &k2)| bessel_weight(k2, s) * (a.re * b.re + a.im * b.im))
            .sum()
    };
    sum * ctx.parseval_factor()
}

pub fn norm_sq(ctx: &Spectral, f: &[Complex64], s: f64) -> f64 {
    inner(ctx, f, f, s)
}

/// `(u, v)_V = (u, v) + α²(∇u, ∇v)`, i.e. symbol `1 + α²|k|²`.
pub fn v_inner(ctx: &Spectral, f: &[Complex64], g: &[Complex64], alpha: f64) -> f64 {
    let a2 = alpha * alpha;
    let sum: f64 = f
        .iter()
        .zip(g)
        .zip(ctx.k2())
        .map(|((a, b), &k2)| (1.0 + a2 * k2) * (a.re * b.re + a.im * b.im))
        .sum();
    sum * ctx.parseval_factor()
}

/// Largest coefficient magnitude.
pub fn max_norm(coeffs: &[Complex64]) -> f64 {
    coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Enforces `F_{-k} = conj(F_k)` by averaging each conjugate pair.
pub fn hermitian_symmetrize(ctx: &Spectral, coeffs: &mut [Complex64]) {
    let grid = ctx.grid();
    for idx in 0..coeffs.len() {
        let k = grid.mode(idx);
        let neg = grid.mode_index(&[-k[0], -k[1], -k[2]]);
        if neg < idx {
            continue;
        }
        let avg = 0.5 * (coeffs[idx] + coeffs[neg].conj());
        coeffs[idx] = avg;
        coeffs[neg] = avg.conj();
    }
}
