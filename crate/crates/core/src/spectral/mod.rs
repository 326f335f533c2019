//! Periodic-domain spectral infrastructure.
//!
//! Fields live on the torus `[0, 2π)^dim` sampled on a uniform `N^dim` grid.
//! Arrays are row-major with axis 0 (`x₁`) slowest. The discrete Fourier
//! transform is unnormalized in the forward direction,
//!
//! ```text
//! F_k = Σ_j f_j exp(-i k·x_j),        f_j = N^{-dim} Σ_k F_k exp(i k·x_j),
//! ```
//!
//! so a constant field `c` maps to a single zero mode `c·N^dim`, and the L₂
//! inner product over the domain is `(2π)^dim / N^{2·dim} Σ_k Re(F_k conj(G_k))`.

mod fft;
mod field;
pub mod ops;

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, LazyLock};

use parking_lot::Mutex;
use serde::{Deserialize, Serialize};

pub use fft::{Direction, FftPlan};
pub use field::{
    dealias, helmholtz_apply, helmholtz_invert, leray_project, sobolev_inner, spectral_derivative,
    transform, Repr, ScalarField, SobolevIndex,
};

use crate::error::{Error, Result};

pub use num_complex::Complex64;

/// Side length of the periodic box along every axis.
pub const DOMAIN_LENGTH: f64 = 2.0 * PI;

/// Uniform periodic grid on `[0, 2π)^dim`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Grid {
    dim: usize,
    n: usize,
}

impl Grid {
    pub fn new(dim: usize, n: usize) -> Result<Self> {
        if dim != 2 && dim != 3 {
            return Err(Error::Config(format!("grid dimension must be 2 or 3, got {dim}")));
        }
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::Config(format!(
                "points per axis must be a power of two >= 8, got {n}"
            )));
        }
        Ok(Grid { dim, n })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Points per axis.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of grid points, `N^dim`.
    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn length(&self) -> f64 {
        DOMAIN_LENGTH
    }

    /// Largest retained wavenumber magnitude per axis under the 2/3 rule.
    pub fn dealias_cutoff(&self) -> usize {
        self.n / 3
    }

    pub fn spacing(&self) -> f64 {
        DOMAIN_LENGTH / self.n as f64
    }

    /// Domain volume `(2π)^dim`.
    pub fn volume(&self) -> f64 {
        DOMAIN_LENGTH.powi(self.dim as i32)
    }

    /// Quadrature weight of one grid cell.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    /// Signed wavenumber stored at array position `i` along one axis.
    /// The Nyquist index `N/2` is reported as `-N/2`.
    pub fn wavenumber(&self, i: usize) -> i64 {
        let n = self.n as i64;
        let i = i as i64;
        if i < n / 2 {
            i
        } else {
            i - n
        }
    }

    /// Array position holding the signed wavenumber `k` along one axis.
    pub fn index_of_wavenumber(&self, k: i64) -> usize {
        k.rem_euclid(self.n as i64) as usize
    }

    /// Multi-index (per-axis array positions) of a flat index.
    pub fn unravel(&self, mut idx: usize) -> [usize; 3] {
        let mut out = [0usize; 3];
        for axis in (0..self.dim).rev() {
            out[axis] = idx % self.n;
            idx /= self.n;
        }
        out
    }

    pub fn ravel(&self, pos: &[usize]) -> usize {
        pos[..self.dim].iter().fold(0, |acc, &p| acc * self.n + p)
    }

    /// Signed wavevector of a flat spectral index (unused axes are zero).
    pub fn mode(&self, idx: usize) -> [i64; 3] {
        let pos = self.unravel(idx);
        let mut k = [0i64; 3];
        for axis in 0..self.dim {
            k[axis] = self.wavenumber(pos[axis]);
        }
        k
    }

    /// Flat spectral index of a signed wavevector.
    pub fn mode_index(&self, k: &[i64]) -> usize {
        let mut pos = [0usize; 3];
        for axis in 0..self.dim {
            pos[axis] = self.index_of_wavenumber(k[axis]);
        }
        self.ravel(&pos)
    }

    /// Physical coordinates of a flat real-space index.
    pub fn coords(&self, idx: usize) -> [f64; 3] {
        let pos = self.unravel(idx);
        let h = self.spacing();
        let mut x = [0.0; 3];
        for axis in 0..self.dim {
            x[axis] = pos[axis] as f64 * h;
        }
        x
    }

    /// Number of independent stress entries, `dim·(dim+1)/2`.
    pub fn sym_len(&self) -> usize {
        self.dim * (self.dim + 1) / 2
    }

    /// Position of the (i, j) entry in upper-triangle storage.
    pub fn sym_index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        // rows 0..i contribute dim, dim-1, ... entries
        i * self.dim - i * (i + 1) / 2 + j
    }

    /// The (i, j) pair stored at position `s` in upper-triangle storage.
    pub fn sym_pair(&self, s: usize) -> (usize, usize) {
        let mut s = s;
        for i in 0..self.dim {
            let row = self.dim - i;
            if s < row {
                return (i, i + s);
            }
            s -= row;
        }
        panic!("symmetric index out of range")
    }

    /// Shared per-grid spectral context (FFT plan and mode tables).
    pub fn spectral(&self) -> Arc<Spectral> {
        Spectral::get(*self)
    }
}

/// Per-grid spectral context: FFT plan plus precomputed wavenumber tables.
pub struct Spectral {
    grid: Grid,
    plan: FftPlan,
    /// Wavevector used for differentiation (Nyquist components zeroed).
    kd: Vec<[f64; 3]>,
    /// Full squared wavenumber `|k|²`.
    k2: Vec<f64>,
    /// `true` where the mode survives 2/3-rule truncation.
    keep: Vec<bool>,
}

static CONTEXTS: LazyLock<Mutex<HashMap<Grid, Arc<Spectral>>>> =
    LazyLock::new(|| Mutex::new(HashMap::new()));

impl Spectral {
    pub fn get(grid: Grid) -> Arc<Spectral> {
        let mut cache = CONTEXTS.lock();
        cache
            .entry(grid)
            .or_insert_with(|| Arc::new(Spectral::build(grid)))
            .clone()
    }

    fn build(grid: Grid) -> Spectral {
        let len = grid.len();
        let nyq = (grid.n() / 2) as i64;
        let cutoff = grid.dealias_cutoff() as i64;
        let mut kd = Vec::with_capacity(len);
        let mut k2 = Vec::with_capacity(len);
        let mut keep = Vec::with_capacity(len);
        for idx in 0..len {
            let k = grid.mode(idx);
            let mut d = [0.0; 3];
            let mut sq = 0.0;
            let mut kept = true;
            for axis in 0..grid.dim() {
                let ka = k[axis];
                sq += (ka * ka) as f64;
                if ka.abs() != nyq {
                    d[axis] = ka as f64;
                }
                if ka.abs() > cutoff {
                    kept = false;
                }
            }
            kd.push(d);
            k2.push(sq);
            keep.push(kept);
        }
        Spectral {
            grid,
            plan: FftPlan::new(grid),
            kd,
            k2,
            keep,
        }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn plan(&self) -> &FftPlan {
        &self.plan
    }

    pub fn kd(&self) -> &[[f64; 3]] {
        &self.kd
    }

    pub fn k2(&self) -> &[f64] {
        &self.k2
    }

    pub fn keep(&self) -> &[bool] {
        &self.keep
    }

    /// Factor turning `Σ_k Re(F_k conj G_k)` into the L₂ inner product.
    pub fn parseval_factor(&self) -> f64 {
        let len = self.grid.len() as f64;
        self.grid.volume() / (len * len)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(Grid::new(2, 64).is_ok());
        assert!(Grid::new(3, 8).is_ok());
        assert!(Grid::new(1, 64).is_err());
        assert!(Grid::new(2, 4).is_err());
        assert!(Grid::new(2, 48).is_err());
    }

    #[test]
    fn cutoff_below_nyquist() {
        for n in [8, 16, 32, 64, 128] {
            let g = Grid::new(2, n).unwrap();
            assert_eq!(g.dealias_cutoff(), n / 3);
            assert!(g.dealias_cutoff() < n / 2);
        }
    }

    #[test]
    fn mode_index_roundtrip() {
        let g = Grid::new(3, 8).unwrap();
        for idx in 0..g.len() {
            assert_eq!(g.mode_index(&g.mode(idx)), idx);
        }
    }

    #[test]
    fn sym_storage_layout() {
        let g = Grid::new(3, 8).unwrap();
        let pairs: Vec<_> = (0..g.sym_len()).map(|s| g.sym_pair(s)).collect();
        assert_eq!(pairs, vec![(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)]);
        for (s, &(i, j)) in pairs.iter().enumerate() {
            assert_eq!(g.sym_index(i, j), s);
            assert_eq!(g.sym_index(j, i), s);
        }
        let g2 = Grid::new(2, 8).unwrap();
        assert_eq!(g2.sym_index(1, 0), 1);
        assert_eq!(g2.sym_index(1, 1), 2);
    }
}
