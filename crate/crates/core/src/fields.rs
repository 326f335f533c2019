//! Velocity and stress field types with the kinematic operators.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kernels;
use crate::spectral::{ops, Grid, ScalarField};

/// Relative divergence tolerance accepted by [`VelocityField::new`].
pub const DIVERGENCE_TOLERANCE: f64 = 1e-10;

/// Incompressible velocity field, one scalar component per axis.
#[derive(Clone, Debug, PartialEq)]
pub struct VelocityField {
    grid: Grid,
    components: Vec<ScalarField>,
}

impl VelocityField {
    /// Wraps components that are already divergence-free; rejects the input
    /// if `‖div u‖ > 1e-10·‖u‖₁`.
    pub fn new(components: Vec<ScalarField>) -> Result<Self> {
        let u = Self::unchecked(components)?;
        let div = u.divergence_norm();
        let scale = u.norm(1.0).max(f64::MIN_POSITIVE);
        if div > DIVERGENCE_TOLERANCE * scale && div > 1e-300 {
            return Err(Error::Contract(format!(
                "velocity field is not divergence-free: ‖div u‖ = {div:.3e}, ‖u‖₁ = {scale:.3e}"
            )));
        }
        Ok(u)
    }

    /// Leray-projects arbitrary components and removes the mean.
    pub fn project(components: Vec<ScalarField>) -> Result<Self> {
        let u = Self::unchecked(components)?;
        let ctx = u.grid.spectral();
        let mut c = u.coeffs();
        ops::leray_in_place(&ctx, &mut c);
        for comp in c.iter_mut() {
            ops::remove_mean(comp);
        }
        Ok(Self::from_coeffs(u.grid, c))
    }

    fn unchecked(components: Vec<ScalarField>) -> Result<Self> {
        let grid = components
            .first()
            .ok_or_else(|| Error::Contract("velocity needs at least one component".into()))?
            .grid();
        if components.len() != grid.dim() {
            return Err(Error::Contract(format!(
                "velocity on a {}-dimensional grid needs {} components, got {}",
                grid.dim(),
                grid.dim(),
                components.len()
            )));
        }
        if components.iter().any(|c| c.grid() != grid) {
            return Err(Error::GridMismatch("velocity components on different grids".into()));
        }
        Ok(VelocityField { grid, components })
    }

    pub(crate) fn from_coeffs(grid: Grid, coeffs: Vec<Vec<Complex64>>) -> Self {
        VelocityField {
            grid,
            components: coeffs
                .into_iter()
                .map(|c| ScalarField::spectral_unchecked(grid, c))
                .collect(),
        }
    }

    pub fn zeros(grid: Grid) -> Self {
        VelocityField {
            grid,
            components: (0..grid.dim()).map(|_| ScalarField::zeros(grid)).collect(),
        }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn components(&self) -> &[ScalarField] {
        &self.components
    }

    pub fn coeffs(&self) -> Vec<Vec<Complex64>> {
        self.components.iter().map(|c| c.coeffs().into_owned()).collect()
    }

    pub fn to_real(&self) -> Self {
        VelocityField {
            grid: self.grid,
            components: self.components.iter().map(|c| c.to_real()).collect(),
        }
    }

    pub fn to_spectral(&self) -> Self {
        VelocityField {
            grid: self.grid,
            components: self.components.iter().map(|c| c.to_spectral()).collect(),
        }
    }

    /// L₂ norm of the spectral divergence.
    pub fn divergence_norm(&self) -> f64 {
        let ctx = self.grid.spectral();
        let div = ops::divergence(&ctx, &self.coeffs());
        ops::norm_sq(&ctx, &div, 0.0).sqrt()
    }

    /// Bessel-symbol H^s norm.
    pub fn norm(&self, s: f64) -> f64 {
        let ctx = self.grid.spectral();
        self.components
            .iter()
            .map(|c| ops::norm_sq(&ctx, &c.coeffs(), s))
            .sum::<f64>()
            .sqrt()
    }

    /// `‖u‖_V² = ‖u‖² + α²‖∇u‖²`.
    pub fn v_norm_sq(&self, alpha: f64) -> f64 {
        let ctx = self.grid.spectral();
        self.components
            .iter()
            .map(|c| {
                let c = c.coeffs();
                ops::v_inner(&ctx, &c, &c, alpha)
            })
            .sum()
    }

    /// Largest pointwise speed `|u(x)|`.
    pub fn max_speed(&self) -> f64 {
        let vals: Vec<_> = self.components.iter().map(|c| c.values().into_owned()).collect();
        (0..self.grid.len())
            .map(|i| vals.iter().map(|v| v[i] * v[i]).sum::<f64>())
            .fold(0.0, f64::max)
            .sqrt()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let c = self
            .coeffs()
            .into_iter()
            .map(|v| v.into_iter().map(|z| z * factor).collect())
            .collect();
        Self::from_coeffs(self.grid, c)
    }

    pub fn sub(&self, other: &VelocityField) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch("velocity difference".into()));
        }
        let c = self
            .coeffs()
            .into_iter()
            .zip(other.coeffs())
            .map(|(a, b)| a.into_iter().zip(b).map(|(x, y)| x - y).collect())
            .collect();
        Ok(Self::from_coeffs(self.grid, c))
    }
}

/// Symmetric `dim×dim` tensor field stored as its upper triangle, so
/// `entry(i, j)` and `entry(j, i)` are the same storage.
#[derive(Clone, Debug, PartialEq)]
pub struct StressField {
    grid: Grid,
    entries: Vec<ScalarField>,
}

impl StressField {
    /// Builds from upper-triangle entries in the order of [`Grid::sym_pair`].
    pub fn new(entries: Vec<ScalarField>) -> Result<Self> {
        let grid = entries
            .first()
            .ok_or_else(|| Error::Contract("stress needs entries".into()))?
            .grid();
        if entries.len() != grid.sym_len() {
            return Err(Error::Contract(format!(
                "stress on a {}-dimensional grid needs {} entries, got {}",
                grid.dim(),
                grid.sym_len(),
                entries.len()
            )));
        }
        if entries.iter().any(|c| c.grid() != grid) {
            return Err(Error::GridMismatch("stress entries on different grids".into()));
        }
        Ok(StressField { grid, entries })
    }

    /// Builds from a full row-major `dim×dim` list of entries, rejecting
    /// matrices that are not exactly symmetric.
    pub fn from_full(full: Vec<ScalarField>) -> Result<Self> {
        let grid = full
            .first()
            .ok_or_else(|| Error::Contract("stress needs entries".into()))?
            .grid();
        let dim = grid.dim();
        if full.len() != dim * dim {
            return Err(Error::Contract(format!("expected {} entries", dim * dim)));
        }
        for i in 0..dim {
            for j in i + 1..dim {
                if full[i * dim + j].values() != full[j * dim + i].values() {
                    return Err(Error::Contract(format!(
                        "stress tensor is not symmetric in entries ({i},{j})"
                    )));
                }
            }
        }
        let entries = (0..grid.sym_len())
            .map(|s| {
                let (i, j) = grid.sym_pair(s);
                full[i * dim + j].clone()
            })
            .collect();
        Self::new(entries)
    }

    pub(crate) fn from_coeffs(grid: Grid, coeffs: Vec<Vec<Complex64>>) -> Self {
        StressField {
            grid,
            entries: coeffs
                .into_iter()
                .map(|c| ScalarField::spectral_unchecked(grid, c))
                .collect(),
        }
    }

    pub fn zeros(grid: Grid) -> Self {
        StressField {
            grid,
            entries: (0..grid.sym_len()).map(|_| ScalarField::zeros(grid)).collect(),
        }
    }

    /// The identity tensor field.
    pub fn identity(grid: Grid) -> Self {
        let entries = (0..grid.sym_len())
            .map(|s| {
                let (i, j) = grid.sym_pair(s);
                let v = if i == j { 1.0 } else { 0.0 };
                ScalarField::from_fn(grid, |_| v)
            })
            .collect();
        StressField { grid, entries }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn entries(&self) -> &[ScalarField] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &ScalarField {
        &self.entries[self.grid.sym_index(i, j)]
    }

    pub fn coeffs(&self) -> Vec<Vec<Complex64>> {
        self.entries.iter().map(|c| c.coeffs().into_owned()).collect()
    }

    pub fn to_real(&self) -> Self {
        StressField {
            grid: self.grid,
            entries: self.entries.iter().map(|c| c.to_real()).collect(),
        }
    }

    /// Frobenius-type inner product `Σ_ij (σ_ij, τ_ij)_s` over the full matrix.
    pub fn inner(&self, other: &StressField, s: f64) -> f64 {
        let ctx = self.grid.spectral();
        (0..self.grid.sym_len())
            .map(|k| {
                let (i, j) = self.grid.sym_pair(k);
                let mult = if i == j { 1.0 } else { 2.0 };
                mult * ops::inner(&ctx, &self.entries[k].coeffs(), &other.entries[k].coeffs(), s)
            })
            .sum()
    }

    pub fn norm_sq(&self, s: f64) -> f64 {
        self.inner(self, s)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let c = self
            .coeffs()
            .into_iter()
            .map(|v| v.into_iter().map(|z| z * factor).collect())
            .collect();
        Self::from_coeffs(self.grid, c)
    }

    pub fn sub(&self, other: &StressField) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch("stress difference".into()));
        }
        let c = self
            .coeffs()
            .into_iter()
            .zip(other.coeffs())
            .map(|(a, b)| a.into_iter().zip(b).map(|(x, y)| x - y).collect())
            .collect();
        Ok(Self::from_coeffs(self.grid, c))
    }

    /// Pointwise trace.
    pub fn trace(&self) -> ScalarField {
        let mut acc = vec![Complex64::default(); self.grid.len()];
        for i in 0..self.grid.dim() {
            for (a, b) in acc.iter_mut().zip(self.entry(i, i).coeffs().iter()) {
                *a += b;
            }
        }
        ScalarField::spectral_unchecked(self.grid, acc)
    }
}

/// Antisymmetric tensor field stored by its strictly-upper entries `W_ij, i<j`.
#[derive(Clone, Debug, PartialEq)]
pub struct VorticityField {
    grid: Grid,
    upper: Vec<ScalarField>,
}

impl VorticityField {
    fn slot(grid: Grid, i: usize, j: usize) -> usize {
        debug_assert!(i < j);
        // strictly-upper pairs in row-major order
        i * grid.dim() - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn zeros(grid: Grid) -> Self {
        let m = grid.dim() * (grid.dim() - 1) / 2;
        VorticityField {
            grid,
            upper: (0..m).map(|_| ScalarField::zeros(grid)).collect(),
        }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    /// Entry `W_ij` as real grid values (zero on the diagonal, `-W_ji` below).
    pub fn entry_values(&self, i: usize, j: usize) -> Vec<f64> {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Equal => vec![0.0; self.grid.len()],
            Ordering::Less => self.upper[Self::slot(self.grid, i, j)].values().into_owned(),
            Ordering::Greater => self.upper[Self::slot(self.grid, j, i)]
                .values()
                .iter()
                .map(|v| -v)
                .collect(),
        }
    }

    /// Builds a vorticity-like field from strictly-upper entries.
    pub fn from_upper(upper: Vec<ScalarField>) -> Result<Self> {
        let grid = upper
            .first()
            .ok_or_else(|| Error::Contract("antisymmetric field needs entries".into()))?
            .grid();
        if upper.len() != grid.dim() * (grid.dim() - 1) / 2 {
            return Err(Error::Contract("wrong number of antisymmetric entries".into()));
        }
        Ok(VorticityField { grid, upper })
    }
}

/// Material parameters. `μ = η/λ` is derived on demand.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    pub eta: f64,
    pub lambda: f64,
    pub alpha: f64,
}

impl PhysicalParams {
    pub fn new(eta: f64, lambda: f64, alpha: f64) -> Result<Self> {
        let p = PhysicalParams { eta, lambda, alpha };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eta >= 0.0 && self.eta.is_finite()) {
            return Err(Error::key("eta", format!("must be >= 0, got {}", self.eta)));
        }
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(Error::key("lambda", format!("must be > 0, got {}", self.lambda)));
        }
        if !(self.alpha > 0.0 && self.alpha.is_finite()) {
            return Err(Error::key("alpha", format!("must be > 0, got {}", self.alpha)));
        }
        Ok(())
    }

    pub fn mu(&self) -> f64 {
        self.eta / self.lambda
    }

    /// `η = 0` selects the Euler-α system.
    pub fn is_euler_alpha(&self) -> bool {
        self.eta == 0.0
    }
}

fn check_same(a: Grid, b: Grid) -> Result<()> {
    if a != b {
        return Err(Error::GridMismatch(format!("{a:?} vs {b:?}")));
    }
    Ok(())
}

/// Strain-rate tensor `E_ij = ½(∂u_i/∂x_j + ∂u_j/∂x_i)`.
pub fn strain(u: &VelocityField) -> StressField {
    let ctx = u.grid.spectral();
    StressField::from_coeffs(u.grid, kernels::strain(&ctx, &u.coeffs()))
}

/// Vorticity tensor `W_ij = ½(∂u_i/∂x_j − ∂u_j/∂x_i)`.
#[allow(clippy::needless_range_loop)]
pub fn vorticity(u: &VelocityField) -> VorticityField {
    let grid = u.grid;
    let ctx = grid.spectral();
    let g = kernels::gradient(&ctx, &u.coeffs());
    let dim = grid.dim();
    let mut upper = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let c = g[i][j].iter().zip(&g[j][i]).map(|(a, b)| 0.5 * (a - b)).collect();
            upper.push(ScalarField::spectral_unchecked(grid, c));
        }
    }
    VorticityField { grid, upper }
}

/// Pointwise `σW − Wσ`, dealiased. Symmetric whenever σ is symmetric and W
/// antisymmetric, which the storage types guarantee.
pub fn corotational_commutator(sigma: &StressField, w: &VorticityField) -> Result<StressField> {
    check_same(sigma.grid, w.grid)?;
    let grid = sigma.grid;
    let dim = grid.dim();
    let ctx = grid.spectral();
    let s: Vec<Vec<f64>> = sigma.entries.iter().map(|e| e.values().into_owned()).collect();
    let wv: Vec<Vec<Vec<f64>>> = (0..dim)
        .map(|i| (0..dim).map(|j| w.entry_values(i, j)).collect())
        .collect();
    Ok(StressField::from_coeffs(grid, kernels::commutator(&ctx, &s, &wv)))
}

/// Energy `2μ‖u‖_V² + ‖σ‖²`. In the Euler-α configuration (`η = 0`) the
/// velocity part is weighted by one instead, i.e. `‖u‖_V² + ‖σ‖²`.
pub fn energy(u: &VelocityField, sigma: &StressField, params: &PhysicalParams) -> Result<f64> {
    check_same(u.grid, sigma.grid)?;
    Ok(velocity_weight(params) * u.v_norm_sq(params.alpha) + sigma.norm_sq(0.0))
}

/// Weight of `‖u‖_V²` in the energy functional.
pub fn velocity_weight(params: &PhysicalParams) -> f64 {
    if params.is_euler_alpha() {
        1.0
    } else {
        2.0 * params.mu()
    }
}

/// Random physical amplitudes for one real field: `|k|^-decay` times a
/// random phase on each dealiased non-zero mode, Hermitian by construction.
pub(crate) fn random_scalar_coeffs(grid: Grid, rng: &mut ChaCha8Rng, decay: f64) -> Vec<Complex64> {
    let ctx = grid.spectral();
    let scale = grid.len() as f64;
    let mut c = vec![Complex64::default(); grid.len()];
    for idx in 0..grid.len() {
        let k = grid.mode(idx);
        if !ctx.keep()[idx] || k == [0, 0, 0] {
            continue;
        }
        let neg = grid.mode_index(&[-k[0], -k[1], -k[2]]);
        if neg < idx {
            continue;
        }
        let amp = ctx.k2()[idx].sqrt().powf(-decay);
        let phase = rng.random_range(0.0..std::f64::consts::TAU);
        let z = Complex64::from_polar(amp * scale, phase);
        c[idx] = z;
        c[neg] = z.conj();
    }
    c
}

/// Seeded random divergence-free, zero-mean, dealiased velocity whose mode
/// amplitudes fall off like `|k|^-spectrum_decay`. Normalized to unit RMS
/// speed.
pub fn random_divfree(grid: Grid, seed: u64, spectrum_decay: f64) -> Result<VelocityField> {
    if !(spectrum_decay > 1.0) {
        return Err(Error::Contract(format!(
            "spectrum_decay must exceed 1, got {spectrum_decay}"
        )));
    }
    let ctx = grid.spectral();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut comps: Vec<Vec<Complex64>> = (0..grid.dim())
        .map(|_| random_scalar_coeffs(grid, &mut rng, spectrum_decay))
        .collect();
    ops::leray_in_place(&ctx, &mut comps);
    let u = VelocityField::from_coeffs(grid, comps);
    let rms = (u.norm(0.0).powi(2) / grid.volume()).sqrt();
    Ok(if rms > 0.0 { u.scaled(1.0 / rms) } else { u })
}

/// Seeded random symmetric stress, zero mean, same spectral shape as
/// [`random_divfree`], normalized to unit RMS Frobenius magnitude.
pub fn random_stress(grid: Grid, seed: u64, spectrum_decay: f64) -> Result<StressField> {
    if !(spectrum_decay > 1.0) {
        return Err(Error::Contract(format!(
            "spectrum_decay must exceed 1, got {spectrum_decay}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_5eed_5eed_5eed);
    let coeffs = (0..grid.sym_len())
        .map(|_| random_scalar_coeffs(grid, &mut rng, spectrum_decay))
        .collect();
    let s = StressField::from_coeffs(grid, coeffs);
    let rms = (s.norm_sq(0.0) / grid.volume()).sqrt();
    Ok(if rms > 0.0 { s.scaled(1.0 / rms) } else { s })
}
