use std::borrow::Cow;

use num_complex::Complex64;

use super::{ops, Direction, Grid};
use crate::error::{Error, Result};

/// Storage of a scalar field: grid values or Fourier coefficients.
#[derive(Clone, Debug, PartialEq)]
pub enum Repr {
    Real(Vec<f64>),
    Spectral(Vec<Complex64>),
}

/// A real scalar field on a periodic grid, held in either representation.
///
/// Conversions are explicit; operations accept either form and convert as
/// needed. Spectral coefficients of a field built from real data are
/// Hermitian-symmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarField {
    grid: Grid,
    repr: Repr,
}

impl ScalarField {
    pub fn from_real(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "expected {} values, got {}",
                grid.len(),
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::Contract("field values must be finite".into()));
        }
        Ok(ScalarField {
            grid,
            repr: Repr::Real(values),
        })
    }

    pub fn from_spectral(grid: Grid, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "expected {} coefficients, got {}",
                grid.len(),
                coeffs.len()
            )));
        }
        Ok(ScalarField {
            grid,
            repr: Repr::Spectral(coeffs),
        })
    }

    pub(crate) fn spectral_unchecked(grid: Grid, coeffs: Vec<Complex64>) -> Self {
        debug_assert_eq!(coeffs.len(), grid.len());
        ScalarField {
            grid,
            repr: Repr::Spectral(coeffs),
        }
    }

    pub fn zeros(grid: Grid) -> Self {
        Self::spectral_unchecked(grid, vec![Complex64::default(); grid.len()])
    }

    /// Samples `f(x)` at the grid points.
    pub fn from_fn(grid: Grid, f: impl Fn([f64; 3]) -> f64) -> Self {
        let values = (0..grid.len()).map(|i| f(grid.coords(i))).collect();
        ScalarField {
            grid,
            repr: Repr::Real(values),
        }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    pub fn is_spectral(&self) -> bool {
        matches!(self.repr, Repr::Spectral(_))
    }

    pub fn coeffs(&self) -> Cow<'_, [Complex64]> {
        match &self.repr {
            Repr::Spectral(c) => Cow::Borrowed(c),
            Repr::Real(v) => Cow::Owned(self.grid.spectral().plan().forward_real(v)),
        }
    }

    pub fn values(&self) -> Cow<'_, [f64]> {
        match &self.repr {
            Repr::Real(v) => Cow::Borrowed(v),
            Repr::Spectral(c) => Cow::Owned(self.grid.spectral().plan().inverse_real(c)),
        }
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        match self.repr {
            Repr::Spectral(c) => c,
            Repr::Real(v) => self.grid.spectral().plan().forward_real(&v),
        }
    }

    pub fn to_spectral(&self) -> Self {
        Self::spectral_unchecked(self.grid, self.coeffs().into_owned())
    }

    pub fn to_real(&self) -> Self {
        ScalarField {
            grid: self.grid,
            repr: Repr::Real(self.values().into_owned()),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values().iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// L₂ norm over the domain, computed by grid quadrature.
    pub fn l2_norm_quadrature(&self) -> f64 {
        let sum: f64 = self.values().iter().map(|v| v * v).sum();
        (sum * self.grid.cell_volume()).sqrt()
    }

    /// L₂ norm over the domain, computed from the Fourier coefficients.
    pub fn l2_norm_spectral(&self) -> f64 {
        let ctx = self.grid.spectral();
        ops::norm_sq(&ctx, &self.coeffs(), 0.0).sqrt()
    }
}

/// Order `s ≥ 0` of a Sobolev norm, realized with the symbol `(1+|k|²)^s`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct SobolevIndex(f64);

impl SobolevIndex {
    pub const L2: SobolevIndex = SobolevIndex(0.0);
    pub const H1: SobolevIndex = SobolevIndex(1.0);
    pub const H2: SobolevIndex = SobolevIndex(2.0);
    pub const H3: SobolevIndex = SobolevIndex(3.0);

    pub fn new(s: f64) -> Result<Self> {
        if !(s >= 0.0 && s.is_finite()) {
            return Err(Error::Contract(format!("Sobolev index must be >= 0, got {s}")));
        }
        Ok(SobolevIndex(s))
    }

    pub fn order(&self) -> f64 {
        self.0
    }
}

/// Converts between representations. A field already in the target
/// representation is returned unchanged.
pub fn transform(field: &ScalarField, direction: Direction) -> ScalarField {
    match direction {
        Direction::Forward => field.to_spectral(),
        Direction::Inverse => field.to_real(),
    }
}

pub fn spectral_derivative(field: &ScalarField, axis: usize) -> Result<ScalarField> {
    let grid = field.grid();
    if axis >= grid.dim() {
        return Err(Error::Contract(format!(
            "axis {axis} out of range for {}-dimensional grid",
            grid.dim()
        )));
    }
    let ctx = grid.spectral();
    Ok(ScalarField::spectral_unchecked(
        grid,
        ops::derivative(&ctx, &field.coeffs(), axis),
    ))
}

fn common_grid(fields: &[ScalarField]) -> Result<Grid> {
    let grid = fields
        .first()
        .ok_or_else(|| Error::Contract("empty field list".into()))?
        .grid();
    if fields.iter().any(|f| f.grid() != grid) {
        return Err(Error::GridMismatch("components live on different grids".into()));
    }
    Ok(grid)
}

pub fn leray_project(fields: &[ScalarField]) -> Result<Vec<ScalarField>> {
    let grid = common_grid(fields)?;
    if fields.len() != grid.dim() {
        return Err(Error::Contract(format!(
            "expected {} components, got {}",
            grid.dim(),
            fields.len()
        )));
    }
    let ctx = grid.spectral();
    let mut comps: Vec<Vec<Complex64>> = fields.iter().map(|f| f.coeffs().into_owned()).collect();
    ops::leray_in_place(&ctx, &mut comps);
    Ok(comps
        .into_iter()
        .map(|c| ScalarField::spectral_unchecked(grid, c))
        .collect())
}

fn helmholtz(fields: &[ScalarField], alpha: f64, invert: bool) -> Result<Vec<ScalarField>> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::Config(format!("alpha must be positive, got {alpha}")));
    }
    let grid = common_grid(fields)?;
    let ctx = grid.spectral();
    Ok(fields
        .iter()
        .map(|f| {
            let mut c = f.coeffs().into_owned();
            ops::helmholtz_in_place(&ctx, &mut c, alpha, invert);
            ScalarField::spectral_unchecked(grid, c)
        })
        .collect())
}

/// Applies `I − α²Δ` componentwise.
pub fn helmholtz_apply(fields: &[ScalarField], alpha: f64) -> Result<Vec<ScalarField>> {
    helmholtz(fields, alpha, false)
}

/// Applies `(I − α²Δ)^{-1}` componentwise.
pub fn helmholtz_invert(fields: &[ScalarField], alpha: f64) -> Result<Vec<ScalarField>> {
    helmholtz(fields, alpha, true)
}

pub fn sobolev_inner(f: &ScalarField, g: &ScalarField, s: SobolevIndex) -> Result<f64> {
    if f.grid() != g.grid() {
        return Err(Error::GridMismatch("inner product of fields on different grids".into()));
    }
    let ctx = f.grid().spectral();
    Ok(ops::inner(&ctx, &f.coeffs(), &g.coeffs(), s.order()))
}

pub fn dealias(field: &ScalarField) -> ScalarField {
    let grid = field.grid();
    let ctx = grid.spectral();
    let mut c = field.coeffs().into_owned();
    ops::dealias_in_place(&ctx, &mut c);
    ScalarField::spectral_unchecked(grid, c)
}
