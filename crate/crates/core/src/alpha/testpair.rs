use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{StressField, VelocityField};
use crate::spectral::Grid;

/// Polynomial basis used for the time dependence of a [`TestPair`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TimeBasis {
    /// Powers `t^p`.
    Monomial,
    /// Chebyshev polynomials `T_p(s)` with `s` mapping `[t0, t1]` onto `[-1, 1]`.
    Chebyshev { t0: f64, t1: f64 },
}

impl TimeBasis {
    /// Values and exact time derivatives of the first `count` basis functions.
    pub fn eval(&self, t: f64, count: usize) -> (Vec<f64>, Vec<f64>) {
        let mut val = vec![0.0; count];
        let mut der = vec![0.0; count];
        match *self {
            TimeBasis::Monomial => {
                for p in 0..count {
                    val[p] = t.powi(p as i32);
                    der[p] = if p == 0 { 0.0 } else { p as f64 * t.powi(p as i32 - 1) };
                }
            }
            TimeBasis::Chebyshev { t0, t1 } => {
                let scale = 2.0 / (t1 - t0);
                let s = (2.0 * t - t0 - t1) / (t1 - t0);
                // T_p by recurrence, T'_p = p U_{p-1}
                let mut u_prev = 0.0;
                let mut u_cur = 1.0;
                for p in 0..count {
                    val[p] = match p {
                        0 => 1.0,
                        1 => s,
                        _ => 2.0 * s * val[p - 1] - val[p - 2],
                    };
                    if p >= 1 {
                        der[p] = p as f64 * u_cur * scale;
                        let next = 2.0 * s * u_cur - u_prev;
                        u_prev = u_cur;
                        u_cur = next;
                    }
                }
            }
        }
        (val, der)
    }
}

/// Smooth test trajectory `(ζ(t), θ(t))`: fixed spatial trigonometric
/// polynomials combined with polynomial time weights, so every time
/// derivative is exact.
#[derive(Clone, Debug, PartialEq)]
pub struct TestPair {
    grid: Grid,
    basis: TimeBasis,
    zeta: Vec<VelocityField>,
    theta: Vec<StressField>,
}

impl TestPair {
    /// `ζ(t) = Σ_p b_p(t) zeta[p]`, `θ(t) = Σ_p b_p(t) theta[p]`.
    /// The two coefficient lists may differ in length.
    pub fn new(basis: TimeBasis, zeta: Vec<VelocityField>, theta: Vec<StressField>) -> Result<Self> {
        let grid = zeta
            .first()
            .map(|z| z.grid())
            .or_else(|| theta.first().map(|t| t.grid()))
            .ok_or_else(|| Error::Contract("test pair needs at least one coefficient".into()))?;
        if zeta.iter().any(|z| z.grid() != grid) || theta.iter().any(|t| t.grid() != grid) {
            return Err(Error::GridMismatch("test pair coefficients".into()));
        }
        if let TimeBasis::Chebyshev { t0, t1 } = basis {
            if !(t1 > t0) {
                return Err(Error::Contract(format!("empty Chebyshev interval [{t0}, {t1}]")));
            }
        }
        Ok(TestPair {
            grid,
            basis,
            zeta,
            theta,
        })
    }

    /// The identically zero pair.
    pub fn zero(grid: Grid) -> Self {
        TestPair {
            grid,
            basis: TimeBasis::Monomial,
            zeta: vec![VelocityField::zeros(grid)],
            theta: vec![StressField::zeros(grid)],
        }
    }

    /// A time-independent pair.
    pub fn steady(zeta: VelocityField, theta: StressField) -> Result<Self> {
        Self::new(TimeBasis::Monomial, vec![zeta], vec![theta])
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn basis(&self) -> TimeBasis {
        self.basis
    }

    pub fn degree(&self) -> usize {
        self.zeta.len().max(self.theta.len()).saturating_sub(1)
    }

    /// True when every coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.zeta.iter().all(|z| z.coeffs().iter().flatten().all(|c| *c == Complex64::default()))
            && self
                .theta
                .iter()
                .all(|t| t.coeffs().iter().flatten().all(|c| *c == Complex64::default()))
    }

    fn combine(grid: Grid, weights: &[f64], terms: &[Vec<Vec<Complex64>>]) -> Vec<Vec<Complex64>> {
        let comps = terms.first().map_or(0, |t| t.len());
        let mut out = vec![vec![Complex64::default(); grid.len()]; comps];
        for (w, term) in weights.iter().zip(terms) {
            if *w == 0.0 {
                continue;
            }
            for (o, c) in out.iter_mut().zip(term) {
                for (a, b) in o.iter_mut().zip(c) {
                    *a += *w * b;
                }
            }
        }
        out
    }

    fn zeta_at(&self, t: f64, derivative: bool) -> VelocityField {
        let (val, der) = self.basis.eval(t, self.zeta.len());
        let w = if derivative { der } else { val };
        let terms: Vec<_> = self.zeta.iter().map(|z| z.coeffs()).collect();
        if terms.is_empty() {
            return VelocityField::zeros(self.grid);
        }
        VelocityField::from_coeffs(self.grid, Self::combine(self.grid, &w, &terms))
    }

    fn theta_at(&self, t: f64, derivative: bool) -> StressField {
        let (val, der) = self.basis.eval(t, self.theta.len());
        let w = if derivative { der } else { val };
        let terms: Vec<_> = self.theta.iter().map(|z| z.coeffs()).collect();
        if terms.is_empty() {
            return StressField::zeros(self.grid);
        }
        StressField::from_coeffs(self.grid, Self::combine(self.grid, &w, &terms))
    }

    pub fn zeta(&self, t: f64) -> VelocityField {
        self.zeta_at(t, false)
    }

    pub fn zeta_dt(&self, t: f64) -> VelocityField {
        self.zeta_at(t, true)
    }

    pub fn theta(&self, t: f64) -> StressField {
        self.theta_at(t, false)
    }

    pub fn theta_dt(&self, t: f64) -> StressField {
        self.theta_at(t, true)
    }

    /// Least-squares Chebyshev fit of degree `degree` through sampled
    /// states, constrained to reproduce the first sample exactly.
    pub fn fit(
        times: &[f64],
        velocity: &[VelocityField],
        stress: &[StressField],
        degree: usize,
    ) -> Result<Self> {
        let m = times.len();
        if m != velocity.len() || m != stress.len() {
            return Err(Error::Contract("fit inputs have different lengths".into()));
        }
        if degree == 0 || m < degree + 1 {
            return Err(Error::Contract(format!(
                "fitting degree {degree} needs at least {} samples, got {m}",
                degree + 1
            )));
        }
        let grid = velocity[0].grid();
        let (t0, t1) = (times[0], times[m - 1]);
        let basis = TimeBasis::Chebyshev { t0, t1 };
        let (at_start, _) = basis.eval(t0, degree + 1);

        // columns T_p(s) − T_p(−1) for p = 1..=degree vanish at t0
        let design = DMatrix::from_fn(m, degree, |i, p| {
            basis.eval(times[i], degree + 1).0[p + 1] - at_start[p + 1]
        });
        let pinv = design
            .svd(true, true)
            .pseudo_inverse(1e-14)
            .map_err(|e| Error::Contract(format!("least-squares fit failed: {e}")))?;

        let fit_block = |samples: Vec<Vec<Vec<Complex64>>>| -> Vec<Vec<Vec<Complex64>>> {
            let comps = samples[0].len();
            let len = grid.len();
            let width = comps * len;
            // real and imaginary parts as separate right-hand sides
            let rhs = DMatrix::from_fn(m, 2 * width, |i, col| {
                let (c, p) = ((col / 2) / len, (col / 2) % len);
                let d = samples[i][c][p] - samples[0][c][p];
                if col % 2 == 0 {
                    d.re
                } else {
                    d.im
                }
            });
            let coef = &pinv * rhs;
            let mut out = vec![vec![vec![Complex64::default(); len]; comps]; degree + 1];
            for c in 0..comps {
                for p in 0..len {
                    let mut base = samples[0][c][p];
                    for q in 0..degree {
                        let z = Complex64::new(coef[(q, 2 * (c * len + p))], coef[(q, 2 * (c * len + p) + 1)]);
                        out[q + 1][c][p] = z;
                        base -= z * at_start[q + 1];
                    }
                    out[0][c][p] = base;
                }
            }
            out
        };

        let zeta = fit_block(velocity.iter().map(|v| v.coeffs()).collect())
            .into_iter()
            .map(|c| VelocityField::from_coeffs(grid, c))
            .collect();
        let theta = fit_block(stress.iter().map(|s| s.coeffs()).collect())
            .into_iter()
            .map(|c| StressField::from_coeffs(grid, c))
            .collect();
        Self::new(basis, zeta, theta)
    }
}
