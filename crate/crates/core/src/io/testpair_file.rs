//! JSON description of a test pair.
//!
//! ```json
//! {
//!   "velocity": [{"component": 0, "k": [0, 1], "coeffs": [[0.0, -0.5], [0.1, 0.0]]}],
//!   "stress":   [{"entry": [0, 1], "k": [1, 1], "coeffs": [[0.2, 0.0]]}]
//! }
//! ```
//!
//! Each mode contributes `p(t) e^{ik·x} + c.c.` where `p(t) = Σ_j c_j t^j`
//! has complex coefficients `c_j = [re, im]`.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::alpha::{TestPair, TimeBasis};
use crate::error::{Error, Result};
use crate::fields::{StressField, VelocityField};
use crate::spectral::Grid;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VelocityMode {
    pub component: usize,
    pub k: Vec<i64>,
    pub coeffs: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StressMode {
    pub entry: [usize; 2],
    pub k: Vec<i64>,
    pub coeffs: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TestPairSpec {
    #[serde(default)]
    pub velocity: Vec<VelocityMode>,
    #[serde(default)]
    pub stress: Vec<StressMode>,
}

fn place(
    grid: Grid,
    target: &mut Vec<Vec<Vec<Complex64>>>,
    slot: usize,
    slots: usize,
    k: &[i64],
    coeffs: &[[f64; 2]],
) -> Result<()> {
    if k.len() != grid.dim() {
        return Err(Error::Contract(format!("wavevector {k:?} does not have {} entries", grid.dim())));
    }
    let cutoff = grid.dealias_cutoff() as i64;
    if k.iter().any(|x| x.abs() > cutoff) {
        return Err(Error::Contract(format!("wavevector {k:?} exceeds the resolved band |k_i| <= {cutoff}")));
    }
    let scale = grid.len() as f64;
    let plus = grid.mode_index(k);
    let minus_k: Vec<i64> = k.iter().map(|x| -x).collect();
    let minus = grid.mode_index(&minus_k);
    for (j, c) in coeffs.iter().enumerate() {
        while target.len() <= j {
            target.push(vec![vec![Complex64::default(); grid.len()]; slots]);
        }
        let z = Complex64::new(c[0], c[1]) * scale;
        target[j][slot][plus] += z;
        target[j][slot][minus] += z.conj();
    }
    Ok(())
}

/// Builds a monomial-in-time test pair; velocity coefficients of every
/// degree must be divergence-free.
pub fn parse_test_pair(spec: &TestPairSpec, grid: Grid) -> Result<TestPair> {
    let mut zeta: Vec<Vec<Vec<Complex64>>> = Vec::new();
    let mut theta: Vec<Vec<Vec<Complex64>>> = Vec::new();
    for m in &spec.velocity {
        if m.component >= grid.dim() {
            return Err(Error::Contract(format!("velocity component {} out of range", m.component)));
        }
        if m.k.iter().all(|&x| x == 0) {
            return Err(Error::Contract("velocity test modes must have k != 0 (zero mean)".into()));
        }
        place(grid, &mut zeta, m.component, grid.dim(), &m.k, &m.coeffs)?;
    }
    for m in &spec.stress {
        let [i, j] = m.entry;
        if i >= grid.dim() || j >= grid.dim() {
            return Err(Error::Contract(format!("stress entry {:?} out of range", m.entry)));
        }
        place(grid, &mut theta, grid.sym_index(i, j), grid.sym_len(), &m.k, &m.coeffs)?;
    }
    let zeta = zeta
        .into_iter()
        .map(|c| {
            let f = VelocityField::from_coeffs(grid, c);
            VelocityField::new(f.components().to_vec())
        })
        .collect::<Result<Vec<_>>>()?;
    let theta = theta.into_iter().map(|c| StressField::from_coeffs(grid, c)).collect();
    if spec.velocity.is_empty() && spec.stress.is_empty() {
        return Ok(TestPair::zero(grid));
    }
    TestPair::new(TimeBasis::Monomial, zeta, theta)
}

pub fn read_test_pair(path: impl AsRef<Path>, grid: Grid) -> Result<TestPair> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let spec: TestPairSpec = serde_json::from_str(&text).map_err(|e| Error::Config(e.to_string()))?;
    parse_test_pair(&spec, grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_mode_is_real_sine() {
        let g = Grid::new(2, 16).unwrap();
        // p e^{i x₂} + c.c. with p = -i/2 gives sin x₂
        let spec: TestPairSpec = serde_json::from_str(
            r#"{"velocity": [{"component": 0, "k": [0, 1], "coeffs": [[0.0, -0.5], [0.0, -1.0]]}]}"#,
        )
        .unwrap();
        let pair = parse_test_pair(&spec, g).unwrap();
        let t = 0.5;
        let z = pair.zeta(t);
        let vals = z.components()[0].values();
        for i in 0..g.len() {
            let x = g.coords(i);
            assert!((vals[i] - (1.0 + 2.0 * t) * x[1].sin()).abs() < 1e-12);
        }
        let d = pair.zeta_dt(t);
        assert!((d.components()[0].values()[g.ravel(&[0, 4])] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn divergent_mode_rejected() {
        let g = Grid::new(2, 16).unwrap();
        let spec: TestPairSpec =
            serde_json::from_str(r#"{"velocity": [{"component": 0, "k": [1, 0], "coeffs": [[1.0, 0.0]]}]}"#).unwrap();
        assert!(parse_test_pair(&spec, g).is_err());
    }

    #[test]
    fn stress_entry_is_symmetric() {
        let g = Grid::new(2, 16).unwrap();
        let spec: TestPairSpec =
            serde_json::from_str(r#"{"stress": [{"entry": [1, 0], "k": [1, 1], "coeffs": [[0.5, 0.0]]}]}"#).unwrap();
        let pair = parse_test_pair(&spec, g).unwrap();
        let th = pair.theta(0.0);
        assert!(th.entry(0, 1).max_abs() > 0.9);
        assert!(pair.zeta(0.0).norm(0.0) == 0.0);
    }
}
