use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::check::bound_from;
use crate::error::{Error, Result};

use super::problem::{dot, norm_sq, sub, OdeProblem, VectorFn};

/// Fixed-step discrete solution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OdePath {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
}

impl OdePath {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `max_k ‖x_k − g(t_k)‖`.
    pub fn sup_distance(&self, g: impl Fn(f64) -> Vec<f64>) -> f64 {
        self.times
            .iter()
            .zip(&self.states)
            .map(|(&t, x)| norm_sq(&sub(x, &g(t))).sqrt())
            .fold(0.0, f64::max)
    }
}

/// Classical RK4 for `x' = rhs(t, x)` from the problem's initial point over
/// its horizon. The step is `horizon / round(horizon / dt)`.
pub fn integrate(problem: &OdeProblem, rhs: &VectorFn, dt: f64) -> Result<OdePath> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::Contract(format!("time step must be positive, got {dt}")));
    }
    let steps = if problem.horizon == 0.0 {
        0
    } else {
        ((problem.horizon / dt).round() as usize).max(1)
    };
    let h = if steps == 0 { 0.0 } else { problem.horizon / steps as f64 };
    let mut times = Vec::with_capacity(steps + 1);
    let mut states = Vec::with_capacity(steps + 1);
    let mut x = problem.initial.clone();
    times.push(0.0);
    states.push(x.clone());
    let axpy = |x: &[f64], a: f64, k: &[f64]| -> Vec<f64> { x.iter().zip(k).map(|(x, k)| x + a * k).collect() };
    for step in 0..steps {
        let t = step as f64 * h;
        let k1 = rhs(t, &x);
        let k2 = rhs(t + 0.5 * h, &axpy(&x, 0.5 * h, &k1));
        let k3 = rhs(t + 0.5 * h, &axpy(&x, 0.5 * h, &k2));
        let k4 = rhs(t + h, &axpy(&x, h, &k3));
        for i in 0..x.len() {
            x[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::OdeBlowup { t, step: step + 1 });
        }
        times.push((step + 1) as f64 * h);
        states.push(x.clone());
    }
    Ok(OdePath { times, states })
}

type CurveFn = Arc<dyn Fn(f64) -> Vec<f64> + Send + Sync>;

/// Differentiable test curve `v` with its exact derivative.
#[derive(Clone)]
pub struct TestCurve {
    dimension: usize,
    value: CurveFn,
    derivative: CurveFn,
}

impl fmt::Debug for TestCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestCurve").field("dimension", &self.dimension).finish_non_exhaustive()
    }
}

impl TestCurve {
    pub fn new(dimension: usize, value: CurveFn, derivative: CurveFn) -> Self {
        TestCurve { dimension, value, derivative }
    }

    pub fn zero(dimension: usize) -> Self {
        let z: CurveFn = Arc::new(move |_| vec![0.0; dimension]);
        TestCurve::new(dimension, z.clone(), z)
    }

    /// `v(t) = Σ_p coeffs[p] t^p`.
    pub fn polynomial(coeffs: Vec<Vec<f64>>) -> Result<Self> {
        let dimension = coeffs.first().map(Vec::len).unwrap_or(0);
        if dimension == 0 || coeffs.iter().any(|c| c.len() != dimension) {
            return Err(Error::Contract("polynomial coefficients must be nonempty vectors of equal length".into()));
        }
        let coeffs = Arc::new(coeffs);
        let c1 = coeffs.clone();
        let value: CurveFn = Arc::new(move |t| {
            let mut out = vec![0.0; dimension];
            for c in c1.iter().rev() {
                for (o, ci) in out.iter_mut().zip(c) {
                    *o = *o * t + ci;
                }
            }
            out
        });
        let derivative: CurveFn = Arc::new(move |t| {
            let mut out = vec![0.0; dimension];
            for (p, c) in coeffs.iter().enumerate().skip(1).rev() {
                for (o, ci) in out.iter_mut().zip(c) {
                    *o = *o * t + p as f64 * ci;
                }
            }
            out
        });
        Ok(TestCurve::new(dimension, value, derivative))
    }

    /// Polynomial of the given degree with coefficients uniform in `[-1, 1]`.
    pub fn random_polynomial(dimension: usize, degree: usize, rng: &mut impl Rng) -> Self {
        let coeffs = (0..=degree)
            .map(|_| (0..dimension).map(|_| rng.random_range(-1.0..=1.0)).collect())
            .collect();
        TestCurve::polynomial(coeffs).expect("dimension is positive")
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn value(&self, t: f64) -> Vec<f64> {
        (self.value)(t)
    }

    pub fn derivative(&self, t: f64) -> Vec<f64> {
        (self.derivative)(t)
    }
}

/// Both sides of the abstract dissipative inequality along a path.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OdeReport {
    pub t: Vec<f64>,
    /// `‖u(t) − v(t)‖²`
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    pub margin: Vec<f64>,
    pub min_margin: f64,
}

/// Evaluates `‖u − v‖²` against
/// `exp(∫2d(s,v))[‖a − v(0)‖² + 2∫exp(−∫₀ˢ2d)(E(s,v), u − v) ds]`
/// with `E(t, v) = −v' + F(t, v)`, integrals trapezoidal on the path grid.
pub fn abstract_inequality_margin(path: &OdePath, test: &TestCurve, problem: &OdeProblem) -> Result<OdeReport> {
    if test.dimension() != problem.dimension {
        return Err(Error::Contract(format!(
            "test curve has dimension {}, problem has {}",
            test.dimension(),
            problem.dimension
        )));
    }
    let n = path.len();
    let mut lhs = Vec::with_capacity(n);
    let mut l = Vec::with_capacity(n);
    let mut m = Vec::with_capacity(n);
    for (&t, u) in path.times.iter().zip(&path.states) {
        let v = test.value(t);
        let z = sub(u, &v);
        let e = sub(&(problem.rhs)(t, &v), &test.derivative(t));
        lhs.push(norm_sq(&z));
        l.push(2.0 * (problem.d_bound)(t, &v));
        m.push(2.0 * dot(&e, &z));
    }
    let f0 = norm_sq(&sub(&problem.initial, &test.value(0.0)));
    let rhs = bound_from(&path.times, f0, &l, &m);
    let margin: Vec<f64> = rhs.iter().zip(&lhs).map(|(r, l)| r - l).collect();
    let min_margin = crate::check::min_or_nan(&margin);
    Ok(OdeReport {
        t: path.times.clone(),
        lhs,
        rhs,
        margin,
        min_margin,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AprioriReport {
    pub t: Vec<f64>,
    pub norm_sq: Vec<f64>,
    pub bound: Vec<f64>,
    pub holds: bool,
}

/// Checks `‖u(t)‖² ≤ exp(∫2(d(s,0)+¼))[‖a‖² + 2∫exp(−∫₀ˢ2(d+¼))‖F(s,0)‖² ds]`
/// along the path. Roundoff slack: `1e-12·max(1, bound)`.
pub fn apriori_bound(problem: &OdeProblem, path: &OdePath) -> AprioriReport {
    let zero = vec![0.0; problem.dimension];
    let l: Vec<f64> = path.times.iter().map(|&t| 2.0 * ((problem.d_bound)(t, &zero) + 0.25)).collect();
    let m: Vec<f64> = path.times.iter().map(|&t| 2.0 * norm_sq(&(problem.rhs)(t, &zero))).collect();
    let bound = bound_from(&path.times, norm_sq(&problem.initial), &l, &m);
    let norms: Vec<f64> = path.states.iter().map(|x| norm_sq(x)).collect();
    let holds = norms.iter().zip(&bound).all(|(n, b)| *n <= b + 1e-12 * b.max(1.0));
    // NaN bounds compare false above, so `holds` is already false for them
    AprioriReport {
        t: path.times.clone(),
        norm_sq: norms,
        bound,
        holds,
    }
}
