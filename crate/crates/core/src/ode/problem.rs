use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Right-hand side `F(t, x)`.
pub type VectorFn = Arc<dyn Fn(f64, &[f64]) -> Vec<f64> + Send + Sync>;
/// Scalar function of `(t, y)`, used for the one-sided bound `d`.
pub type ScalarFn = Arc<dyn Fn(f64, &[f64]) -> f64 + Send + Sync>;
/// Bilinear part `f(t, x, y)`.
pub type BilinearFn = Arc<dyn Fn(f64, &[f64], &[f64]) -> Vec<f64> + Send + Sync>;

/// Triples sampled when a problem is constructed.
pub const SETUP_SAMPLES: usize = 1000;

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm_sq(a: &[f64]) -> f64 {
    dot(a, a)
}

pub(crate) fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn random_point(rng: &mut ChaCha8Rng, dim: usize, radius: f64) -> Vec<f64> {
    (0..dim).map(|_| rng.random_range(-radius..=radius)).collect()
}

/// `F(t, x) = A(t)x + f(t, x, x)` with `‖f(t, x, y)‖ ≤ c(t)‖x‖‖y‖`.
#[derive(Clone)]
pub struct Decomposition {
    pub linear: VectorFn,
    pub bilinear: BilinearFn,
    pub c: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

/// Cauchy problem `u' = F(t, u)`, `u(0) = a` on `[0, horizon]` in `ℝ^dimension`.
///
/// `d_bound` must satisfy `(F(t,x) − F(t,y), x − y) ≤ d(t,y)‖x − y‖²`.
/// The constructor spot-checks this on random triples and refuses the
/// problem if a sample violates it.
#[derive(Clone)]
pub struct OdeProblem {
    pub dimension: usize,
    pub rhs: VectorFn,
    pub d_bound: ScalarFn,
    pub decomposition: Option<Decomposition>,
    pub initial: Vec<f64>,
    pub horizon: f64,
}

impl fmt::Debug for OdeProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OdeProblem")
            .field("dimension", &self.dimension)
            .field("initial", &self.initial)
            .field("horizon", &self.horizon)
            .field("decomposed", &self.decomposition.is_some())
            .finish()
    }
}

impl OdeProblem {
    pub fn new(dimension: usize, rhs: VectorFn, d_bound: ScalarFn, initial: Vec<f64>, horizon: f64) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::Contract("ODE dimension must be positive".into()));
        }
        if initial.len() != dimension {
            return Err(Error::Contract(format!(
                "initial point has {} components, problem dimension is {dimension}",
                initial.len()
            )));
        }
        if !(horizon >= 0.0 && horizon.is_finite()) {
            return Err(Error::Contract(format!("horizon must be finite and nonnegative, got {horizon}")));
        }
        let problem = OdeProblem {
            dimension,
            rhs,
            d_bound,
            decomposition: None,
            initial,
            horizon,
        };
        problem.check_one_sided(SETUP_SAMPLES, 0)?;
        Ok(problem)
    }

    /// Attaches a linear-plus-bilinear splitting after checking on samples
    /// that it reproduces `F`.
    pub fn with_decomposition(mut self, decomposition: Decomposition) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(0xdec0);
        let radius = self.sample_radius();
        for _ in 0..SETUP_SAMPLES {
            let t = rng.random_range(0.0..=self.horizon.max(1.0));
            let x = random_point(&mut rng, self.dimension, radius);
            let mut split = (decomposition.linear)(t, &x);
            for (s, b) in split.iter_mut().zip((decomposition.bilinear)(t, &x, &x)) {
                *s += b;
            }
            let full = (self.rhs)(t, &x);
            let err = norm_sq(&sub(&split, &full)).sqrt();
            if err > 1e-12 * (1.0 + norm_sq(&full).sqrt()) {
                return Err(Error::Contract(format!(
                    "decomposition does not reproduce F at t = {t}: mismatch {err:.3e}"
                )));
            }
        }
        self.decomposition = Some(decomposition);
        Ok(self)
    }

    fn sample_radius(&self) -> f64 {
        2.0 * norm_sq(&self.initial).sqrt().max(1.0)
    }

    /// Samples `samples` triples `(t, x, y)` and returns the largest excess of
    /// `(F(t,x) − F(t,y), x − y)` over `d(t,y)‖x − y‖²`. Errors if any
    /// excess is above roundoff.
    pub fn check_one_sided(&self, samples: usize, seed: u64) -> Result<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let radius = self.sample_radius();
        let mut worst = f64::NEG_INFINITY;
        for _ in 0..samples {
            let t = rng.random_range(0.0..=self.horizon.max(1.0));
            let x = random_point(&mut rng, self.dimension, radius);
            let y = if rng.random_bool(0.1) {
                vec![0.0; self.dimension]
            } else {
                random_point(&mut rng, self.dimension, radius)
            };
            let z = sub(&x, &y);
            let df = sub(&(self.rhs)(t, &x), &(self.rhs)(t, &y));
            let lhs = dot(&df, &z);
            let rhs = (self.d_bound)(t, &y) * norm_sq(&z);
            let excess = lhs - rhs;
            worst = worst.max(excess);
            if excess > 1e-12 * (1.0 + lhs.abs() + rhs.abs()) {
                return Err(Error::Contract(format!(
                    "one-sided condition fails at t = {t}: (F(x)-F(y), x-y) = {lhs:.6e} > d|x-y|^2 = {rhs:.6e}"
                )));
            }
        }
        Ok(worst)
    }
}

/// `d(t, y) = 2c(t)‖y‖`, available when `F` is split into a linear part and a
/// bounded bilinear part and `(F(t,x), x) ≤ 0` (checked on samples).
pub fn d_from_decomposition(problem: &OdeProblem) -> Result<ScalarFn> {
    let dec = problem
        .decomposition
        .as_ref()
        .ok_or_else(|| Error::Contract("problem has no linear + bilinear decomposition".into()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xd1);
    let radius = problem.sample_radius();
    for _ in 0..SETUP_SAMPLES {
        let t = rng.random_range(0.0..=problem.horizon.max(1.0));
        let x = random_point(&mut rng, problem.dimension, radius);
        let p = dot(&(problem.rhs)(t, &x), &x);
        if p > 1e-12 * (1.0 + norm_sq(&x)) {
            return Err(Error::Contract(format!("(F(t,x), x) = {p:.3e} > 0 at t = {t}")));
        }
    }
    let c = dec.c.clone();
    Ok(Arc::new(move |t, y: &[f64]| 2.0 * c(t) * norm_sq(y).sqrt()))
}

/// Smooth approximations `F_ε` of a possibly discontinuous right-hand side.
#[derive(Clone)]
pub struct MollifiedFamily {
    members: Vec<(f64, VectorFn)>,
}

impl fmt::Debug for MollifiedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MollifiedFamily").field("epsilons", &self.epsilons()).finish()
    }
}

impl MollifiedFamily {
    pub fn new(members: Vec<(f64, VectorFn)>) -> Result<Self> {
        if members.iter().any(|(e, _)| !(*e > 0.0)) {
            return Err(Error::Contract("mollification parameters must be positive".into()));
        }
        Ok(MollifiedFamily { members })
    }

    pub fn epsilons(&self) -> Vec<f64> {
        self.members.iter().map(|m| m.0).collect()
    }

    pub fn member(&self, epsilon: f64) -> Option<&VectorFn> {
        self.members.iter().find(|m| m.0 == epsilon).map(|m| &m.1)
    }

    /// `max ‖F_ε − F‖` over the probe points.
    pub fn distance(&self, epsilon: f64, exact: &VectorFn, probes: &[(f64, Vec<f64>)]) -> Option<f64> {
        let f = self.member(epsilon)?;
        Some(
            probes
                .iter()
                .map(|(t, x)| norm_sq(&sub(&f(*t, x), &exact(*t, x))).sqrt())
                .fold(0.0, f64::max),
        )
    }

    /// Largest sampled difference quotient of `F_ε` on the ball of the given
    /// radius. Finite for every smooth member.
    pub fn lipschitz_estimate(&self, epsilon: f64, dimension: usize, radius: f64, horizon: f64, samples: usize, seed: u64) -> Option<f64> {
        let f = self.member(epsilon)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best: f64 = 0.0;
        for _ in 0..samples {
            let t = rng.random_range(0.0..=horizon.max(1.0));
            let x = random_point(&mut rng, dimension, radius);
            let y = random_point(&mut rng, dimension, radius);
            let dx = norm_sq(&sub(&x, &y)).sqrt();
            if dx > 0.0 {
                best = best.max(norm_sq(&sub(&f(t, &x), &f(t, &y))).sqrt() / dx);
            }
        }
        Some(best)
    }
}
