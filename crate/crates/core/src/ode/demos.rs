use std::io::Write;
use std::str::FromStr;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::io::format_f64;

use super::path::{abstract_inequality_margin, apriori_bound, integrate, OdePath, TestCurve};
use super::problem::{d_from_decomposition, norm_sq, Decomposition, BilinearFn, MollifiedFamily, OdeProblem, ScalarFn, VectorFn};

/// Random polynomial test curves per demo.
pub const DEMO_CURVES: usize = 50;
/// Degree of those curves.
pub const CURVE_DEGREE: usize = 3;
/// Absolute slack on the abstract inequality for the smooth demos.
pub const CURVE_TOLERANCE: f64 = 1e-8;
/// Mollification levels of the sign demo.
pub const SGN_EPSILONS: [f64; 3] = [1e-1, 1e-2, 1e-3];

const SMOOTH_DT: f64 = 2e-5;
const SMOOTH_HORIZON: f64 = 1.0;
const SGN_HORIZON: f64 = 2.0;

fn zero_d() -> ScalarFn {
    Arc::new(|_, _| 0.0)
}

/// `x' = −x`. Dissipative with `d ≡ 0`.
pub fn linear_decay(initial: Vec<f64>, horizon: f64) -> Result<OdeProblem> {
    let dim = initial.len();
    let rhs: VectorFn = Arc::new(|_, x| x.iter().map(|v| -v).collect());
    let problem = OdeProblem::new(dim, rhs.clone(), zero_d(), initial, horizon)?;
    problem.with_decomposition(Decomposition {
        linear: rhs,
        bilinear: Arc::new(move |_, _, _| vec![0.0; dim]),
        c: Arc::new(|_| 0.0),
    })
}

/// Planar rotation with angular speed `omega` plus the energy-neutral
/// quadratic term `f(x, y) = (x₁y₂, −x₁y₁)`, so `c ≡ 1` and `d(t, y) = 2‖y‖`.
pub fn rotation_quadratic(initial: Vec<f64>, omega: f64, horizon: f64) -> Result<OdeProblem> {
    if initial.len() != 2 {
        return Err(Error::Contract("rotation demo is two-dimensional".into()));
    }
    let linear: VectorFn = Arc::new(move |_, x| vec![-omega * x[1], omega * x[0]]);
    let bilinear: BilinearFn = Arc::new(|_, x, y| vec![x[0] * y[1], -x[0] * y[0]]);
    let (l2, b2) = (linear.clone(), bilinear.clone());
    let rhs: VectorFn = Arc::new(move |t, x| {
        let mut out = l2(t, x);
        for (o, b) in out.iter_mut().zip(b2(t, x, x)) {
            *o += b;
        }
        out
    });
    let d: ScalarFn = Arc::new(|_, y| 2.0 * norm_sq(y).sqrt());
    let problem = OdeProblem::new(2, rhs, d, initial, horizon)?;
    problem.with_decomposition(Decomposition {
        linear,
        bilinear,
        c: Arc::new(|_| 1.0),
    })
}

/// `x' = −x + sin t` in every component.
pub fn affine_forced(initial: Vec<f64>, horizon: f64) -> Result<OdeProblem> {
    let rhs: VectorFn = Arc::new(|t, x| x.iter().map(|v| -v + t.sin()).collect());
    OdeProblem::new(initial.len(), rhs, zero_d(), initial, horizon)
}

fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// `x' = −sgn(x)` componentwise, with `sgn(0) = 0`. Discontinuous, `d ≡ 0`.
pub fn sign_problem(initial: Vec<f64>, horizon: f64) -> Result<OdeProblem> {
    let rhs: VectorFn = Arc::new(|_, x| x.iter().map(|&v| -sgn(v)).collect());
    OdeProblem::new(initial.len(), rhs, zero_d(), initial, horizon)
}

/// `F_ε(x) = −tanh(x/ε)`.
pub fn sign_family(epsilons: &[f64]) -> Result<MollifiedFamily> {
    MollifiedFamily::new(
        epsilons
            .iter()
            .map(|&e| {
                let f: VectorFn = Arc::new(move |_, x| x.iter().map(|v| -(v / e).tanh()).collect());
                (e, f)
            })
            .collect(),
    )
}

/// RK4 step used for the sign demo at level `epsilon`; the mollified
/// equation is stiff on the scale `ε` near the origin.
pub fn sign_dt(epsilon: f64) -> f64 {
    (epsilon / 20.0).min(1e-3)
}

/// `max(0, a − t)` for `a ≥ 0`, the regular solution of `x' = −sgn(x)`.
pub fn sign_limit(a: f64, t: f64) -> f64 {
    (a - t).max(0.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DemoCase {
    Linear,
    Rotation,
    Sgn,
}

impl FromStr for DemoCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(DemoCase::Linear),
            "rotation" => Ok(DemoCase::Rotation),
            "sgn" => Ok(DemoCase::Sgn),
            other => Err(Error::Config(format!("unknown ODE demo `{other}` (expected linear, rotation or sgn)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SgnLevel {
    pub epsilon: f64,
    /// `sup_t |x_ε(t) − max(0, 1 − t)|`
    pub sup_error: f64,
    /// `5ε(1 + |ln ε|)`
    pub allowed: f64,
    /// `sup_t |x_ε(t) − x_{ε/2}(t)|`
    pub half_distance: f64,
    /// Inequality margin of the path against the regular solution.
    pub coincidence_margin: f64,
    pub apriori_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DemoReport {
    pub case: DemoCase,
    /// Path written to CSV (finest level for the sign demo).
    pub path: OdePath,
    pub bound: Vec<f64>,
    pub apriori_holds: bool,
    pub curves: usize,
    pub min_curve_margin: Option<f64>,
    pub sgn_levels: Vec<SgnLevel>,
    pub pass: bool,
}

fn curve_margins(problem: &OdeProblem, path: &OdePath, seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::INFINITY;
    for _ in 0..DEMO_CURVES {
        let curve = TestCurve::random_polynomial(problem.dimension, CURVE_DEGREE, &mut rng);
        worst = worst.min(abstract_inequality_margin(path, &curve, problem)?.min_margin);
    }
    Ok(worst)
}

fn smooth_demo(case: DemoCase, problem: OdeProblem, seed: u64) -> Result<DemoReport> {
    // d_from_decomposition doubles as the sampled (F(t,x), x) ≤ 0 check
    d_from_decomposition(&problem)?;
    let path = integrate(&problem, &problem.rhs, SMOOTH_DT)?;
    let apriori = apriori_bound(&problem, &path);
    let min_margin = curve_margins(&problem, &path, seed)?;
    Ok(DemoReport {
        case,
        pass: apriori.holds && min_margin >= -CURVE_TOLERANCE,
        path,
        bound: apriori.bound,
        apriori_holds: apriori.holds,
        curves: DEMO_CURVES,
        min_curve_margin: Some(min_margin),
        sgn_levels: Vec::new(),
    })
}

fn sgn_demo() -> Result<DemoReport> {
    let problem = sign_problem(vec![1.0], SGN_HORIZON)?;
    let mut levels_eps: Vec<f64> = SGN_EPSILONS.to_vec();
    levels_eps.extend(SGN_EPSILONS.iter().map(|e| e / 2.0));
    let family = sign_family(&levels_eps)?;
    let regular = TestCurve::new(
        1,
        Arc::new(|t| vec![sign_limit(1.0, t)]),
        Arc::new(|t| vec![if t < 1.0 { -1.0 } else { 0.0 }]),
    );
    let mut levels = Vec::new();
    let mut finest = None;
    for &eps in &SGN_EPSILONS {
        let dt = sign_dt(eps / 2.0);
        let path = integrate(&problem, family.member(eps).expect("level present"), dt)?;
        let half = integrate(&problem, family.member(eps / 2.0).expect("level present"), dt)?;
        let half_distance = path
            .states
            .iter()
            .zip(&half.states)
            .map(|(a, b)| (a[0] - b[0]).abs())
            .fold(0.0, f64::max);
        let sup_error = path.sup_distance(|t| vec![sign_limit(1.0, t)]);
        let apriori = apriori_bound(&problem, &path);
        let coincidence = abstract_inequality_margin(&path, &regular, &problem)?;
        levels.push(SgnLevel {
            epsilon: eps,
            sup_error,
            allowed: 5.0 * eps * (1.0 + eps.ln().abs()),
            half_distance,
            coincidence_margin: coincidence.min_margin,
            apriori_holds: apriori.holds,
        });
        finest = Some((path, apriori));
    }
    let (path, apriori) = finest.expect("at least one level");
    let converging = levels.windows(2).all(|w| w[1].half_distance < w[0].half_distance);
    let pass = converging && levels.iter().all(|l| l.sup_error <= l.allowed && l.apriori_holds);
    Ok(DemoReport {
        case: DemoCase::Sgn,
        path,
        bound: apriori.bound,
        apriori_holds: levels.iter().all(|l| l.apriori_holds),
        curves: 0,
        min_curve_margin: None,
        sgn_levels: levels,
        pass,
    })
}

/// Runs one of the three demos end to end.
pub fn run_demo(case: DemoCase, seed: u64) -> Result<DemoReport> {
    match case {
        DemoCase::Linear => smooth_demo(case, linear_decay(vec![1.0, -0.5], SMOOTH_HORIZON)?, seed),
        DemoCase::Rotation => smooth_demo(case, rotation_quadratic(vec![0.6, 0.3], 2.0, SMOOTH_HORIZON)?, seed),
        DemoCase::Sgn => sgn_demo(),
    }
}

/// CSV with columns `t, x1, …, xn, bound`.
pub fn write_demo_csv(report: &DemoReport, out: &mut impl Write) -> std::io::Result<()> {
    let dim = report.path.states.first().map(Vec::len).unwrap_or(0);
    let mut header = vec!["t".to_string()];
    header.extend((1..=dim).map(|i| format!("x{i}")));
    header.push("bound".into());
    writeln!(out, "{}", header.join(","))?;
    for ((t, x), b) in report.path.times.iter().zip(&report.path.states).zip(&report.bound) {
        let mut row = vec![format_f64(*t)];
        row.extend(x.iter().map(|v| format_f64(*v)));
        row.push(format_f64(*b));
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}
