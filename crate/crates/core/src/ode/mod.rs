//! Dissipative solutions of `u' = F(t, u)` in `ℝⁿ` with a possibly
//! discontinuous `F`: problem setup with the one-sided condition,
//! mollified families, RK4 paths, the abstract inequality and the
//! a-priori bound, plus three demos.

mod demos;
mod path;
mod problem;

pub use demos::{
    affine_forced, linear_decay, rotation_quadratic, run_demo, sign_dt, sign_family, sign_limit, sign_problem,
    write_demo_csv, DemoCase, DemoReport, SgnLevel, CURVE_DEGREE, CURVE_TOLERANCE, DEMO_CURVES, SGN_EPSILONS,
};
pub use path::{abstract_inequality_margin, apriori_bound, integrate, AprioriReport, OdePath, OdeReport, TestCurve};
pub use problem::{
    d_from_decomposition, BilinearFn, Decomposition, MollifiedFamily, OdeProblem, ScalarFn, VectorFn, SETUP_SAMPLES,
};
