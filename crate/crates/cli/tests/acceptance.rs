//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any fails. All tolerances and budgets are pinned
//! below.

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use alphaflow::alpha::TestPair;
use alphaflow::check::{
    alpha_sweep, bound_from, calibrate_gamma, coincidence_check, dissipative_estimate, identity_suite, inequality_margin,
    reference_test_pair, CheckMode, CoincidenceOptions, DEFAULT_SAFETY,
};
use alphaflow::io::{decode_trajectory, encode_trajectory};
use alphaflow::ode::{
    abstract_inequality_margin, apriori_bound, integrate, linear_decay, rotation_quadratic, run_demo, sign_dt,
    sign_family, sign_problem, DemoCase, TestCurve,
};
use alphaflow::solver::{run, SimConfig, Trajectory};
use alphaflow::spectral::Complex64;
use alphaflow::{Grid, PhysicalParams, ScalarField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// criterion 1 and 2
const IDENTITY_TOL: f64 = 1e-10;
const ROUNDTRIP_TOL: f64 = 1e-11;
// criterion 3: measured constant at dt = 1e-3 is about 2.8e3 (E(0) ≈ 128)
const ENERGY_LAW_C: f64 = 1e4;
const MONOTONE_TOL: f64 = 1e-8;
const ENERGY_ORACLE_TOL: f64 = 1e-12;
// criterion 4
const LINEAR_ORACLE_TOL: f64 = 1e-6;
// criterion 5
const GRONWALL_CLOSED_TOL: f64 = 1e-6;
const GRONWALL_COMPARISON_TOL: f64 = 1e-5;
// criterion 6
const ESTIMATE_TOL: f64 = 1e-10;
// criterion 7
const COINCIDENCE_TOL: f64 = 1e-6;
const HALVING_FACTOR: f64 = 2.0;
// criterion 9
const SWEEP_SLACK: f64 = 1e-8;
// criterion 10
const CURVE_TOL: f64 = 1e-8;

fn maxwell_config() -> SimConfig {
    let mut c = SimConfig::new(64, 1.0, 1.0, 1.0, 1e-3, 0.5);
    c.epsilon = 1e-3;
    c.delta = 1.0;
    c.stress_amplitude = 0.5;
    c
}

fn euler_config() -> SimConfig {
    let mut c = SimConfig::new(64, 0.5, 0.0, 1.0, 1e-3, 0.2);
    c.epsilon = 1e-3;
    c.initial_condition = "random-spectrum".into();
    c.seed = 11;
    c
}

/// Smooth short run for the coincidence check: small Taylor-Green data, no
/// initial stress, so that `∫Γ` stays of order ten over the run.
fn smooth_config(dt: f64) -> SimConfig {
    let mut c = SimConfig::new(32, 1.0, 1.0, 1.0, dt, 0.5);
    c.epsilon = 1e-3;
    c.velocity_amplitude = 0.01;
    c
}

/// `Σ_k (1+|k|²)^s |c_k|²` times the Parseval factor of the unnormalized FFT.
fn sobolev_sq(grid: Grid, c: &[Complex64], s: f64) -> f64 {
    let pf = grid.volume() / (grid.len() as f64).powi(2);
    c.iter()
        .enumerate()
        .map(|(i, z)| {
            let k = grid.mode(i);
            let k2 = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) as f64;
            (1.0 + k2).powf(s) * z.norm_sqr()
        })
        .sum::<f64>()
        * pf
}

fn stress_sq(grid: Grid, entries: &[Vec<Complex64>], s: f64) -> f64 {
    entries
        .iter()
        .enumerate()
        .map(|(e, c)| {
            let (i, j) = grid.sym_pair(e);
            let w = if i == j { 1.0 } else { 2.0 };
            w * sobolev_sq(grid, c, s)
        })
        .sum()
}

fn v_norm_sq(grid: Grid, comps: &[Vec<Complex64>], alpha: f64) -> f64 {
    let pf = grid.volume() / (grid.len() as f64).powi(2);
    comps
        .iter()
        .map(|c| {
            c.iter()
                .enumerate()
                .map(|(i, z)| {
                    let k = grid.mode(i);
                    let k2 = (k[0] * k[0] + k[1] * k[1] + k[2] * k[2]) as f64;
                    (1.0 + alpha * alpha * k2) * z.norm_sqr()
                })
                .sum::<f64>()
        })
        .sum::<f64>()
        * pf
}

type Check = fn() -> (bool, String);

fn c1_identities() -> (bool, String) {
    let r = identity_suite(Grid::new(2, 64).unwrap(), 100, 2024, 1.0).unwrap();
    let worst = r.trilinear.max(r.transport).max(r.commutator);
    (
        worst <= IDENTITY_TOL,
        format!(
            "trilinear {:.2e}, transport {:.2e}, commutator {:.2e} (tol {IDENTITY_TOL:.0e})",
            r.trilinear, r.transport, r.commutator
        ),
    )
}

fn c2_roundtrips() -> (bool, String) {
    let r = identity_suite(Grid::new(2, 64).unwrap(), 100, 4096, 0.8).unwrap();
    let worst = r.leray_idempotence.max(r.leray_self_adjoint).max(r.helmholtz_roundtrip);
    (
        worst <= ROUNDTRIP_TOL,
        format!(
            "leray idempotence {:.2e}, self-adjointness {:.2e}, helmholtz {:.2e} (tol {ROUNDTRIP_TOL:.0e})",
            r.leray_idempotence, r.leray_self_adjoint, r.helmholtz_roundtrip
        ),
    )
}

fn c3_energy_law() -> (bool, String) {
    let c = maxwell_config();
    let tr = run(&c).unwrap();
    let grid = tr.grid();
    let p = c.params().unwrap();
    let w = 2.0 * p.mu();
    // independent energy and dissipation from the stored coefficients
    let mut energy = Vec::new();
    let mut rate = Vec::new();
    let mut oracle_err: f64 = 0.0;
    for s in &tr.snapshots {
        let u = s.u.coeffs();
        let sig = s.sigma.coeffs();
        let e = w * v_norm_sq(grid, &u, p.alpha) + stress_sq(grid, &sig, 0.0);
        oracle_err = oracle_err.max((e - s.energy).abs() / e);
        let u3: f64 = u.iter().map(|c| sobolev_sq(grid, c, 3.0)).sum();
        rate.push(-2.0 * w * c.epsilon * u3 - 2.0 * c.delta / p.lambda * stress_sq(grid, &sig, 0.0) - 2.0 * c.epsilon * stress_sq(grid, &sig, 2.0));
        energy.push(e);
    }
    assert_eq!(energy.len(), c.step_count() + 1, "one snapshot per step");
    let e0 = energy[0];
    let mut c_meas: f64 = 0.0;
    let mut worst_increase = f64::NEG_INFINITY;
    for k in 0..energy.len() - 1 {
        let resid = ((energy[k + 1] - energy[k]) / c.dt - 0.5 * (rate[k] + rate[k + 1])).abs();
        c_meas = c_meas.max(resid / (c.dt * c.dt));
        worst_increase = worst_increase.max(energy[k + 1] - energy[k]);
    }
    let pass = c_meas <= ENERGY_LAW_C && worst_increase <= MONOTONE_TOL * e0 && oracle_err <= ENERGY_ORACLE_TOL;
    (
        pass,
        format!(
            "measured C = {c_meas:.3e} (limit {ENERGY_LAW_C:.0e}), max step increase {:.2e}·E(0), energy oracle {oracle_err:.1e}",
            worst_increase / e0
        ),
    )
}

fn c4_linear_oracle() -> (bool, String) {
    let mut c = SimConfig::new(32, 0.7, 1.0, 2.0, 1e-3, 0.1);
    c.epsilon = 1e-2;
    c.delta = 0.0;
    c.scale_initial_data = false;
    c.initial_condition = "random-spectrum".into();
    c.stress_amplitude = 1.0;
    c.seed = 5;
    let tr = run(&c).unwrap();
    assert_eq!(tr.steps.len(), 101);
    let grid = tr.grid();
    let a2 = c.alpha * c.alpha;
    let u0 = tr.snapshots[0].u.coeffs();
    let s0 = tr.snapshots[0].sigma.coeffs();
    let mut worst: f64 = 0.0;
    for snap in &tr.snapshots {
        let t = snap.t;
        let check = |now: Vec<Vec<Complex64>>, init: &[Vec<Complex64>], decay: &dyn Fn(f64) -> f64| -> f64 {
            let mut err: f64 = 0.0;
            let mut scale: f64 = 0.0;
            for (cn, c0) in now.iter().zip(init) {
                for (i, (zn, z0)) in cn.iter().zip(c0).enumerate() {
                    let k = grid.mode(i);
                    let k2 = (k[0] * k[0] + k[1] * k[1]) as f64;
                    let exact = z0 * (-decay(k2) * t).exp();
                    err = err.max((zn - exact).norm());
                    scale = scale.max(exact.norm());
                }
            }
            err / scale
        };
        let eps = c.epsilon;
        worst = worst.max(check(snap.u.coeffs(), &u0, &|k2| eps * (1.0 + k2).powi(3) / (1.0 + a2 * k2)));
        worst = worst.max(check(snap.sigma.coeffs(), &s0, &|k2| eps * (1.0 + k2).powi(2)));
    }
    (worst <= LINEAR_ORACLE_TOL, format!("max relative error {worst:.2e} over 100 steps (tol {LINEAR_ORACLE_TOL:.0e})"))
}

fn rk4_comparison(times: &[f64], f0: f64, l: &dyn Fn(f64) -> f64, m: &dyn Fn(f64) -> f64) -> Vec<f64> {
    let mut g = f0;
    let mut out = vec![g];
    for w in times.windows(2) {
        let sub = 8;
        let h = (w[1] - w[0]) / sub as f64;
        for j in 0..sub {
            let t = w[0] + j as f64 * h;
            let f = |t: f64, g: f64| l(t) * g + m(t);
            let k1 = f(t, g);
            let k2 = f(t + h / 2.0, g + h / 2.0 * k1);
            let k3 = f(t + h / 2.0, g + h / 2.0 * k2);
            let k4 = f(t + h, g + h * k3);
            g += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        out.push(g);
    }
    out
}

fn c5_gronwall() -> (bool, String) {
    let n = 10_000;
    let times: Vec<f64> = (0..n).map(|i| 2.0 * i as f64 / (n - 1) as f64).collect();
    let mut closed: f64 = 0.0;
    for &(f0, l, m) in &[(3.0, 0.0, 0.0), (1.5, 1.0, 0.0), (1.0, 1.0, 2.0), (2.0, 0.5, -0.3)] {
        let b = bound_from(&times, f0, &vec![l; n], &vec![m; n]);
        for (t, bi) in times.iter().zip(&b) {
            let exact = if l == 0.0 { f0 + m * t } else { (f0 + m / l) * (l * t).exp() - m / l };
            closed = closed.max((bi - exact).abs() / exact.abs());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let (a1, a2, w1, w2): (f64, f64, f64, f64) = (rng.random_range(0.1..0.9), rng.random_range(-1.0..1.0), rng.random_range(1.0..5.0), rng.random_range(1.0..5.0));
    let l = move |t: f64| 1.0 + a1 * (w1 * t).sin();
    let m = move |t: f64| a2 * (w2 * t).cos() + 0.2 * t;
    let lv: Vec<f64> = times.iter().map(|&t| l(t)).collect();
    let mv: Vec<f64> = times.iter().map(|&t| m(t)).collect();
    let b = bound_from(&times, 0.7, &lv, &mv);
    let reference = rk4_comparison(&times, 0.7, &l, &m);
    let comparison = b.iter().zip(&reference).map(|(x, y)| (x - y).abs() / y.abs()).fold(0.0, f64::max);
    // a sub-solution f' + χ = L f + M − s, s ≥ 0, must stay below the bound
    let s = |t: f64| 0.5 + 0.5 * (3.0 * t).sin();
    let chi = |t: f64| 0.3 * (1.0 + t);
    let f = rk4_comparison(&times, 0.7, &l, &move |t| m(t) - s(t) - chi(t));
    let chi_int: Vec<f64> = times.iter().map(|&t| 0.3 * (t + 0.5 * t * t)).collect();
    let below = f.iter().zip(&chi_int).zip(&b).all(|((fi, ci), bi)| fi + ci <= *bi + 1e-9 * bi.abs());
    (
        closed <= GRONWALL_CLOSED_TOL && comparison <= GRONWALL_COMPARISON_TOL && below,
        format!("closed forms {closed:.2e} (tol {GRONWALL_CLOSED_TOL:.0e}), comparison equation {comparison:.2e} (tol {GRONWALL_COMPARISON_TOL:.0e}), sub-solution below bound: {below}"),
    )
}

fn zero_checks(tr: &Trajectory, params: &PhysicalParams, gamma: f64) -> (f64, f64, bool) {
    let direct = dissipative_estimate(tr, params, gamma, Some(ESTIMATE_TOL)).unwrap();
    let via_pair = inequality_margin(tr, &TestPair::zero(tr.grid()), params, gamma, CheckMode::for_params(params), Some(ESTIMATE_TOL)).unwrap();
    let e0 = tr.initial_energy();
    (direct.min_margin / e0, via_pair.min_margin / e0, direct.pass && via_pair.pass)
}

fn c6_dissipative_estimate() -> (bool, String) {
    let gamma = calibrate_gamma(Grid::new(2, 64).unwrap(), 200, 0, DEFAULT_SAFETY).unwrap().gamma;
    let mut out = Vec::new();
    let mut pass = true;
    for (label, c) in [("maxwell", maxwell_config()), ("euler-alpha", euler_config())] {
        let tr = run(&c).unwrap();
        let p = c.params().unwrap();
        let (a, b, ok) = zero_checks(&tr, &p, gamma);
        let ok = ok && a >= -ESTIMATE_TOL && b >= -ESTIMATE_TOL;
        pass &= ok;
        // the doubled-γ run is recorded for criterion 8
        let (_, _, ok2) = zero_checks(&tr, &p, 2.0 * gamma);
        pass_with_double(label, ok, ok2);
        out.push(format!("{label}: min margin {:.2e}·E(0)", a.min(b)));
    }
    (pass, format!("{} (tol {ESTIMATE_TOL:.0e})", out.join(", ")))
}

fn sup_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn c7_coincidence() -> (bool, String) {
    let gamma = calibrate_gamma(Grid::new(2, 32).unwrap(), 200, 0, DEFAULT_SAFETY).unwrap().gamma;
    let opts = CoincidenceOptions::default();
    let mut mins = Vec::new();
    let mut sides = Vec::new();
    let mut ok = true;
    let mut g_end = 0.0;
    for dt in [2e-3, 1e-3] {
        let c = smooth_config(dt);
        let (tr, r) = coincidence_check(&c, gamma, opts, Some(COINCIDENCE_TOL)).unwrap();
        let e0 = tr.initial_energy();
        ok &= r.min_margin >= -COINCIDENCE_TOL * e0;
        mins.push(r.min_margin);
        sides.push(sup_abs(&r.lhs).max(sup_abs(&r.rhs)) / e0);
        g_end = *r.gamma_integral.last().unwrap();
        let pair = reference_test_pair(&c, opts).unwrap();
        let doubled = inequality_margin(&tr, &pair, &c.params().unwrap(), 2.0 * gamma, CheckMode::Maxwell, Some(COINCIDENCE_TOL)).unwrap();
        pass_with_double("coincidence", r.pass, doubled.pass);
    }
    let halves_margin = mins[1].abs() <= mins[0].abs() / HALVING_FACTOR;
    let halves_sides = sides[1] <= sides[0] / HALVING_FACTOR;
    (
        ok && halves_margin && halves_sides,
        format!(
            "min margin {:.2e} → {:.2e}, sup|sides|/E(0) {:.2e} → {:.2e} (ratio {:.2}), ∫Γ = {g_end:.2}, gamma {gamma:.3}",
            mins[0],
            mins[1],
            sides[0],
            sides[1],
            sides[0] / sides[1]
        ),
    )
}

static DOUBLED: std::sync::Mutex<Vec<(String, bool, bool)>> = std::sync::Mutex::new(Vec::new());

fn pass_with_double(label: &str, pass: bool, doubled: bool) {
    DOUBLED.lock().unwrap().push((label.to_string(), pass, doubled));
}

fn c8_gamma_monotone() -> (bool, String) {
    let rows = DOUBLED.lock().unwrap().clone();
    let checked: Vec<_> = rows.iter().filter(|r| r.1).collect();
    let pass = !checked.is_empty() && checked.iter().all(|r| r.2);
    (pass, format!("{} passing checks re-run with 2γ, all still pass: {pass}", checked.len()))
}

fn c9_alpha_sweep() -> (bool, String) {
    let base = maxwell_config();
    let report = alpha_sweep(&base, &[1.0, 0.5, 0.25, 0.1], 4).unwrap();
    let mut pass = report.entries.len() == 4;
    let mut parts = Vec::new();
    for e in &report.entries {
        let bounded = e.error.is_none() && e.sup_energy <= e.initial_energy * (1.0 + SWEEP_SLACK);
        let l2 = e.l2_norm.iter().all(|(_, n)| n * n <= e.l2_cap * (1.0 + SWEEP_SLACK));
        pass &= bounded && l2;
        parts.push(format!("α={}: sup E/E(0) = {:.8}", e.alpha, e.sup_energy / e.initial_energy));
    }
    (pass, parts.join(", "))
}

fn c10_abstract_ode() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst = f64::INFINITY;
    let mut apriori = true;
    let smooth = [linear_decay(vec![1.0, -0.5], 1.0).unwrap(), rotation_quadratic(vec![0.6, 0.3], 2.0, 1.0).unwrap()];
    for p in &smooth {
        let path = integrate(p, &p.rhs, 2e-5).unwrap();
        apriori &= apriori_bound(p, &path).holds;
        for _ in 0..50 {
            let coeffs: Vec<Vec<f64>> = (0..4).map(|_| (0..2).map(|_| rng.random_range(-1.0..=1.0)).collect()).collect();
            let v = TestCurve::polynomial(coeffs).unwrap();
            worst = worst.min(abstract_inequality_margin(&path, &v, p).unwrap().min_margin);
        }
    }
    let sgn = sign_problem(vec![1.0], 2.0).unwrap();
    let mut sgn_ok = true;
    let mut errs = Vec::new();
    for eps in [1e-1, 1e-2, 1e-3] {
        let fam = sign_family(&[eps]).unwrap();
        let path = integrate(&sgn, fam.member(eps).unwrap(), sign_dt(eps)).unwrap();
        let err = path
            .times
            .iter()
            .zip(&path.states)
            .map(|(t, x)| (x[0] - (1.0 - t).max(0.0)).abs())
            .fold(0.0, f64::max);
        sgn_ok &= err <= 5.0 * eps * (1.0 + eps.ln().abs());
        apriori &= apriori_bound(&sgn, &path).holds;
        errs.push(format!("{err:.2e}"));
    }
    let demos = [DemoCase::Linear, DemoCase::Rotation, DemoCase::Sgn].iter().all(|&c| run_demo(c, 3).unwrap().pass);
    (
        worst >= -CURVE_TOL && sgn_ok && apriori && demos,
        format!("min curve margin {worst:.2e} (tol -{CURVE_TOL:.0e}), sgn sup-errors [{}], a-priori bound holds: {apriori}, demos pass: {demos}", errs.join(", ")),
    )
}

fn run_cli(args: &[&str], out: &Path) -> i32 {
    Command::new(env!("CARGO_BIN_EXE_alphaflow"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env("SOURCE_DATE_EPOCH", "1700000000")
        .status()
        .unwrap()
        .code()
        .unwrap_or(-1)
}

fn dir_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), std::fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

fn c11_determinism() -> (bool, String) {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = tmp.path().join("config.json");
    std::fs::write(
        &cfg,
        r#"{"grid": {"n": 16}, "alpha": 0.8, "eta": 1.0, "lambda": 2.0, "epsilon": 0.001,
            "dt": 0.002, "t_end": 0.05, "initial_condition": "random-spectrum", "stress_amplitude": 0.3}"#,
    )
    .unwrap();
    let cfg_s = cfg.to_str().unwrap();
    let mut same = true;
    for args in [
        vec!["run", "--config", cfg_s, "--seed", "42"],
        vec!["check", "--mode", "zero-test", "--config", cfg_s, "--seed", "42"],
        vec!["ode-demo", "--case", "rotation", "--seed", "42"],
    ] {
        let a = tmp.path().join(format!("{}-a", args[0]));
        let b = tmp.path().join(format!("{}-b", args[0]));
        same &= run_cli(&args, &a) == 0 && run_cli(&args, &b) == 0;
        same &= dir_bytes(&a) == dir_bytes(&b);
    }
    let bytes = std::fs::read(tmp.path().join("run-a").join("trajectory.bin")).unwrap();
    let traj = decode_trajectory(&bytes).unwrap();
    let reencoded = encode_trajectory(&traj).unwrap();
    let roundtrip = reencoded == bytes;
    // the file holds exactly what a fresh in-process run produces
    let mut config = alphaflow::io::parse_config(&cfg).unwrap();
    config.seed = 42;
    let fresh = run(&config).unwrap();
    let bitwise = fresh.snapshots.len() == traj.snapshots.len()
        && fresh.snapshots.iter().zip(&traj.snapshots).all(|(x, y)| {
            let bits = |fs: &[ScalarField]| fs.iter().flat_map(|f| f.values().iter().map(|v| v.to_bits()).collect::<Vec<u64>>()).collect::<Vec<u64>>();
            x.t.to_bits() == y.t.to_bits()
                && x.energy.to_bits() == y.energy.to_bits()
                && bits(x.u.to_real().components()) == bits(y.u.to_real().components())
                && bits(x.sigma.to_real().entries()) == bits(y.sigma.to_real().entries())
        });
    (
        same && roundtrip && bitwise,
        format!("repeated CLI outputs identical: {same}, trajectory re-encode identical: {roundtrip}, matches in-process run bitwise: {bitwise}"),
    )
}

fn main() {
    let criteria: [(u32, &str, f64, Check); 11] = [
        (1, "identity suite", 30.0, c1_identities),
        (2, "operator round trips", 10.0, c2_roundtrips),
        (3, "discrete energy law", 120.0, c3_energy_law),
        (4, "linear oracle", 30.0, c4_linear_oracle),
        (5, "gronwall self-test", 10.0, c5_gronwall),
        (6, "dissipative estimate", 60.0, c6_dissipative_estimate),
        (7, "coincidence", 180.0, c7_coincidence),
        (8, "gamma monotonicity", 60.0, c8_gamma_monotone),
        (9, "alpha sweep", 300.0, c9_alpha_sweep),
        (10, "abstract ODE suite", 60.0, c10_abstract_ode),
        (11, "determinism and I/O", 30.0, c11_determinism),
    ];
    let mut failures = 0;
    println!("acceptance: {} criteria", criteria.len());
    for (n, name, budget, f) in criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(f));
        let secs = start.elapsed().as_secs_f64();
        let (pass, detail) = match result {
            Ok((pass, detail)) => (pass && secs < budget, detail),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                (false, format!("panicked: {msg}"))
            }
        };
        if !pass {
            failures += 1;
        }
        println!(
            "criterion {n:>2} {:<22} {}  {detail}  [{secs:.1}s, budget {budget:.0}s]",
            name,
            if pass { "PASS" } else { "FAIL" }
        );
    }
    if failures > 0 {
        println!("acceptance: {failures} criterion(s) failed");
        std::process::exit(1);
    }
    println!("acceptance: all criteria passed");
}
