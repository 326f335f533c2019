use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use alphaflow::check::{
    alpha_sweep, calibrate_gamma, coincidence_check, dissipative_estimate, gronwall_selftest, identity_suite,
    inequality_margin, CheckMode, CoincidenceOptions, DissipativeReport, DEFAULT_SAFETY,
};
use alphaflow::io::{parse_config, read_test_pair, report_rows, write_json, write_report_csv, write_trajectory};
use alphaflow::ode::{run_demo, write_demo_csv, DemoCase, SgnLevel};
use alphaflow::solver::run;
use alphaflow::{Error, Grid, Result, SimConfig, Trajectory};
use serde::Serialize;

use crate::manifest::{self, Manifest};
use crate::{CheckKind, Cli, Command, DemoArg, Outcome};

/// Samples used when γ has to be calibrated on the fly.
const GAMMA_SAMPLES: usize = 200;

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Run => "run",
        Command::Check { .. } => "check",
        Command::Identities { .. } => "identities",
        Command::GronwallSelftest { .. } => "gronwall-selftest",
        Command::CalibrateGamma { .. } => "calibrate-gamma",
        Command::SweepAlpha { .. } => "sweep-alpha",
        Command::OdeDemo { .. } => "ode-demo",
    }
}

fn check_name(k: CheckKind) -> &'static str {
    match k {
        CheckKind::ZeroTest => "zero-test",
        CheckKind::SelfTest => "self-test",
        CheckKind::TestPair => "test-pair",
    }
}

fn io_err(path: &Path, source: std::io::Error) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn load_config(cli: &Cli) -> Result<Option<SimConfig>> {
    let Some(path) = &cli.global.config else {
        return Ok(None);
    };
    let mut config = parse_config(path)?;
    if let Some(seed) = cli.global.seed {
        config.seed = seed;
    }
    Ok(Some(config))
}

fn require<'a>(config: &'a Option<SimConfig>, command: &str) -> Result<&'a SimConfig> {
    config
        .as_ref()
        .ok_or_else(|| Error::Config(format!("`{command}` needs --config")))
}

fn resolve_gamma(cli: &Cli, grid: Grid) -> Result<f64> {
    match cli.global.gamma {
        Some(g) if g > 0.0 && g.is_finite() => Ok(g),
        Some(g) => Err(Error::InvalidKey {
            key: "gamma".into(),
            reason: format!("must be positive and finite, got {g}"),
        }),
        None => Ok(calibrate_gamma(grid, GAMMA_SAMPLES, cli.global.seed.unwrap_or(0), DEFAULT_SAFETY)?.gamma),
    }
}

#[derive(Serialize)]
struct CheckSummary<'a> {
    mode: &'a str,
    initial_energy: f64,
    report: &'a DissipativeReport,
}

#[derive(Serialize)]
struct RunSummary<'a> {
    steps: usize,
    snapshots: usize,
    t_end: f64,
    initial_energy: f64,
    final_energy: f64,
    /// Largest single-step energy change `E_{n+1} − E_n`.
    max_energy_step: f64,
    dissipative_estimate: &'a DissipativeReport,
}

#[derive(Serialize)]
struct BlowupSummary {
    t: f64,
    step: u64,
    mode: [i64; 3],
    message: String,
}

#[derive(Serialize)]
struct DemoSummary<'a> {
    case: DemoCase,
    apriori_holds: bool,
    curves: usize,
    min_curve_margin: Option<f64>,
    sgn_levels: &'a [SgnLevel],
    pass: bool,
}

fn write_check(out: &Path, mode: &str, traj: &Trajectory, report: &DissipativeReport) -> Result<()> {
    write_report_csv(out.join("report.csv"), &report_rows(traj, report)?)?;
    write_json(
        out.join("summary.json"),
        &CheckSummary {
            mode,
            initial_energy: traj.initial_energy(),
            report,
        },
    )
}

fn run_or_record(config: &SimConfig, out: &Path) -> Result<Trajectory> {
    match run(config) {
        Err(Error::Blowup(b)) => {
            write_json(
                out.join("blowup.json"),
                &BlowupSummary {
                    t: b.t,
                    step: b.step,
                    mode: b.mode,
                    message: b.to_string(),
                },
            )?;
            Err(Error::Blowup(b))
        }
        other => other,
    }
}

fn verdict(pass: bool) -> Outcome {
    if pass {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

pub fn dispatch(cli: &Cli) -> Result<Outcome> {
    if let Some(w) = cli.global.workers {
        if w == 0 {
            return Err(Error::InvalidKey {
                key: "workers".into(),
                reason: "must be at least 1".into(),
            });
        }
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w).build_global();
    }
    if let Some(t) = cli.global.tolerance {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::InvalidKey {
                key: "tolerance".into(),
                reason: format!("must be finite and nonnegative, got {t}"),
            });
        }
    }
    let config = load_config(cli)?;
    let out: PathBuf = cli.global.out.clone();
    std::fs::create_dir_all(&out).map_err(|e| io_err(&out, e))?;
    let name = command_name(&cli.command);
    manifest::write(
        &out,
        &Manifest {
            tool: "alphaflow",
            version: env!("CARGO_PKG_VERSION"),
            command: name,
            seed: cli.global.seed,
            workers: cli.global.workers,
            gamma: cli.global.gamma,
            tolerance: cli.global.tolerance,
            config: config.as_ref(),
            created_unix: manifest::created_unix(),
        },
    )?;
    let tol = cli.global.tolerance;

    match &cli.command {
        Command::Run => {
            let config = require(&config, name)?;
            let traj = run_or_record(config, &out)?;
            write_trajectory(&traj, out.join("trajectory.bin"))?;
            let params = config.params()?;
            let gamma = resolve_gamma(cli, config.grid()?)?;
            let report = dissipative_estimate(&traj, &params, gamma, tol)?;
            write_report_csv(out.join("report.csv"), &report_rows(&traj, &report)?)?;
            let max_step = traj
                .steps
                .windows(2)
                .map(|w| w[1].energy - w[0].energy)
                .fold(f64::NEG_INFINITY, f64::max);
            write_json(
                out.join("summary.json"),
                &RunSummary {
                    steps: traj.steps.len() - 1,
                    snapshots: traj.snapshots.len(),
                    t_end: traj.last().t,
                    initial_energy: traj.initial_energy(),
                    final_energy: traj.last().energy,
                    max_energy_step: max_step,
                    dissipative_estimate: &report,
                },
            )?;
            println!(
                "run: {} steps, E(0) = {:.6e}, E(T) = {:.6e}, energy estimate: {}",
                traj.steps.len() - 1,
                traj.initial_energy(),
                traj.last().energy,
                report.verdict
            );
            Ok(verdict(report.pass))
        }
        Command::Check { mode, file } => {
            let config = require(&config, name)?;
            let grid = config.grid()?;
            let params = config.params()?;
            let gamma = resolve_gamma(cli, grid)?;
            let (traj, report) = match mode {
                CheckKind::ZeroTest => {
                    let traj = run_or_record(config, &out)?;
                    let report = dissipative_estimate(&traj, &params, gamma, tol)?;
                    (traj, report)
                }
                CheckKind::SelfTest => coincidence_check(config, gamma, CoincidenceOptions::default(), tol)?,
                CheckKind::TestPair => {
                    let file = file
                        .as_ref()
                        .ok_or_else(|| Error::Config("`check --mode test-pair` needs a FILE argument".into()))?;
                    let pair = read_test_pair(file, grid)?;
                    let traj = run_or_record(config, &out)?;
                    let report = inequality_margin(&traj, &pair, &params, gamma, CheckMode::for_params(&params), tol)?;
                    (traj, report)
                }
            };
            write_check(&out, check_name(*mode), &traj, &report)?;
            println!(
                "check {}: {} (min margin {:.3e}, tolerance {:.3e}, gamma {:.6})",
                check_name(*mode),
                report.verdict,
                report.min_margin,
                report.tolerance,
                gamma
            );
            Ok(verdict(report.pass))
        }
        Command::Identities { samples, n, alpha } => {
            let grid = Grid::new(2, *n)?;
            let report = identity_suite(grid, *samples, cli.global.seed.unwrap_or(0), *alpha)?;
            write_json(out.join("summary.json"), &report)?;
            println!(
                "identities: trilinear {:.2e}, transport {:.2e}, commutator {:.2e}; leray {:.2e}/{:.2e}, helmholtz {:.2e}",
                report.trilinear,
                report.transport,
                report.commutator,
                report.leray_idempotence,
                report.leray_self_adjoint,
                report.helmholtz_roundtrip
            );
            Ok(verdict(report.identities_pass && report.roundtrips_pass))
        }
        Command::GronwallSelftest { samples } => {
            let report = gronwall_selftest(*samples, cli.global.seed.unwrap_or(0))?;
            write_json(out.join("summary.json"), &report)?;
            println!(
                "gronwall-selftest: closed form {:.2e}, comparison {:.2e}",
                report.closed_form_error, report.comparison_error
            );
            Ok(verdict(report.pass))
        }
        Command::CalibrateGamma { samples, safety, n } => {
            let grid = match &config {
                Some(c) => c.grid()?,
                None => Grid::new(2, *n)?,
            };
            let cal = calibrate_gamma(grid, *samples, cli.global.seed.unwrap_or(0), *safety)?;
            write_json(out.join("summary.json"), &cal)?;
            println!("gamma = {:.16e}", cal.gamma);
            Ok(Outcome::Pass)
        }
        Command::SweepAlpha { alphas } => {
            let config = require(&config, name)?;
            let workers = cli.global.workers.unwrap_or_else(rayon::current_num_threads);
            let report = alpha_sweep(config, alphas, workers)?;
            write_json(out.join("summary.json"), &report)?;
            for e in &report.entries {
                match &e.error {
                    Some(msg) => println!("alpha {}: failed: {msg}", e.alpha),
                    None => println!("alpha {}: E(0) = {:.6e}, sup E = {:.6e}", e.alpha, e.initial_energy, e.sup_energy),
                }
            }
            Ok(verdict(report.pass))
        }
        Command::OdeDemo { case } => {
            let case = match case {
                DemoArg::Linear => DemoCase::Linear,
                DemoArg::Rotation => DemoCase::Rotation,
                DemoArg::Sgn => DemoCase::Sgn,
            };
            let report = run_demo(case, cli.global.seed.unwrap_or(0))?;
            let path = out.join("demo.csv");
            let file = File::create(&path).map_err(|e| io_err(&path, e))?;
            let mut w = BufWriter::new(file);
            write_demo_csv(&report, &mut w)
                .and_then(|_| w.flush())
                .map_err(|e| io_err(&path, e))?;
            write_json(
                out.join("summary.json"),
                &DemoSummary {
                    case,
                    apriori_holds: report.apriori_holds,
                    curves: report.curves,
                    min_curve_margin: report.min_curve_margin,
                    sgn_levels: &report.sgn_levels,
                    pass: report.pass,
                },
            )?;
            println!("ode-demo {:?}: {}", case, if report.pass { "pass" } else { "fail" });
            Ok(verdict(report.pass))
        }
    }
}
