//! `alphaflow` command-line driver.
//!
//! Every subcommand writes `manifest.json` into the output directory before
//! anything else, then its own artifacts. Exit codes: 0 pass, 1 check
//! failed, 2 usage or configuration error, 3 numerical blowup.

mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "alphaflow", version, about = "Maxwell-alpha / Euler-alpha solver and dissipative-solution checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Simulation configuration (JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory, created if missing.
    #[arg(long, global = true, default_value = "alphaflow-out")]
    pub out: PathBuf,
    /// Overrides the configured seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Worker threads for parallel sections.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Domain constant γ; calibrated when omitted.
    #[arg(long, global = true)]
    pub gamma: Option<f64>,
    /// Relative tolerance of the inequality checks.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    ZeroTest,
    SelfTest,
    TestPair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DemoArg {
    Linear,
    Rotation,
    Sgn,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Integrate a configuration and write the trajectory.
    Run,
    /// Evaluate the dissipative inequality on a run.
    Check {
        #[arg(long, value_enum)]
        mode: CheckKind,
        /// Test-pair file, required with `--mode test-pair`.
        file: Option<PathBuf>,
    },
    /// Cancellation identities and operator round trips on random fields.
    Identities {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 64)]
        n: usize,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
    },
    /// Gronwall bound against closed forms and a comparison-equation solve.
    GronwallSelftest {
        #[arg(long, default_value_t = 10_001)]
        samples: usize,
    },
    /// Numerical surrogate for γ.
    CalibrateGamma {
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = alphaflow::check::DEFAULT_SAFETY)]
        safety: f64,
        /// Grid size when no configuration is given.
        #[arg(long, default_value_t = 64)]
        n: usize,
    },
    /// Run the configuration for a decreasing list of α.
    SweepAlpha {
        #[arg(long, value_delimiter = ',', default_value = "1,0.5,0.25,0.1")]
        alphas: Vec<f64>,
    },
    /// Abstract ODE demonstrations.
    OdeDemo {
        #[arg(long, value_enum)]
        case: DemoArg,
    },
}

/// Result of a subcommand that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

fn exit_code(err: &alphaflow::Error) -> u8 {
    use alphaflow::Error::*;
    match err {
        Blowup(_) | Cfl { .. } | OdeBlowup { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::dispatch(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
