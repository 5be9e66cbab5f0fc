use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, ValueEnum};
use polysynth::driver::{self, Outputs};
use polysynth::problem::Problem;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Synth,
    Reach,
    Ntsreach,
    Simulate,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Switch {
    On,
    Off,
}

/// Controller synthesis for linear stochastic systems by abstraction refinement.
#[derive(Debug, Parser)]
#[command(version)]
struct Args {
    /// Problem file (JSON).
    #[arg(long)]
    problem: PathBuf,
    #[arg(long, value_enum, default_value = "synth")]
    mode: Mode,
    /// Refinement iterations; defaults to the problem file's value.
    #[arg(long)]
    max_iters: Option<usize>,
    /// Seed for simulation noise; defaults to the problem file's value.
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for artifacts.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long, default_value_t = 1000)]
    traces: usize,
    #[arg(long, default_value_t = 200)]
    horizon: usize,
    #[arg(long, value_enum, default_value = "on")]
    svg: Switch,
    /// Controller file for simulate mode (a `controller_<k>.json` from synth).
    #[arg(long)]
    controller: Option<PathBuf>,
}

fn run(args: &Args) -> Result<i32> {
    let problem = Problem::load(&args.problem).with_context(|| format!("reading {}", args.problem.display()))?;
    let out = Outputs {
        dir: Some(args.out.clone()),
        svg: matches!(args.svg, Switch::On),
    };
    let seed = args.seed.unwrap_or(problem.file.seed);
    match args.mode {
        Mode::Synth => {
            let max_iters = args.max_iters.unwrap_or(problem.file.max_iters);
            let run = driver::run_synth(&problem, max_iters, &out)?;
            println!("status: {:?} after {} iteration(s)", run.status, run.stats.len());
            for s in &run.stats {
                println!("{}", s.csv_row());
            }
            Ok(run.status.exit_code())
        }
        Mode::Reach | Mode::Ntsreach => {
            let r = if matches!(args.mode, Mode::Reach) {
                driver::run_reach(&problem, &out)?
            } else {
                driver::run_ntsreach(&problem, &out)?
            };
            println!(
                "phase 1: {} iterations, phase 2: {} iterations, vol(X_init) = {:.6}",
                r.phase1_iterations,
                r.phase2_iterations,
                r.x_init.volume()
            );
            Ok(0)
        }
        Mode::Simulate => {
            let Some(path) = &args.controller else {
                bail!("simulate mode needs --controller <file> produced by a synth run");
            };
            let ctrl = driver::load_controller(path).with_context(|| format!("reading {}", path.display()))?;
            let (_, verdicts) = driver::run_simulate(&problem, &ctrl, args.traces, args.horizon, seed, &out)?;
            let ok = verdicts.iter().filter(|v| v.satisfied).count();
            println!("{ok}/{} traces satisfied", verdicts.len());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let args = Args::parse();
    match run(&args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
