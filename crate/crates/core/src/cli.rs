//! Command-line front end. Exit codes: 0 success/feasible, 1 input error,
//! 2 infeasible instance (`solve`) or failed check (`verify`).

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng;

use crate::bnb::{bnb_solve, BnbConfig};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::experiments::{self, trial_rng, Scheme, ScenarioConfig};
use crate::oracle::{brute_force, DEFAULT_N_CAP};
use crate::params::{ChannelAmplitudes, SystemParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;

/// Tolerance added to `--eps` when comparing against the oracle.
pub const ORACLE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "irs-ee",
    version,
    about = "Worst-case energy-efficiency optimization for IRS-aided links",
    after_help = "Command-line flags override config-file fields, which override built-in defaults.\n\
                  Set IRS_EE_LOG=info|debug for progress logs on stderr."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Algo {
    Ao,
    Bnb,
    Oreo,
    Opa,
    Mparea,
}

impl From<Algo> for Scheme {
    fn from(a: Algo) -> Self {
        match a {
            Algo::Ao => Scheme::Ao,
            Algo::Bnb => Scheme::Bnb,
            Algo::Oreo => Scheme::Oreo,
            Algo::Opa => Scheme::Opa,
            Algo::Mparea => Scheme::Mparea,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Kind {
    VsN,
    VsChi,
    BnbTrace,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one instance and print the solution as JSON.
    Solve {
        config: PathBuf,
        #[arg(long, value_enum, default_value = "bnb")]
        algo: Algo,
        /// Channel seed (overrides `seed` in the config).
        #[arg(long)]
        seed: Option<u64>,
        /// Optimality / convergence tolerance in bits/joule.
        #[arg(long, default_value_t = 1e-3)]
        epsilon: f64,
        /// Also write the JSON to this file.
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Check branch-and-bound against the brute-force oracle on random instances.
    Verify {
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
    },
    /// Run a Monte-Carlo sweep and write per-trial CSV.
    Sweep {
        #[arg(long, value_enum)]
        kind: Kind,
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                EXIT_INPUT
            } else {
                let _ = write!(stdout, "{}", e.render());
                EXIT_OK
            };
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn execute(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Solve {
            config,
            algo,
            seed,
            epsilon,
            json_out,
        } => {
            let mut cfg = Config::load(&config)?;
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            if !(epsilon > 0.0) {
                return Err(Error::Config("epsilon must be positive".into()));
            }
            let (ch, params) = cfg.instance()?;
            let solution = Scheme::from(algo).run(&ch, &params, epsilon);
            log::info!("solved {:?} in {:?}", algo, solution.diagnostics.elapsed);
            let json = serde_json::to_string_pretty(&solution)?;
            writeln!(stdout, "{json}")?;
            if let Some(path) = json_out {
                std::fs::write(path, format!("{json}\n"))?;
            }
            Ok(if solution.is_feasible() { EXIT_OK } else { EXIT_INFEASIBLE })
        }
        Command::Verify { n, trials, seed, eps } => verify(n, trials, seed, eps, stdout, stderr),
        Command::Sweep {
            kind,
            config,
            out,
            seed,
            trials,
        } => {
            let mut cfg = Config::load(&config)?;
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            if let Some(trials) = trials {
                cfg.trials = trials;
            }
            sweep(kind, &cfg, &out, stdout)?;
            Ok(EXIT_OK)
        }
    }
}

/// Random verification instance: a seeded scenario realization at `n`
/// elements with random CSI radius, SNR target and element power.
pub fn verification_instance(seed: u64, trial: u64, n: usize) -> (ChannelAmplitudes, SystemParams) {
    let mut rng = trial_rng(seed ^ 0x5eed_0f_0ac1e, trial);
    let base = Config::default();
    let scenario = ScenarioConfig {
        n_elements: n,
        tau: rng.gen_range(0.0..=1.0),
        chi: rng.gen_range(0.0..=1.0),
        ..base.scenario()
    };
    let ch = experiments::generate_channels(&scenario, &mut rng);
    let mut params = base.system_params(1.0);
    params.n_elements = n;
    params.p_on = params.p_off * rng.gen_range(1.0..50.0);
    params.amp_efficiency = rng.gen_range(0.3..=1.0);
    params.p_static = rng.gen_range(0.02..0.5);
    params.gamma_min = experiments::make_gamma_min(&ch, &params, scenario.chi);
    (ch, params)
}

fn verify(n: usize, trials: usize, seed: u64, eps: f64, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    if n > DEFAULT_N_CAP {
        writeln!(stderr, "error: n exceeds oracle cap ({n} > {DEFAULT_N_CAP})")?;
        return Ok(EXIT_INPUT);
    }
    if n == 0 || trials == 0 || !(eps > 0.0) {
        writeln!(stderr, "error: n, trials and eps must be positive")?;
        return Ok(EXIT_INPUT);
    }
    let mut worst = 0.0f64;
    let mut failures = 0;
    for t in 0..trials {
        let (ch, params) = verification_instance(seed, t as u64, n);
        let reference = brute_force(&ch, &params, DEFAULT_N_CAP)?;
        let found = bnb_solve(&ch, &params, &BnbConfig::with_epsilon(eps)).solution;
        let gap = match (reference.is_feasible(), found.is_feasible()) {
            (true, true) => (reference.ee - found.ee).abs(),
            (false, false) => 0.0,
            _ => f64::INFINITY,
        };
        worst = worst.max(gap);
        if gap > eps + ORACLE_TOLERANCE {
            failures += 1;
            log::warn!("trial {t}: gap {gap:e}");
        }
    }
    writeln!(stdout, "trials={trials} n={n} eps={eps:e} worst_gap={worst:e} failures={failures}")?;
    Ok(if failures == 0 { EXIT_OK } else { EXIT_INFEASIBLE })
}

fn sweep(kind: Kind, cfg: &Config, out: &PathBuf, stdout: &mut dyn Write) -> Result<()> {
    let scenario = cfg.scenario();
    scenario.validate()?;
    let base = cfg.system_params(1.0);
    let file = BufWriter::new(File::create(out)?);
    match kind {
        Kind::VsN | Kind::VsChi => {
            let rows = if matches!(kind, Kind::VsN) {
                experiments::sweep_vs_n(&scenario, &cfg.sweep, &base)
            } else {
                experiments::sweep_vs_chi(&scenario, &cfg.sweep, &base)
            };
            if matches!(kind, Kind::VsN) {
                experiments::write_vs_n_csv(file, &rows)?;
            } else {
                experiments::write_vs_chi_csv(file, &rows)?;
            }
            experiments::write_summary_csv(&mut *stdout, &experiments::summarize(&rows))?;
        }
        Kind::BnbTrace => {
            let rows = experiments::bnb_trace(&scenario, &cfg.sweep, &base);
            experiments::write_trace_csv(file, &rows)?;
            let q_max = rows.iter().map(|r| r.q).max().unwrap_or(0);
            writeln!(stdout, "iterations={} q_max={q_max}", rows.len().saturating_sub(1))?;
        }
    }
    Ok(())
}
