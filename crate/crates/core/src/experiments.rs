//! Seeded Monte-Carlo harness: channel generation, scenario parameters,
//! scheme sweeps and CSV output.

use std::io::Write;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ao::{ao_solve, AoConfig};
use crate::baselines::{mparea, opa, oreo};
use crate::bnb::{bnb_solve, BnbConfig, BnbTraceRow};
use crate::error::{Error, Result};
use crate::model::worst_case_snr;
use crate::params::{Activation, ChannelAmplitudes, Solution, SystemParams};
use crate::units::db_to_linear;

/// Floor applied to `γ_min` so the SNR constraint stays strictly positive.
pub const GAMMA_MIN_FLOOR: f64 = 1e-12;

/// Link geometry and propagation model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub tx: [f64; 3],
    pub rx: [f64; 3],
    pub irs: [f64; 3],
    /// Rician factor of every link, dB. `inf` gives pure line of sight.
    pub rician_kappa_db: f64,
    /// CSI-uncertainty radius as a fraction of the smallest amplitude.
    pub tau: f64,
    /// SNR target as a fraction of the all-on, full-power, worst-case SNR.
    pub chi: f64,
    pub n_elements: usize,
    pub trials: usize,
    pub rng_seed: u64,
    /// Power loss at the reference distance, dB (negative).
    pub ref_loss_db: f64,
    pub ref_distance_m: f64,
    /// Path-loss exponent of the Tx-IRS and IRS-Rx hops.
    pub ple_irs: f64,
    /// Path-loss exponent of the direct Tx-Rx link.
    pub ple_direct: f64,
    pub wavelength_m: f64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        Self {
            tx: [0.0, 0.0, 0.0],
            rx: [80.0, 0.0, 0.0],
            irs: [40.0, 10.0, 5.0],
            rician_kappa_db: 6.0,
            tau: 0.0,
            chi: 0.4,
            n_elements: 50,
            trials: 100,
            rng_seed: 1,
            ref_loss_db: -30.0,
            ref_distance_m: 1.0,
            ple_irs: 2.2,
            ple_direct: 3.5,
            wavelength_m: 0.1,
        }
    }
}

fn distance(a: [f64; 3], b: [f64; 3]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Config(m.to_owned()));
        if !(0.0..=1.0).contains(&self.tau) {
            return bad("tau must lie in [0, 1]");
        }
        if !(0.0..=1.0).contains(&self.chi) {
            return bad("chi must lie in [0, 1]");
        }
        if self.n_elements == 0 {
            return bad("n_elements must be at least 1");
        }
        if distance(self.tx, self.rx) == 0.0 || distance(self.tx, self.irs) == 0.0 || distance(self.irs, self.rx) == 0.0 {
            return bad("tx, rx and irs positions must be distinct");
        }
        if self.rician_kappa_db.is_nan() || !(self.ref_distance_m > 0.0) || !(self.wavelength_m > 0.0) {
            return bad("invalid propagation parameters");
        }
        Ok(())
    }

    fn path_gain(&self, d: f64, exponent: f64) -> f64 {
        db_to_linear(self.ref_loss_db) * (d / self.ref_distance_m).powf(-exponent)
    }
}

/// Independent, reproducible RNG stream for one trial.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Complex baseband channels `h₀, h₁, …, h_N` of one realization.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    pub h: Vec<Complex64>,
}

impl ChannelRealization {
    /// Magnitudes, with `ξ = τ α̂_min`.
    pub fn amplitudes(&self, tau: f64) -> ChannelAmplitudes {
        let alpha: Vec<f64> = self.h.iter().map(|h| h.norm()).collect();
        let ch = ChannelAmplitudes::new(alpha, 0.0);
        let xi = tau * ch.alpha_min();
        ch.with_xi(xi)
    }

    /// Phases that co-phase every reflected path with the direct one.
    pub fn aligned_phases(&self) -> Vec<f64> {
        let tau = std::f64::consts::TAU;
        let theta0 = self.h[0].arg();
        self.h[1..].iter().map(|h| (theta0 - h.arg()).rem_euclid(tau)).collect()
    }
}

/// One Rician-faded link with average power gain `gain`.
fn rician(rng: &mut ChaCha8Rng, gain: f64, kappa: f64, los_phase: f64) -> Complex64 {
    let (los_w, nlos_w) = if kappa.is_infinite() {
        (1.0, 0.0)
    } else {
        ((kappa / (kappa + 1.0)).sqrt(), (1.0 / (kappa + 1.0)).sqrt())
    };
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    let scatter = Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2;
    (Complex64::from_polar(los_w, los_phase) + scatter * nlos_w) * gain.sqrt()
}

/// Draws the direct link, then each element's Tx-IRS and IRS-Rx hops.
///
/// Draws are sequential, so the first `N` elements of a realization do not
/// depend on how many more are requested.
pub fn generate_realization(cfg: &ScenarioConfig, rng: &mut ChaCha8Rng) -> ChannelRealization {
    let kappa = db_to_linear(cfg.rician_kappa_db);
    let phase = |d: f64| -std::f64::consts::TAU * d / cfg.wavelength_m;
    let d_direct = distance(cfg.tx, cfg.rx);
    let d_in = distance(cfg.tx, cfg.irs);
    let d_out = distance(cfg.irs, cfg.rx);
    let g_direct = cfg.path_gain(d_direct, cfg.ple_direct);
    let g_in = cfg.path_gain(d_in, cfg.ple_irs);
    let g_out = cfg.path_gain(d_out, cfg.ple_irs);

    let mut h = Vec::with_capacity(cfg.n_elements + 1);
    h.push(rician(rng, g_direct, kappa, phase(d_direct)));
    for _ in 0..cfg.n_elements {
        let hop_in = rician(rng, g_in, kappa, phase(d_in));
        let hop_out = rician(rng, g_out, kappa, phase(d_out));
        h.push(hop_in * hop_out);
    }
    ChannelRealization { h }
}

pub fn generate_channels(cfg: &ScenarioConfig, rng: &mut ChaCha8Rng) -> ChannelAmplitudes {
    generate_realization(cfg, rng).amplitudes(cfg.tau)
}

/// `χ γ_w(p_max, 1_N; α̂_min)`, floored at [`GAMMA_MIN_FLOOR`].
pub fn make_gamma_min(ch: &ChannelAmplitudes, params: &SystemParams, chi: f64) -> f64 {
    let worst = ch.with_xi(ch.alpha_min());
    let snr = worst_case_snr(params.p_max, &worst, &Activation::ones(ch.n_elements()), params);
    (chi * snr).max(GAMMA_MIN_FLOOR)
}

/// Channels and parameters for one trial of a scenario.
pub fn build_instance(cfg: &ScenarioConfig, base: &SystemParams, trial: u64) -> (ChannelAmplitudes, SystemParams) {
    let mut rng = trial_rng(cfg.rng_seed, trial);
    let ch = generate_channels(cfg, &mut rng);
    let mut params = base.clone();
    params.n_elements = cfg.n_elements;
    params.gamma_min = make_gamma_min(&ch, &params, cfg.chi);
    (ch, params)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Scheme {
    #[serde(rename = "MPAREA")]
    Mparea,
    #[serde(rename = "OREO")]
    Oreo,
    #[serde(rename = "OPA")]
    Opa,
    #[serde(rename = "AO")]
    Ao,
    #[serde(rename = "BnB")]
    Bnb,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [Scheme::Mparea, Scheme::Oreo, Scheme::Opa, Scheme::Ao, Scheme::Bnb];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Mparea => "MPAREA",
            Scheme::Oreo => "OREO",
            Scheme::Opa => "OPA",
            Scheme::Ao => "AO",
            Scheme::Bnb => "BnB",
        }
    }

    pub fn run(self, ch: &ChannelAmplitudes, params: &SystemParams, epsilon: f64) -> Solution {
        match self {
            Scheme::Mparea => mparea(ch, params),
            Scheme::Oreo => oreo(ch, params),
            Scheme::Opa => opa(ch, params),
            Scheme::Ao => ao_solve(0.0, params.p_max, ch, params, &AoConfig::with_epsilon(epsilon)),
            Scheme::Bnb => bnb_solve(ch, params, &BnbConfig::with_epsilon(epsilon)).solution,
        }
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Config(format!("unknown scheme {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepKind {
    VsN,
    VsChi,
    BnbTrace,
}

/// Grids and trial counts for a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub n_grid: Vec<usize>,
    pub chi_grid: Vec<f64>,
    pub tau_grid: Vec<f64>,
    /// B&B runs only on the first `bnb_trials` trials of each point.
    pub bnb_trials: usize,
    pub epsilon: f64,
    /// `τ` of the single-instance B&B trace.
    pub trace_tau: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            n_grid: vec![10, 20, 30, 40, 50, 60, 70],
            chi_grid: vec![0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9],
            tau_grid: vec![0.0, 0.7],
            bnb_trials: 20,
            epsilon: 1e-3,
            trace_tau: 0.7,
        }
    }
}

/// One scheme on one trial at one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub chi: f64,
    pub trial: usize,
    pub tau: f64,
    pub scheme: Scheme,
    pub solution: Solution,
}

impl SweepRow {
    pub fn ee(&self) -> Option<f64> {
        self.solution.is_feasible().then_some(self.solution.ee)
    }
}

/// Runs every scheme on every `(n, chi, tau, trial)` point.
///
/// Trials reuse one channel stream per trial index, so neighbouring grid
/// points see common random numbers.
fn run_grid(
    scenario: &ScenarioConfig,
    sweep: &SweepConfig,
    base: &SystemParams,
    points: &[(usize, f64)],
) -> Vec<SweepRow> {
    let jobs: Vec<(usize, f64, f64, usize)> = points
        .iter()
        .flat_map(|&(n, chi)| {
            sweep
                .tau_grid
                .iter()
                .flat_map(move |&tau| (0..scenario.trials).map(move |t| (n, chi, tau, t)))
        })
        .collect();
    jobs.par_iter()
        .flat_map_iter(|&(n, chi, tau, trial)| {
            let cfg = ScenarioConfig {
                n_elements: n,
                chi,
                tau,
                ..scenario.clone()
            };
            let (ch, params) = build_instance(&cfg, base, trial as u64);
            Scheme::ALL
                .into_iter()
                .filter(|&s| s != Scheme::Bnb || trial < sweep.bnb_trials)
                .map(|scheme| SweepRow {
                    n,
                    chi,
                    trial,
                    tau,
                    scheme,
                    solution: scheme.run(&ch, &params, sweep.epsilon),
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

pub fn sweep_vs_n(scenario: &ScenarioConfig, sweep: &SweepConfig, base: &SystemParams) -> Vec<SweepRow> {
    let points: Vec<(usize, f64)> = sweep.n_grid.iter().map(|&n| (n, scenario.chi)).collect();
    run_grid(scenario, sweep, base, &points)
}

pub fn sweep_vs_chi(scenario: &ScenarioConfig, sweep: &SweepConfig, base: &SystemParams) -> Vec<SweepRow> {
    let points: Vec<(usize, f64)> = sweep.chi_grid.iter().map(|&c| (scenario.n_elements, c)).collect();
    run_grid(scenario, sweep, base, &points)
}

/// Per-iteration B&B trace on trial 0 of the scenario with `τ = trace_tau`.
pub fn bnb_trace(scenario: &ScenarioConfig, sweep: &SweepConfig, base: &SystemParams) -> Vec<BnbTraceRow> {
    let cfg = ScenarioConfig {
        tau: sweep.trace_tau,
        ..scenario.clone()
    };
    let (ch, params) = build_instance(&cfg, base, 0);
    let bnb = BnbConfig {
        record_trace: true,
        ..BnbConfig::with_epsilon(sweep.epsilon)
    };
    bnb_solve(&ch, &params, &bnb).trace
}

/// Mean EE of one scheme at one grid point over its feasible trials.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub n: usize,
    pub chi: f64,
    pub tau: f64,
    pub scheme: Scheme,
    pub mean_ee: f64,
    pub feasible: usize,
    pub trials: usize,
    pub mean_iterations: f64,
    pub mean_queue_max: f64,
}

pub fn summarize(rows: &[SweepRow]) -> Vec<SummaryRow> {
    let mut out: Vec<SummaryRow> = Vec::new();
    for row in rows {
        let slot = out.iter_mut().find(|s| {
            s.n == row.n && s.chi == row.chi && s.tau == row.tau && s.scheme == row.scheme
        });
        let slot = match slot {
            Some(s) => s,
            None => {
                out.push(SummaryRow {
                    n: row.n,
                    chi: row.chi,
                    tau: row.tau,
                    scheme: row.scheme,
                    mean_ee: 0.0,
                    feasible: 0,
                    trials: 0,
                    mean_iterations: 0.0,
                    mean_queue_max: 0.0,
                });
                out.last_mut().expect("just pushed")
            }
        };
        slot.trials += 1;
        slot.mean_iterations += row.solution.diagnostics.iterations as f64;
        slot.mean_queue_max += row.solution.diagnostics.queue_max as f64;
        if let Some(ee) = row.ee() {
            slot.feasible += 1;
            slot.mean_ee += ee;
        }
    }
    for s in &mut out {
        s.mean_ee = if s.feasible > 0 { s.mean_ee / s.feasible as f64 } else { f64::NAN };
        s.mean_iterations /= s.trials as f64;
        s.mean_queue_max /= s.trials as f64;
    }
    out.sort_by(|a, b| {
        (a.n, a.scheme)
            .cmp(&(b.n, b.scheme))
            .then(a.chi.total_cmp(&b.chi))
            .then(a.tau.total_cmp(&b.tau))
    });
    out
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn row_fields(r: &SweepRow) -> [String; 7] {
    [
        r.tau.to_string(),
        r.scheme.name().to_owned(),
        opt(r.ee()),
        r.solution.is_feasible().then(|| r.solution.p.to_string()).unwrap_or_default(),
        r.solution.x.count().to_string(),
        r.solution.diagnostics.iterations.to_string(),
        r.solution.is_feasible().to_string(),
    ]
}

const TAIL: [&str; 7] = ["tau", "scheme", "ee_bits_per_joule", "p_watts", "count_on", "iterations", "feasible"];

/// `N, trial, tau, scheme, ee_bits_per_joule, p_watts, count_on, iterations, feasible`.
pub fn write_vs_n_csv<W: Write>(out: W, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["N", "trial"].into_iter().chain(TAIL))?;
    for r in rows {
        let head = [r.n.to_string(), r.trial.to_string()];
        w.write_record(head.iter().chain(row_fields(r).iter()))?;
    }
    w.flush()?;
    Ok(())
}

/// As [`write_vs_n_csv`] with a leading `chi` column.
pub fn write_vs_chi_csv<W: Write>(out: W, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["chi", "N", "trial"].into_iter().chain(TAIL))?;
    for r in rows {
        let head = [r.chi.to_string(), r.n.to_string(), r.trial.to_string()];
        w.write_record(head.iter().chain(row_fields(r).iter()))?;
    }
    w.flush()?;
    Ok(())
}

/// `iter, p_l, p_u, ub, lb, incumbent, q, action`.
pub fn write_trace_csv<W: Write>(out: W, rows: &[BnbTraceRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["iter", "p_l", "p_u", "ub", "lb", "incumbent", "q", "action"])?;
    for r in rows {
        w.write_record([
            r.iter.to_string(),
            r.p_l.to_string(),
            r.p_u.to_string(),
            opt(r.ub),
            opt(r.lb),
            opt(r.incumbent),
            r.q.to_string(),
            r.action.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// `N, chi, tau, scheme, mean_ee_bits_per_joule, feasible, trials, mean_iterations, mean_queue_max`.
pub fn write_summary_csv<W: Write>(out: W, rows: &[SummaryRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "N",
        "chi",
        "tau",
        "scheme",
        "mean_ee_bits_per_joule",
        "feasible",
        "trials",
        "mean_iterations",
        "mean_queue_max",
    ])?;
    for s in rows {
        w.write_record([
            s.n.to_string(),
            s.chi.to_string(),
            s.tau.to_string(),
            s.scheme.name().to_owned(),
            s.mean_ee.to_string(),
            s.feasible.to_string(),
            s.trials.to_string(),
            s.mean_iterations.to_string(),
            s.mean_queue_max.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
