//! Small Monte-Carlo sweeps over N and over the SNR-target ratio χ,
//! summarized as mean EE per scheme.
//!
//! `cargo run --release --example sweep`

use irs_ee::config::Config;
use irs_ee::experiments::{self, SweepConfig};

pub fn main() {
    let cfg = Config {
        trials: 10,
        sweep: SweepConfig {
            n_grid: vec![10, 40, 70],
            chi_grid: vec![0.1, 0.5, 0.9],
            bnb_trials: 5,
            ..SweepConfig::default()
        },
        ..Config::default()
    };
    let scenario = cfg.scenario();
    let base = cfg.system_params(1.0);

    let rows = experiments::sweep_vs_n(&scenario, &cfg.sweep, &base);
    println!("-- mean EE vs N (chi={}) --", cfg.chi);
    experiments::write_summary_csv(std::io::stdout(), &experiments::summarize(&rows)).expect("stdout");

    let rows = experiments::sweep_vs_chi(&scenario, &cfg.sweep, &base);
    println!("-- mean EE vs chi (N={}) --", cfg.n_elements);
    experiments::write_summary_csv(std::io::stdout(), &experiments::summarize(&rows)).expect("stdout");

    // First per-trial rows in the vs-chi CSV format.
    let mut csv = Vec::new();
    experiments::write_vs_chi_csv(&mut csv, &rows[..6]).expect("in-memory write");
    print!("{}", String::from_utf8(csv).expect("utf-8"));
}
