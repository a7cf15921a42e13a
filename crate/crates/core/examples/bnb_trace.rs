//! Per-iteration branch-and-bound trace: bounds, incumbent and queue size.
//!
//! `cargo run --release --example bnb_trace`

use irs_ee::config::Config;
use irs_ee::experiments;

pub fn main() {
    let cfg = Config::default();
    let rows = experiments::bnb_trace(&cfg.scenario(), &cfg.sweep, &cfg.system_params(1.0));
    let q_max = rows.iter().map(|r| r.q).max().unwrap_or(0);
    println!("{} iterations, Q_max {q_max}", rows.len() - 1);

    let mut csv = Vec::new();
    experiments::write_trace_csv(&mut csv, &rows).expect("in-memory write");
    let text = String::from_utf8(csv).expect("utf-8");
    let lines: Vec<&str> = text.lines().collect();
    for line in lines.iter().take(8) {
        println!("{line}");
    }
    println!("...");
    println!("{}", lines.last().expect("non-empty trace"));
}
