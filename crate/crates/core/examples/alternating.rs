//! Alternating optimization over power and activation, showing the
//! objective history of both loops.
//!
//! `cargo run --example alternating`

use irs_ee::ao::{ao_run, AoConfig};
use irs_ee::config::Config;

pub fn main() {
    let cfg = Config {
        tau: 0.7,
        ..Config::default()
    };
    let (ch, params) = cfg.instance().expect("default config is valid");
    let run = ao_run(
        0.0,
        params.p_max,
        &ch,
        &params,
        &AoConfig {
            trace: true,
            ..AoConfig::default()
        },
    );

    for (name, l) in ["power-first", "element-first"].iter().zip(&run.loops) {
        let hist: Vec<String> = l.history.iter().map(|e| format!("{e:.5}")).collect();
        println!(
            "{name:>13}: {} iterations, converged={}, EE {}",
            l.iterations,
            l.converged,
            hist.join(" -> ")
        );
    }
    for r in run.trace.iter().take(6) {
        println!("  {:?} it={} p={:.4e} on={} EE={:.5}", r.loop_id, r.iteration, r.p, r.count_on, r.ee);
    }
    let s = &run.solution;
    println!(
        "best: p={:.4e} W, {} of {} elements on, EE={:.6} bit/J",
        s.p,
        s.x.count(),
        s.x.len(),
        s.ee
    );
}
