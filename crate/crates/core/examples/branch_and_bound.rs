//! Globally ε-optimal joint power/activation design by branch-and-bound.
//!
//! `cargo run --release --example branch_and_bound`

use irs_ee::bnb::{bnb_solve, gap_constant, BnbConfig, Termination};
use irs_ee::config::Config;
use irs_ee::experiments::Scheme;

pub fn main() {
    let cfg = Config {
        tau: 0.7,
        ..Config::default()
    };
    let (ch, params) = cfg.instance().expect("default config is valid");
    let epsilon = 1e-3;
    let report = bnb_solve(&ch, &params, &BnbConfig::with_epsilon(epsilon));
    let s = &report.solution;
    let st = &report.stats;

    println!("N={} gamma_min={:.3e} M={:.3e}", ch.n_elements(), params.gamma_min, gap_constant(&ch, &params));
    println!(
        "EE={:.6} bit/J at p={:.4e} W with {} elements on",
        s.ee,
        s.p,
        s.x.count()
    );
    println!(
        "{} nodes, Q_max {}, pruned: {} infeasible / {} bound / {} exact, {} branched, {} AO iterations",
        st.iterations, st.queue_max, st.pruned_infeasible, st.pruned_bound, st.pruned_exact, st.branched, st.ao_iterations
    );
    assert_eq!(report.termination, Termination::Converged);
    println!("certified within {epsilon}: {}", report.certifies(epsilon));

    let ao = Scheme::Ao.run(&ch, &params, epsilon);
    println!("AO alone: {:.6} bit/J (gap {:.2e})", ao.ee, s.ee - ao.ee);
}
