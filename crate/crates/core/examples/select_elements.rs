//! Optimal on/off pattern at a fixed transmit power, checked against
//! exhaustive enumeration.
//!
//! `cargo run --example select_elements`

use irs_ee::config::Config;
use irs_ee::model::{is_feasible, worst_case_ee};
use irs_ee::select::{solve_select, SelectInstance};
use irs_ee::Activation;

pub fn main() {
    let cfg = Config {
        n_elements: 12,
        tau: 0.3,
        ..Config::default()
    };
    let (ch, params) = cfg.instance().expect("default config is valid");
    let n = ch.n_elements();
    assert!(is_feasible(params.p_max, &ch, &params));

    for p in [0.05, 0.2, params.p_max] {
        let sel = solve_select(&SelectInstance::fixed_power(p, &ch, &params));
        let brute = (0..1u64 << n)
            .map(|m| Activation::from_mask(m, n))
            .filter(|x| irs_ee::model::worst_case_snr(p, &ch, x, &params) >= params.gamma_min)
            .map(|x| worst_case_ee(p, &ch, &x, &params))
            .fold(f64::NAN, f64::max);
        match sel {
            Some(s) => println!(
                "p={p:<6} x={} ({} on)  EE={:.6}  enumeration={brute:.6}",
                s.x.to_bitstring(),
                s.x.count(),
                s.value
            ),
            None => println!("p={p:<6} infeasible"),
        }
    }

    // Relaxed variant used by branch-and-bound: optimistic SNR power,
    // pessimistic consumption power.
    let relaxed = solve_select(&SelectInstance {
        p_num: params.p_max,
        p_den: 0.0,
        ch: &ch,
        params: &params,
    })
    .expect("feasible at p_max");
    println!("upper bound over [0, p_max]: {:.6} bit/J with x={}", relaxed.value, relaxed.x.to_bitstring());
}
