//! EE-optimal transmit power for a fixed activation, compared against a
//! brute-force grid.
//!
//! `cargo run --example optimal_power`

use irs_ee::config::Config;
use irs_ee::model::{u_val, v_val, worst_case_ee, worst_case_snr};
use irs_ee::power::{optimal_power, p_lower_effective};
use irs_ee::Activation;

pub fn main() {
    let cfg = Config {
        n_elements: 16,
        tau: 0.5,
        ..Config::default()
    };
    let (ch, params) = cfg.instance().expect("default config is valid");
    let n = ch.n_elements();

    for count in [0, 4, 8, 16] {
        let x = Activation::new((0..n).map(|i| i < count).collect());
        let (u, v) = (u_val(&ch, &x, &params), v_val(&x, &params));
        let Some(p) = optimal_power(0.0, params.p_max, &ch, &x, &params) else {
            println!("{count:>2} on: cannot reach gamma_min = {:.3e}", params.gamma_min);
            continue;
        };
        let floor = p_lower_effective(0.0, &ch, &x, &params);
        let grid_best = (0..=10_000)
            .map(|k| floor + (params.p_max - floor) * k as f64 / 10_000.0)
            .map(|q| worst_case_ee(q, &ch, &x, &params))
            .fold(f64::MIN, f64::max);
        println!(
            "{count:>2} on: u={u:.3e} v={v:.4} W  p*={p:.4e} W  SNR={:.3e}  EE={:.6} (grid {:.6}) bit/J",
            worst_case_snr(p, &ch, &x, &params),
            worst_case_ee(p, &ch, &x, &params),
            grid_best
        );
    }
}
