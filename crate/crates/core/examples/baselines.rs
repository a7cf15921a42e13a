//! All five schemes on one channel realization, for two CSI error radii.
//!
//! `cargo run --release --example baselines`

use irs_ee::config::Config;
use irs_ee::experiments::Scheme;

pub fn main() {
    for tau in [0.0, 0.7] {
        let cfg = Config {
            tau,
            n_elements: 40,
            ..Config::default()
        };
        let (ch, params) = cfg.instance().expect("default config is valid");
        println!("tau={tau}  xi={:.3e}", ch.xi);
        for scheme in Scheme::ALL {
            let s = scheme.run(&ch, &params, 1e-3);
            println!(
                "  {:>6}: EE={:>9.5} bit/J  p={:.4e} W  on={:>2}",
                scheme.name(),
                s.ee,
                s.p,
                s.x.count()
            );
        }
    }
}
