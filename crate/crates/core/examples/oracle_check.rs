//! Branch-and-bound against exhaustive enumeration on small random
//! instances.
//!
//! `cargo run --release --example oracle_check`

use irs_ee::bnb::{bnb_solve, BnbConfig};
use irs_ee::cli::verification_instance;
use irs_ee::oracle::{brute_force, DEFAULT_N_CAP};

pub fn main() {
    let epsilon = 1e-6;
    let mut worst = 0.0f64;
    for trial in 0..20 {
        let (ch, params) = verification_instance(11, trial, 8);
        let reference = brute_force(&ch, &params, DEFAULT_N_CAP).expect("n within cap");
        let found = bnb_solve(&ch, &params, &BnbConfig::with_epsilon(epsilon)).solution;
        let gap = (reference.ee - found.ee).abs();
        worst = worst.max(gap);
        println!(
            "trial {trial:>2}: oracle {:.9} ({}), B&B {:.9} ({}), gap {gap:.1e}",
            reference.ee,
            reference.x.to_bitstring(),
            found.ee,
            found.x.to_bitstring()
        );
    }
    assert!(worst <= epsilon + 1e-9);
    println!("worst gap {worst:.2e}");
}
