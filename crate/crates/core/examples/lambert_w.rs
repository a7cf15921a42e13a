//! Principal-branch Lambert W and the EE-optimal power it yields.
//!
//! `cargo run --example lambert_w`

use irs_ee::lambertw::{w0, BRANCH_POINT};
use irs_ee::power::{stationarity_residual, unconstrained_optimum};

pub fn main() {
    println!("{:>14} {:>22} {:>12}", "z", "W0(z)", "residual");
    for z in [BRANCH_POINT, -0.2, 0.0, 0.5, 1.0, std::f64::consts::E, 10.0, 1e3, 1e6] {
        let w = w0(z).expect("z >= -1/e");
        println!("{z:>14.6} {w:>22.16} {:>12.2e}", w * w.exp() - z);
    }

    // Anything clearly below the branch point is rejected.
    assert!(w0(-0.5).is_err());

    // With u v η = 1 the optimum is exactly e - 1.
    let p = unconstrained_optimum(1.0, 1.0, 1.0);
    println!("\np~(u=1, v=1, eta=1) = {p:.15}  (e - 1 = {:.15})", std::f64::consts::E - 1.0);
    for (u, v, eta) in [(30.0, 0.16, 0.8), (1e4, 0.5, 0.35), (1e-2, 2.0, 1.0)] {
        let p = unconstrained_optimum(u, v, eta);
        println!(
            "u={u:<8} v={v:<5} eta={eta:<5} p~={p:<12.6e} stationarity={:+.2e}",
            stationarity_residual(p, u, v, eta)
        );
    }
}
