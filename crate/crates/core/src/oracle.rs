//! Exhaustive reference solver for small instances.
//!
//! Enumerates every activation and, for each one, places the transmit power
//! at the constrained EE peak. All arithmetic here is written out
//! independently of the production kernels (its own W₀ by bisection, its
//! own SNR and consumption formulas) so that the two paths can check each
//! other.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::params::{Activation, ChannelAmplitudes, Diagnostics, Solution, SystemParams};

pub const DEFAULT_N_CAP: usize = 12;

/// W₀(z) by bisection on `w e^w = z` over `[-1, max(1, ln z)]`.
pub fn w0_bisection(z: f64) -> f64 {
    let branch = -(-1.0f64).exp();
    if z <= branch {
        return -1.0;
    }
    let (mut lo, mut hi) = (-1.0f64, if z <= std::f64::consts::E { 1.0 } else { z.ln() });
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if mid * mid.exp() < z {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Best `(p, EE)` for one activation, or `None` if it cannot meet the SNR
/// target within `[0, p_max]`.
fn best_power_for(f: f64, count: usize, ch: &ChannelAmplitudes, params: &SystemParams) -> Option<(f64, f64)> {
    let g = ch.xi * (1.0 + count as f64).sqrt();
    let gain = (f - g) * (f - g) / params.noise_power;
    if gain <= 0.0 || gain * params.p_max < params.gamma_min {
        return None;
    }
    let eta = params.amp_efficiency;
    let static_draw =
        params.p_static + params.n_elements as f64 * params.p_off + count as f64 * (params.p_on - params.p_off);
    let y = w0_bisection((gain * static_draw * eta - 1.0) / std::f64::consts::E);
    let peak = ((y + 1.0).exp() - 1.0) / gain;
    let floor = params.gamma_min / gain;
    let p = peak.max(floor).min(params.p_max);
    let ee = (1.0 + gain * p).log2() / (p / eta + static_draw);
    Some((p, ee))
}

/// Global optimum by enumeration of all `2^N` activations.
///
/// Ties go to the activation with the lowest bitmask.
pub fn brute_force(ch: &ChannelAmplitudes, params: &SystemParams, n_cap: usize) -> Result<Solution> {
    let n = ch.n_elements();
    if n > n_cap || n >= 64 {
        return Err(Error::InvalidParams(format!("n = {n} exceeds oracle cap {n_cap}")));
    }
    let start = Instant::now();
    let amps = ch.cascaded();
    let mut best: Option<(u64, f64, f64)> = None;
    for mask in 0u64..(1u64 << n) {
        let mut f = ch.direct();
        for (i, a) in amps.iter().enumerate() {
            if mask >> i & 1 == 1 {
                f += a;
            }
        }
        let Some((p, ee)) = best_power_for(f, mask.count_ones() as usize, ch, params) else {
            continue;
        };
        if best.map_or(true, |(_, _, b)| ee > b) {
            best = Some((mask, p, ee));
        }
    }
    let diagnostics = Diagnostics {
        iterations: 1usize << n,
        elapsed: start.elapsed(),
        ..Diagnostics::default()
    };
    Ok(match best {
        Some((mask, p, ee)) => Solution::feasible(p, Activation::from_mask(mask, n), ee, diagnostics),
        None => Solution::infeasible(n, diagnostics),
    })
}
