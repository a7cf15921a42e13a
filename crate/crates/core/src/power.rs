//! Closed-form EE-optimal transmit power for a fixed activation.
//!
//! For fixed `x`, `EE(p) = log₂(1 + u p) / (p/η + v)` is unimodal in `p` with
//! its peak at `p̃ = (exp(W₀((uvη - 1)/e) + 1) - 1) / u`. The constrained
//! optimum over `[max(γ_min/u, p_ℓ), p_u]` is the clamp of `p̃` to that window.

use std::f64::consts::E;

use crate::lambertw::{self, BRANCH_POINT};
use crate::model::{u_val, v_val};
use crate::params::{Activation, ChannelAmplitudes, SystemParams};

/// Lower end of the power window once the SNR constraint is folded in.
pub fn p_lower_effective(p_l: f64, ch: &ChannelAmplitudes, x: &Activation, params: &SystemParams) -> f64 {
    p_lower_from_u(p_l, u_val(ch, x, params), params.gamma_min)
}

pub fn p_lower_from_u(p_l: f64, u: f64, gamma_min: f64) -> f64 {
    snr_floor_power(u, gamma_min).max(p_l)
}

/// Smallest float `p` (up to an ulp) with `u * p >= gamma_min`.
fn snr_floor_power(u: f64, gamma_min: f64) -> f64 {
    let mut p = gamma_min / u;
    while u * p < gamma_min {
        p = p.next_up();
    }
    p
}

/// Unconstrained maximizer `p̃` of `log₂(1 + u p) / (p/η + v)` over `p >= 0`.
pub fn unconstrained_optimum(u: f64, v: f64, eta: f64) -> f64 {
    let delta = (u * v * eta - 1.0) / E;
    assert!(delta >= BRANCH_POINT, "u v eta must be non-negative");
    let w = lambertw::w0(delta).expect("argument is at least -1/e");
    (w + 1.0).exp_m1() / u
}

/// EE-optimal power in `[p_l, p_u]` for activation `x`, or `None` when no
/// power in the window meets the SNR target.
pub fn optimal_power(
    p_l: f64,
    p_u: f64,
    ch: &ChannelAmplitudes,
    x: &Activation,
    params: &SystemParams,
) -> Option<f64> {
    optimal_power_uv(p_l, p_u, u_val(ch, x, params), v_val(x, params), params)
}

/// [`optimal_power`] with `u(x)` and `v(x)` precomputed.
pub fn optimal_power_uv(p_l: f64, p_u: f64, u: f64, v: f64, params: &SystemParams) -> Option<f64> {
    if u <= 0.0 || u * p_u < params.gamma_min {
        return None;
    }
    let lower = p_lower_from_u(p_l, u, params.gamma_min).min(p_u);
    let peak = unconstrained_optimum(u, v, params.amp_efficiency);
    Some(lower.max(peak).min(p_u))
}

/// Numerator of `∂EE/∂p` up to a positive factor:
/// `u (p/η + v) - (1 + u p) ln(1 + u p) / η`.
pub fn stationarity_residual(p: f64, u: f64, v: f64, eta: f64) -> f64 {
    let up = u * p;
    u * (p / eta + v) - (1.0 + up) * up.ln_1p() / eta
}
