//! Instance generators shared by the integration tests.
#![allow(dead_code)]

use irs_ee::model::{u_val, worst_case_snr};
use irs_ee::{Activation, ChannelAmplitudes, SystemParams};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Unit-scale instance: noise power 1, amplitudes in (0, 1), random power
/// model and a feasible SNR target.
pub fn synthetic(rng: &mut ChaCha8Rng, n: usize) -> (ChannelAmplitudes, SystemParams) {
    let alpha: Vec<f64> = (0..=n).map(|_| rng.gen_range(0.01..1.0)).collect();
    let ch = ChannelAmplitudes::new(alpha, 0.0);
    let xi = rng.gen_range(0.0..=1.0) * ch.alpha_min();
    let ch = ch.with_xi(xi);
    let p_off = rng.gen_range(1e-3..1e-2);
    let mut params = SystemParams {
        noise_power: 1.0,
        amp_efficiency: rng.gen_range(0.2..=1.0),
        p_on: p_off * rng.gen_range(1.0..20.0),
        p_off,
        p_static: rng.gen_range(0.05..1.0),
        p_max: rng.gen_range(0.1..10.0),
        gamma_min: 1.0,
        n_elements: n,
    };
    let top = worst_case_snr(params.p_max, &ch, &Activation::ones(n), &params);
    params.gamma_min = (rng.gen_range(0.0..1.0) * top).max(1e-12);
    (ch, params)
}

/// Like [`synthetic`], but amplitudes are small dyadic rationals so many
/// are equal and sums are exact.
pub fn dyadic(rng: &mut ChaCha8Rng, n: usize) -> (ChannelAmplitudes, SystemParams) {
    let (ch, mut params) = synthetic(rng, n);
    let alpha: Vec<f64> = (0..=n).map(|_| rng.gen_range(1..=4) as f64 / 8.0).collect();
    let ch = ChannelAmplitudes::new(alpha, ch.xi.min(0.125));
    let top = worst_case_snr(params.p_max, &ch, &Activation::ones(n), &params);
    params.gamma_min = (rng.gen_range(0.0..1.0) * top).max(1e-12);
    if rng.gen_bool(0.3) {
        params.p_on = params.p_off;
    }
    (ch, params)
}

/// Pushes the SNR target above what all-on at `p_max` can reach.
pub fn make_infeasible(ch: &ChannelAmplitudes, params: &mut SystemParams, factor: f64) {
    let n = ch.n_elements();
    params.gamma_min = factor * u_val(ch, &Activation::ones(n), params) * params.p_max;
}
