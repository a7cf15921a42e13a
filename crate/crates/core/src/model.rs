//! Worst-case SNR, power consumption and energy efficiency.
//!
//! The SNR is always formed as `u(x) * p` so that the value seen by the
//! closed-form power solver and by plain evaluation agree bit for bit.

use crate::params::{Activation, ChannelAmplitudes, SystemParams};

/// `α̂₀ + Σ x_n α̂_n`.
///
/// Active amplitudes are accumulated in descending order, the same order the
/// activation solver uses for its prefix sums, so both produce identical bits.
pub fn f_val(ch: &ChannelAmplitudes, x: &Activation) -> f64 {
    let mut active: Vec<f64> = x.active_indices().map(|n| ch.cascaded()[n]).collect();
    active.sort_by(|a, b| b.total_cmp(a));
    active.into_iter().fold(ch.direct(), |acc, a| acc + a)
}

/// `ξ √(1 + Σ x_n)`.
pub fn g_val(ch: &ChannelAmplitudes, x: &Activation) -> f64 {
    ch.xi * ((1 + x.count()) as f64).sqrt()
}

/// SNR gain per watt: `(f - g)² / σ²`.
pub fn u_val(ch: &ChannelAmplitudes, x: &Activation, params: &SystemParams) -> f64 {
    u_from_fg(f_val(ch, x), g_val(ch, x), params)
}

pub(crate) fn u_from_fg(f: f64, g: f64, params: &SystemParams) -> f64 {
    let d = f - g;
    d * d / params.noise_power
}

/// Power consumed at zero transmit power: `(P_on - P_off) Σ x_n + P_fix`.
pub fn v_val(x: &Activation, params: &SystemParams) -> f64 {
    v_from_count(x.count(), params)
}

pub(crate) fn v_from_count(count: usize, params: &SystemParams) -> f64 {
    (params.p_on - params.p_off) * count as f64 + params.p_fix()
}

pub fn worst_case_snr(p: f64, ch: &ChannelAmplitudes, x: &Activation, params: &SystemParams) -> f64 {
    u_val(ch, x, params) * p
}

pub fn total_power(p: f64, x: &Activation, params: &SystemParams) -> f64 {
    p / params.amp_efficiency + v_val(x, params)
}

/// Worst-case energy efficiency in bits/joule.
pub fn worst_case_ee(p: f64, ch: &ChannelAmplitudes, x: &Activation, params: &SystemParams) -> f64 {
    ee_from_uv(p, u_val(ch, x, params), v_val(x, params), params.amp_efficiency)
}

/// `log₂(1 + u p) / (p/η + v)`.
pub fn ee_from_uv(p: f64, u: f64, v: f64, eta: f64) -> f64 {
    split_ratio(u, p, p, v, eta)
}

/// `log₂(1 + u p_num) / (p_den/η + v)`; the relaxed objective of the B&B
/// upper bound, and the plain EE when `p_num == p_den`.
pub(crate) fn split_ratio(u: f64, p_num: f64, p_den: f64, v: f64, eta: f64) -> f64 {
    (u * p_num).ln_1p() / std::f64::consts::LN_2 / (p_den / eta + v)
}

/// Whether some activation meets the SNR target with power at most `p_u`.
///
/// SNR is nondecreasing in every element, so it suffices to test all-on.
pub fn is_feasible(p_u: f64, ch: &ChannelAmplitudes, params: &SystemParams) -> bool {
    worst_case_snr(p_u, ch, &Activation::ones(ch.n_elements()), params) >= params.gamma_min
}

/// Global bound `log₂(1 + γ_w(p_max, 1_N)) / P_fix` on the objective.
pub fn ee_upper_bound(ch: &ChannelAmplitudes, params: &SystemParams) -> f64 {
    let snr = worst_case_snr(params.p_max, ch, &Activation::ones(ch.n_elements()), params);
    snr.ln_1p() / std::f64::consts::LN_2 / params.p_fix()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::fixtures;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn unit_params(n: usize) -> SystemParams {
        SystemParams {
            noise_power: 1.0,
            amp_efficiency: 1.0,
            p_on: 1e-3,
            p_off: 1e-3,
            p_static: 0.1,
            p_max: 10.0,
            gamma_min: 1.0,
            n_elements: n,
        }
    }

    fn random_instance(rng: &mut ChaCha8Rng, n: usize) -> (ChannelAmplitudes, SystemParams) {
        let alpha: Vec<f64> = (0..=n).map(|_| rng.gen_range(0.1..1.0)).collect();
        let amin = alpha.iter().copied().fold(f64::INFINITY, f64::min);
        let ch = ChannelAmplitudes::new(alpha, rng.gen_range(0.0..=1.0) * amin);
        let mut p = unit_params(n);
        p.noise_power = rng.gen_range(0.1..2.0);
        p.amp_efficiency = rng.gen_range(0.2..1.0);
        p.p_on = p.p_off * rng.gen_range(1.0..20.0);
        p.gamma_min = rng.gen_range(0.01..5.0);
        (ch, p)
    }

    #[test]
    fn f_and_g_examples() {
        let ch = ChannelAmplitudes::new(vec![1.0], 0.0);
        assert_eq!(f_val(&ch, &Activation::zeros(0)), 1.0);
        let ch = ChannelAmplitudes::new(vec![1.0, 0.5, 0.2], 0.1);
        assert_eq!(f_val(&ch, &Activation::new(vec![true, false])), 1.5);
        assert!((f_val(&ch, &Activation::ones(2)) - 1.7).abs() < 1e-15);
        assert!((g_val(&ch, &Activation::new(vec![true, false])) - 0.1414214).abs() < 1e-7);
        assert_eq!(g_val(&ch.with_xi(0.0), &Activation::ones(2)), 0.0);
        let ch3 = ChannelAmplitudes::new(vec![1.0; 4], 0.1);
        assert!((g_val(&ch3, &Activation::ones(3)) - 0.2).abs() < 1e-15);
    }

    #[test]
    fn snr_examples() {
        let p = unit_params(1);
        let ch = ChannelAmplitudes::new(vec![1.0, 0.5], 0.0);
        let x = Activation::ones(1);
        assert_eq!(worst_case_snr(0.0, &ch, &x, &p), 0.0);
        assert_eq!(worst_case_snr(2.0, &ch, &x, &p), 4.5);

        // Uniform amplitudes c with xi = c: f - g = c (N + 1 - sqrt(N + 1)).
        let (c, n, pw) = (0.3, 7usize, 1.7);
        let mut params = unit_params(n);
        params.noise_power = 0.25;
        let ch = ChannelAmplitudes::new(vec![c; n + 1], c);
        let m = (n + 1) as f64;
        let expected = pw / 0.25 * c * c * (m - m.sqrt()).powi(2);
        let got = worst_case_snr(pw, &ch, &Activation::ones(n), &params);
        assert!((got - expected).abs() <= 1e-12 * expected);
    }

    #[test]
    fn power_and_ee_examples() {
        let mut p = unit_params(3);
        assert_eq!(total_power(0.0, &Activation::zeros(3), &p), p.p_fix());
        assert_eq!(total_power(1.0, &Activation::ones(3), &p), 1.0 + p.p_fix());
        p.amp_efficiency = 0.5;
        p.p_on = 2e-3;
        p.p_off = 1e-3;
        p.p_static = 0.1 - 3e-3;
        assert!((total_power(1.0, &Activation::ones(3), &p) - 2.103).abs() < 1e-12);
        assert_eq!(v_val(&Activation::ones(3), &p), total_power(0.0, &Activation::ones(3), &p));

        let ch = fixtures::channel(3);
        assert_eq!(worst_case_ee(0.0, &ch, &Activation::ones(3), &p), 0.0);
        // u = 1, p = 1, v = 1, eta = 1: log2(2) / 2.
        assert_eq!(ee_from_uv(1.0, 1.0, 1.0, 1.0), 0.5);
        // sigma^2 = 2 and f - g = 2 give u = 2.
        let mut q = unit_params(1);
        q.noise_power = 2.0;
        assert_eq!(u_val(&ChannelAmplitudes::new(vec![1.0, 1.0], 0.0), &Activation::ones(1), &q), 2.0);
    }

    #[test]
    fn ee_composes_snr_and_power() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let n = rng.gen_range(1..10);
            let (ch, params) = random_instance(&mut rng, n);
            let x = Activation::from_mask(rng.gen::<u64>(), n);
            let pw = rng.gen_range(0.0..params.p_max);
            let snr = worst_case_snr(pw, &ch, &x, &params);
            assert_eq!(u_val(&ch, &x, &params) * pw, snr);
            let ee = snr.ln_1p() / std::f64::consts::LN_2 / total_power(pw, &x, &params);
            assert_eq!(worst_case_ee(pw, &ch, &x, &params), ee);
            // Direct evaluation of the closed form.
            let direct = pw / params.noise_power * (f_val(&ch, &x) - g_val(&ch, &x)).powi(2);
            assert!((direct - snr).abs() <= 1e-12 * snr.max(1e-300));
        }
    }

    #[test]
    fn snr_monotone_in_power_and_each_element() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let n = 10;
            let (ch, params) = random_instance(&mut rng, n);
            for mask in 0u64..(1 << n) {
                let x = Activation::from_mask(mask, n);
                let base = u_val(&ch, &x, &params);
                assert!(f_val(&ch, &x) >= g_val(&ch, &x));
                for bit in 0..n {
                    if mask >> bit & 1 == 0 {
                        let y = Activation::from_mask(mask | 1 << bit, n);
                        assert!(u_val(&ch, &y, &params) >= base);
                    }
                }
            }
            assert!(worst_case_snr(1.0, &ch, &Activation::ones(n), &params) <= worst_case_snr(2.0, &ch, &Activation::ones(n), &params));
        }
    }

    #[test]
    fn ee_never_exceeds_global_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..500 {
            let n = rng.gen_range(1..12);
            let (ch, params) = random_instance(&mut rng, n);
            let bound = ee_upper_bound(&ch, &params);
            let x = Activation::from_mask(rng.gen::<u64>(), n);
            let pw = rng.gen_range(0.0..=params.p_max);
            assert!(worst_case_ee(pw, &ch, &x, &params) <= bound);
        }
    }

    #[test]
    fn feasibility_matches_exhaustive_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut seen = [0usize; 2];
        for _ in 0..60 {
            let n = rng.gen_range(1..=8);
            let (ch, mut params) = random_instance(&mut rng, n);
            params.gamma_min = rng.gen_range(0.1..4.0) * worst_case_snr(params.p_max, &ch, &Activation::ones(n), &params);
            let p_u = params.p_max * rng.gen_range(0.2..1.0);
            let grid = (0..=200).map(|k| p_u * k as f64 / 200.0);
            let exists = grid.clone().any(|pw| {
                (0u64..1 << n).any(|m| worst_case_snr(pw, &ch, &Activation::from_mask(m, n), &params) >= params.gamma_min)
            });
            assert_eq!(is_feasible(p_u, &ch, &params), exists);
            seen[exists as usize] += 1;
        }
        assert!(seen[0] > 0 && seen[1] > 0);
        let params = fixtures::params(4);
        assert!(!is_feasible(0.0, &fixtures::channel(4), &params));
    }
}
