//! Comparison schemes that optimize only one block of variables, or none.

use std::time::Instant;

use crate::model::{is_feasible, worst_case_ee};
use crate::params::{Activation, ChannelAmplitudes, Diagnostics, Solution, SystemParams};
use crate::power::optimal_power;
use crate::select::{solve_select, SelectInstance};

fn timed(start: Instant) -> Diagnostics {
    Diagnostics {
        iterations: 1,
        elapsed: start.elapsed(),
        ..Diagnostics::default()
    }
}

/// Element activation only, transmitting at `p_max` (OREO).
pub fn oreo(ch: &ChannelAmplitudes, params: &SystemParams) -> Solution {
    let start = Instant::now();
    match solve_select(&SelectInstance::fixed_power(params.p_max, ch, params)) {
        Some(sel) => Solution::feasible(params.p_max, sel.x, sel.value, timed(start)),
        None => Solution::infeasible(ch.n_elements(), timed(start)),
    }
}

/// Power allocation only, with every element on (OPA).
pub fn opa(ch: &ChannelAmplitudes, params: &SystemParams) -> Solution {
    let start = Instant::now();
    let x = Activation::ones(ch.n_elements());
    match optimal_power(0.0, params.p_max, ch, &x, params) {
        Some(p) => {
            let ee = worst_case_ee(p, ch, &x, params);
            Solution::feasible(p, x, ee, timed(start))
        }
        None => Solution::infeasible(ch.n_elements(), timed(start)),
    }
}

/// Maximum power with every element on (MPAREA).
pub fn mparea(ch: &ChannelAmplitudes, params: &SystemParams) -> Solution {
    let start = Instant::now();
    if !is_feasible(params.p_max, ch, params) {
        return Solution::infeasible(ch.n_elements(), timed(start));
    }
    let x = Activation::ones(ch.n_elements());
    let ee = worst_case_ee(params.p_max, ch, &x, params);
    Solution::feasible(params.p_max, x, ee, timed(start))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ao::{ao_solve, AoConfig};
    use crate::bnb::{bnb_solve, BnbConfig};
    use crate::model::{ee_from_uv, u_val, v_val, worst_case_snr};
    use crate::params::fixtures;
    use crate::power::unconstrained_optimum;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_instance(rng: &mut ChaCha8Rng, n: usize) -> (ChannelAmplitudes, SystemParams) {
        let mut alpha = vec![rng.gen_range(5e-6..2e-5)];
        alpha.extend((0..n).map(|_| rng.gen_range(1e-7..2e-6)));
        let amin = alpha.iter().copied().fold(f64::INFINITY, f64::min);
        let ch = ChannelAmplitudes::new(alpha, rng.gen_range(0.0..=1.0) * amin);
        let mut p = fixtures::params(n);
        p.p_on = p.p_off * rng.gen_range(1.0..30.0);
        let top = worst_case_snr(p.p_max, &ch, &Activation::ones(n), &p);
        p.gamma_min = top * rng.gen_range(0.01..1.0);
        (ch, p)
    }

    #[test]
    fn dominance_chain_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..200 {
            let n = rng.gen_range(1..20);
            let (ch, p) = random_instance(&mut rng, n);
            let (mp, or, op) = (mparea(&ch, &p), oreo(&ch, &p), opa(&ch, &p));
            let ao = ao_solve(0.0, p.p_max, &ch, &p, &AoConfig::default());
            let bnb = bnb_solve(&ch, &p, &BnbConfig::default()).solution;
            assert!(mp.ee <= or.ee && mp.ee <= op.ee);
            assert!(or.ee <= ao.ee && op.ee <= ao.ee);
            assert!(ao.ee <= bnb.ee + 1e-3);
        }
    }

    #[test]
    fn free_elements_all_on_under_oreo() {
        let mut p = fixtures::params(5);
        p.p_on = p.p_off;
        p.gamma_min = 1e-12;
        let ch = fixtures::channel(5).with_xi(0.0);
        assert_eq!(oreo(&ch, &p).x, Activation::ones(5));
    }

    #[test]
    fn oreo_matches_enumeration_at_max_power() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..50 {
            let n = rng.gen_range(1..=10);
            let (ch, p) = random_instance(&mut rng, n);
            let best = (0u64..1 << n)
                .map(|m| Activation::from_mask(m, n))
                .filter(|x| worst_case_snr(p.p_max, &ch, x, &p) >= p.gamma_min)
                .map(|x| worst_case_ee(p.p_max, &ch, &x, &p))
                .fold(f64::NEG_INFINITY, f64::max);
            assert_eq!(oreo(&ch, &p).ee, best);
        }
    }

    #[test]
    fn opa_with_unit_product() {
        // Choose sigma^2 so that u v eta = 1 with every element on.
        let mut p = fixtures::params(3);
        p.gamma_min = 1e-12;
        let ch = fixtures::channel(3);
        let x = Activation::ones(3);
        let u1 = u_val(&ch, &x, &p) * p.noise_power;
        p.noise_power = u1 * v_val(&x, &p) * p.amp_efficiency;
        let u = u_val(&ch, &x, &p);
        assert!((u * v_val(&x, &p) * p.amp_efficiency - 1.0).abs() < 1e-12);
        let expected = ((std::f64::consts::E - 1.0) / u).min(p.p_max);
        assert!((opa(&ch, &p).p - expected).abs() <= 1e-9 * expected);
        assert!((unconstrained_optimum(u, v_val(&x, &p), p.amp_efficiency) - (std::f64::consts::E - 1.0) / u).abs() < 1e-9 / u);
    }

    #[test]
    fn opa_is_grid_argmax() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..20 {
            let n = rng.gen_range(1..30);
            let (ch, p) = random_instance(&mut rng, n);
            let sol = opa(&ch, &p);
            let x = Activation::ones(n);
            let (u, v) = (u_val(&ch, &x, &p), v_val(&x, &p));
            let lower = p.gamma_min / u;
            for k in 0..=10_000 {
                let q = lower + (p.p_max - lower) * k as f64 / 10_000.0;
                assert!(ee_from_uv(q, u, v, p.amp_efficiency) <= sol.ee * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn mparea_is_direct_evaluation_and_infeasibility_is_shared() {
        let ch = fixtures::channel(4);
        let mut p = fixtures::params(4);
        assert_eq!(mparea(&ch, &p).ee, worst_case_ee(p.p_max, &ch, &Activation::ones(4), &p));
        p.gamma_min = 1e12;
        assert!(!mparea(&ch, &p).is_feasible());
        assert!(!oreo(&ch, &p).is_feasible());
        assert!(!opa(&ch, &p).is_feasible());
    }
}
