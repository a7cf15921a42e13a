//! Exact solver for the binary activation subproblem
//!
//! ```text
//! max_x  log₂(1 + γ_w(p_num, x)) / P_tot(p_den, x)   s.t.  γ_w(p_num, x) >= γ_min
//! ```
//!
//! With `p_num == p_den` this is the fixed-power activation problem; with
//! `(p_num, p_den) = (p_u, p_ℓ)` it is the relaxation used as the B&B upper
//! bound.
//!
//! For a fixed number `k` of active elements, `g`, `v` and the denominator
//! depend on `x` only through `k`, while the objective and the SNR are
//! nondecreasing in `f(x)`. The best activation with `k` elements is therefore
//! the `k` largest amplitudes, and the global optimum is the best of the
//! `N + 1` sorted prefixes.

use crate::model::{split_ratio, u_from_fg, v_from_count};
use crate::params::{Activation, ChannelAmplitudes, SystemParams};

#[derive(Debug, Clone, Copy)]
pub struct SelectInstance<'a> {
    /// Power inside the SNR (numerator) term.
    pub p_num: f64,
    /// Power inside the consumption (denominator) term.
    pub p_den: f64,
    pub ch: &'a ChannelAmplitudes,
    pub params: &'a SystemParams,
}

impl<'a> SelectInstance<'a> {
    /// Fixed transmit power `p` in both terms.
    pub fn fixed_power(p: f64, ch: &'a ChannelAmplitudes, params: &'a SystemParams) -> Self {
        Self {
            p_num: p,
            p_den: p,
            ch,
            params,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub x: Activation,
    pub value: f64,
}

/// Cascaded amplitudes sorted once per channel, with their prefix sums.
#[derive(Debug, Clone)]
pub struct SortedChannel {
    /// Element indices by descending amplitude; ties keep ascending index.
    order: Vec<usize>,
    /// `prefix_f[k]` is `f` of the top-`k` activation.
    prefix_f: Vec<f64>,
    xi: f64,
}

impl SortedChannel {
    pub fn new(ch: &ChannelAmplitudes) -> Self {
        let amps = ch.cascaded();
        let mut order: Vec<usize> = (0..amps.len()).collect();
        order.sort_by(|&a, &b| amps[b].total_cmp(&amps[a]));
        let mut prefix_f = Vec::with_capacity(amps.len() + 1);
        let mut acc = ch.direct();
        prefix_f.push(acc);
        for &n in &order {
            acc += amps[n];
            prefix_f.push(acc);
        }
        Self {
            order,
            prefix_f,
            xi: ch.xi,
        }
    }

    pub fn n_elements(&self) -> usize {
        self.order.len()
    }

    /// Activation of the `k` largest amplitudes.
    pub fn top_k(&self, k: usize) -> Activation {
        let mut x = Activation::zeros(self.order.len());
        for &n in &self.order[..k] {
            x.set(n, true);
        }
        x
    }

    /// `u` of the top-`k` activation.
    fn u_top(&self, k: usize, params: &SystemParams) -> f64 {
        let g = self.xi * ((k + 1) as f64).sqrt();
        u_from_fg(self.prefix_f[k], g, params)
    }

    /// Solves the activation problem for this channel; `None` when even the
    /// all-on activation misses the SNR target at `p_num`.
    pub fn solve(&self, p_num: f64, p_den: f64, params: &SystemParams) -> Option<Selection> {
        let eta = params.amp_efficiency;
        let mut best: Option<(usize, f64)> = None;
        for k in 0..=self.n_elements() {
            let u = self.u_top(k, params);
            if u * p_num < params.gamma_min {
                continue;
            }
            let value = split_ratio(u, p_num, p_den, v_from_count(k, params), eta);
            if best.map_or(true, |(_, b)| value > b) {
                best = Some((k, value));
            }
        }
        best.map(|(k, value)| Selection {
            x: self.top_k(k),
            value,
        })
    }
}

/// Global maximizer of the activation subproblem in `O(N log N)`.
pub fn solve_select(inst: &SelectInstance<'_>) -> Option<Selection> {
    SortedChannel::new(inst.ch).solve(inst.p_num, inst.p_den, inst.params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{ee_from_uv, is_feasible, total_power, u_val, v_val, worst_case_ee, worst_case_snr};
    use crate::params::fixtures;

    fn params(n: usize) -> SystemParams {
        SystemParams {
            noise_power: 1.0,
            amp_efficiency: 0.5,
            p_on: 0.02,
            p_off: 0.01,
            p_static: 0.5,
            p_max: 4.0,
            gamma_min: 1e-9,
            n_elements: n,
        }
    }

    #[test]
    fn single_element_activates_when_it_helps() {
        let p = params(1);
        let ch = ChannelAmplitudes::new(vec![0.5, 0.4], 0.0);
        let ee_on = worst_case_ee(2.0, &ch, &Activation::ones(1), &p);
        let ee_off = worst_case_ee(2.0, &ch, &Activation::zeros(1), &p);
        assert!(ee_on > ee_off);
        let sel = solve_select(&SelectInstance::fixed_power(2.0, &ch, &p)).unwrap();
        assert_eq!(sel.x, Activation::ones(1));
        assert_eq!(sel.value, ee_on);
    }

    #[test]
    fn free_elements_are_all_activated() {
        let mut p = params(6);
        p.p_on = p.p_off;
        let ch = ChannelAmplitudes::new(vec![0.3, 0.1, 0.5, 0.2, 0.05, 0.4, 0.3], 0.0);
        let sel = solve_select(&SelectInstance::fixed_power(1.0, &ch, &p)).unwrap();
        assert_eq!(sel.x, Activation::ones(6));
    }

    #[test]
    fn infeasible_iff_all_on_misses_target() {
        let ch = fixtures::channel(5);
        let mut p = fixtures::params(5);
        p.gamma_min = worst_case_snr(0.2, &ch, &Activation::ones(5), &p);
        assert!(solve_select(&SelectInstance::fixed_power(0.2, &ch, &p)).is_some());
        assert!(solve_select(&SelectInstance::fixed_power(0.2 * (1.0 - 1e-9), &ch, &p)).is_none());
        assert!(is_feasible(0.2, &ch, &p));
    }

    #[test]
    fn value_matches_model_and_split_objective() {
        let ch = fixtures::channel(8);
        let p = fixtures::params(8);
        let sel = solve_select(&SelectInstance::fixed_power(0.3, &ch, &p)).unwrap();
        assert_eq!(sel.value, worst_case_ee(0.3, &ch, &sel.x, &p));
        let relaxed = solve_select(&SelectInstance { p_num: 0.3, p_den: 0.1, ch: &ch, params: &p }).unwrap();
        let u = u_val(&ch, &relaxed.x, &p);
        let expected = (u * 0.3).ln_1p() / std::f64::consts::LN_2 / total_power(0.1, &relaxed.x, &p);
        assert_eq!(relaxed.value, expected);
        assert!(relaxed.value >= sel.value);
        assert_eq!(ee_from_uv(0.3, u, v_val(&relaxed.x, &p), p.amp_efficiency), worst_case_ee(0.3, &ch, &relaxed.x, &p));
    }

    #[test]
    fn equal_amplitudes_prefer_lower_indices() {
        let p = params(4);
        let sorted = SortedChannel::new(&ChannelAmplitudes::new(vec![1.0, 0.25, 0.5, 0.25, 0.5], 0.0));
        assert_eq!(sorted.top_k(1).to_bitstring(), "0100");
        assert_eq!(sorted.top_k(3).to_bitstring(), "1101");
        assert!(sorted.solve(1.0, 1.0, &p).is_some());
    }
}
