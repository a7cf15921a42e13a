//! Alternating optimization over transmit power and element activation.
//!
//! Two loops start from the same feasible point. The power-first loop
//! alternates the closed-form power update with the exact activation solver;
//! the element-first loop runs the same updates in the opposite order. Each
//! loop stops once the objective changes by less than `epsilon`, and the
//! better of the two end points is returned.

use std::time::Instant;

use serde::Serialize;

use crate::model::{is_feasible, u_val, v_val, worst_case_ee};
use crate::params::{Activation, ChannelAmplitudes, Diagnostics, Solution, SystemParams};
use crate::power::optimal_power_uv;
use crate::select::SortedChannel;

/// Relative slack allowed when checking the ascent property on floats.
pub const ASCENT_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct AoConfig {
    pub epsilon: f64,
    /// Iteration cap per loop.
    pub max_iters: usize,
    /// Starting point; `(p_u, 1_N)` when `None`. Must be feasible.
    pub init: Option<(f64, Activation)>,
    pub trace: bool,
}

impl Default for AoConfig {
    fn default() -> Self {
        Self {
            epsilon: 1e-3,
            max_iters: 100,
            init: None,
            trace: false,
        }
    }
}

impl AoConfig {
    pub fn with_epsilon(epsilon: f64) -> Self {
        Self {
            epsilon,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AoLoop {
    PowerFirst,
    ElementFirst,
}

#[derive(Debug, Clone, Serialize)]
pub struct AoTraceRecord {
    pub iteration: usize,
    pub loop_id: AoLoop,
    pub p: f64,
    pub count_on: usize,
    pub ee: f64,
}

/// End point and objective history of one loop.
#[derive(Debug, Clone)]
pub struct LoopSummary {
    pub p: f64,
    pub x: Activation,
    pub ee: f64,
    pub iterations: usize,
    /// Whether the `epsilon` criterion fired before the cap.
    pub converged: bool,
    /// Objective values `EE⁽⁰⁾, EE⁽¹⁾, …`.
    pub history: Vec<f64>,
    /// Every iterate satisfied the SNR and power-window constraints.
    pub all_feasible: bool,
}

impl LoopSummary {
    pub fn is_monotone(&self) -> bool {
        self.history
            .windows(2)
            .all(|w| w[1] >= w[0] - ASCENT_TOLERANCE * w[0].abs())
    }
}

#[derive(Debug, Clone)]
pub struct AoRun {
    pub solution: Solution,
    /// Power-first and element-first loops; empty when infeasible.
    pub loops: Vec<LoopSummary>,
    pub trace: Vec<AoTraceRecord>,
}

/// Runs AO on the power window `[p_l, p_u]`.
pub fn ao_solve(p_l: f64, p_u: f64, ch: &ChannelAmplitudes, params: &SystemParams, cfg: &AoConfig) -> Solution {
    ao_run(p_l, p_u, ch, params, cfg).solution
}

/// [`ao_solve`] keeping per-loop histories and the optional trace.
pub fn ao_run(p_l: f64, p_u: f64, ch: &ChannelAmplitudes, params: &SystemParams, cfg: &AoConfig) -> AoRun {
    ao_run_sorted(&SortedChannel::new(ch), p_l, p_u, ch, params, cfg)
}

pub(crate) fn ao_run_sorted(
    sorted: &SortedChannel,
    p_l: f64,
    p_u: f64,
    ch: &ChannelAmplitudes,
    params: &SystemParams,
    cfg: &AoConfig,
) -> AoRun {
    let start = Instant::now();
    let n = ch.n_elements();
    if !is_feasible(p_u, ch, params) {
        let diagnostics = Diagnostics {
            elapsed: start.elapsed(),
            ..Diagnostics::default()
        };
        return AoRun {
            solution: Solution::infeasible(n, diagnostics),
            loops: Vec::new(),
            trace: Vec::new(),
        };
    }

    let (p0, x0) = cfg.init.clone().unwrap_or_else(|| (p_u, Activation::ones(n)));
    let solver = Alternator {
        sorted,
        ch,
        params,
        p_l,
        p_u,
        cfg,
    };
    assert!(solver.is_feasible_point(p0, &x0), "AO initial point must be feasible");

    let mut trace = Vec::new();
    let first = solver.run(AoLoop::PowerFirst, p0, x0.clone(), &mut trace);
    let second = solver.run(AoLoop::ElementFirst, p0, x0, &mut trace);

    let best = if first.ee >= second.ee { &first } else { &second };
    let diagnostics = Diagnostics {
        iterations: first.iterations + second.iterations,
        loop_iterations: [first.iterations, second.iterations],
        queue_max: 0,
        elapsed: start.elapsed(),
    };
    AoRun {
        solution: Solution::feasible(best.p, best.x.clone(), best.ee, diagnostics),
        loops: vec![first, second],
        trace,
    }
}

struct Alternator<'a> {
    sorted: &'a SortedChannel,
    ch: &'a ChannelAmplitudes,
    params: &'a SystemParams,
    p_l: f64,
    p_u: f64,
    cfg: &'a AoConfig,
}

impl Alternator<'_> {
    fn is_feasible_point(&self, p: f64, x: &Activation) -> bool {
        p >= self.p_l && p <= self.p_u && u_val(self.ch, x, self.params) * p >= self.params.gamma_min
    }

    fn power_step(&self, x: &Activation) -> f64 {
        let u = u_val(self.ch, x, self.params);
        optimal_power_uv(self.p_l, self.p_u, u, v_val(x, self.params), self.params)
            .expect("activation feasible at a power inside the window")
    }

    fn element_step(&self, p: f64) -> Activation {
        self.sorted
            .solve(p, p, self.params)
            .expect("previous activation is feasible at this power")
            .x
    }

    fn run(&self, which: AoLoop, p0: f64, x0: Activation, trace: &mut Vec<AoTraceRecord>) -> LoopSummary {
        let mut p = p0;
        let mut x = x0;
        let mut ee = worst_case_ee(p, self.ch, &x, self.params);
        let mut history = vec![ee];
        let mut all_feasible = true;
        let mut record = |iteration: usize, p: f64, x: &Activation, ee: f64| {
            if self.cfg.trace {
                trace.push(AoTraceRecord {
                    iteration,
                    loop_id: which,
                    p,
                    count_on: x.count(),
                    ee,
                });
            }
        };
        record(0, p, &x, ee);

        let mut iterations = 0;
        let mut converged = false;
        while iterations < self.cfg.max_iters {
            iterations += 1;
            let (next_p, next_x) = match which {
                AoLoop::PowerFirst => {
                    let p_new = self.power_step(&x);
                    (p_new, self.element_step(p_new))
                }
                AoLoop::ElementFirst => {
                    let x_new = self.element_step(p);
                    (self.power_step(&x_new), x_new)
                }
            };
            let next_ee = worst_case_ee(next_p, self.ch, &next_x, self.params);
            all_feasible &= self.is_feasible_point(next_p, &next_x);
            debug_assert!(next_ee >= ee - ASCENT_TOLERANCE * ee.abs(), "AO objective decreased");
            record(iterations, next_p, &next_x, next_ee);
            history.push(next_ee);

            let change = (next_ee - ee).abs();
            p = next_p;
            x = next_x;
            ee = next_ee;
            if change < self.cfg.epsilon {
                converged = true;
                break;
            }
        }

        LoopSummary {
            p,
            x,
            ee,
            iterations,
            converged,
            history,
            all_feasible,
        }
    }
}
