//! Branch-and-bound over the transmit-power interval.
//!
//! Nodes are power intervals `[p_ℓ, p_u]` processed in FIFO order. Each
//! feasible node gets an upper bound from the activation relaxation with the
//! SNR evaluated at `p_u` and the consumption at `p_ℓ`, and a lower bound from
//! AO started at `(p_u, 1_N)`. Starting AO at `p_u` makes the bound gap
//! shrink linearly with the interval length, which is what guarantees
//! termination with an ε-optimal incumbent.

use std::collections::VecDeque;
use std::fmt;
use std::time::Instant;

use serde::Serialize;

use crate::ao::{ao_run_sorted, AoConfig};
use crate::model::{ee_upper_bound, is_feasible};
use crate::params::{Activation, ChannelAmplitudes, Diagnostics, Solution, SystemParams};
use crate::select::SortedChannel;

/// Relative slack for the gap-bound check on floats.
const GAP_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct BnbConfig {
    pub epsilon: f64,
    pub max_iters: usize,
    /// Intervals at most this long are not split; defaults to `p_max · 2⁻⁵²`.
    pub min_interval: Option<f64>,
    /// AO tolerance; defaults to `epsilon`.
    pub ao_epsilon: Option<f64>,
    pub ao_max_iters: usize,
    pub record_trace: bool,
}

impl Default for BnbConfig {
    fn default() -> Self {
        Self {
            epsilon: 1e-3,
            max_iters: 1_000_000,
            min_interval: None,
            ao_epsilon: None,
            ao_max_iters: 100,
            record_trace: false,
        }
    }
}

impl BnbConfig {
    pub fn with_epsilon(epsilon: f64) -> Self {
        Self {
            epsilon,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BnbNode {
    pub p_l: f64,
    pub p_u: f64,
}

impl BnbNode {
    pub fn width(&self) -> f64 {
        self.p_u - self.p_l
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.p_l + self.p_u)
    }

    pub fn bisect(&self) -> (BnbNode, BnbNode) {
        let p_m = self.midpoint();
        (
            BnbNode { p_l: self.p_l, p_u: p_m },
            BnbNode { p_l: p_m, p_u: self.p_u },
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BnbAction {
    /// Initial state before the first node is popped.
    Init,
    PruneInfeas,
    PruneBound,
    PruneExact,
    /// Interval reached the `min_interval` floor without closing the gap.
    PruneFloor,
    Branch,
}

impl fmt::Display for BnbAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BnbAction::Init => "init",
            BnbAction::PruneInfeas => "prune_infeas",
            BnbAction::PruneBound => "prune_bound",
            BnbAction::PruneExact => "prune_exact",
            BnbAction::PruneFloor => "prune_floor",
            BnbAction::Branch => "branch",
        })
    }
}

/// One B&B iteration. `q` is the queue length after the iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct BnbTraceRow {
    pub iter: usize,
    pub p_l: f64,
    pub p_u: f64,
    pub ub: Option<f64>,
    pub lb: Option<f64>,
    pub incumbent: Option<f64>,
    pub q: usize,
    pub action: BnbAction,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct BnbStats {
    pub iterations: usize,
    pub queue_max: usize,
    pub pruned_infeasible: usize,
    pub pruned_bound: usize,
    pub pruned_exact: usize,
    pub pruned_floor: usize,
    pub branched: usize,
    pub ao_iterations: usize,
    /// Lipschitz-type constant `M` bounding `(UB - LB) / Δp` on every node.
    pub gap_constant: f64,
    /// Feasible nodes with `UB - LB > M Δp`.
    pub gap_bound_violations: usize,
    /// Largest upper bound among nodes discarded after bounding.
    pub max_pruned_ub: Option<f64>,
    /// Largest `UB - LB` seen on a feasible node.
    pub max_node_gap: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Termination {
    /// Queue emptied.
    Converged,
    /// Stopped by `max_iters`; the incumbent may be short of the optimum by
    /// up to `residual_gap`.
    IterationCap { residual_gap: f64 },
}

#[derive(Debug, Clone)]
pub struct BnbReport {
    pub solution: Solution,
    pub stats: BnbStats,
    pub termination: Termination,
    pub trace: Vec<BnbTraceRow>,
}

impl BnbReport {
    /// Certificate that every discarded node was within `epsilon` of the
    /// incumbent.
    pub fn certifies(&self, epsilon: f64) -> bool {
        self.termination == Termination::Converged
            && self.stats.pruned_floor == 0
            && match (self.stats.max_pruned_ub, self.solution.is_feasible()) {
                (Some(ub), true) => ub <= self.solution.ee + epsilon,
                _ => true,
            }
    }
}

/// `M = η⁻¹ P_fix⁻² log₂(1 + γ_w(p_max, 1_N))`.
pub fn gap_constant(ch: &ChannelAmplitudes, params: &SystemParams) -> f64 {
    ee_upper_bound(ch, params) / (params.amp_efficiency * params.p_fix())
}

/// Optimum of the relaxation on `node`, or `None` when the node is infeasible.
pub fn upper_bound(node: &BnbNode, ch: &ChannelAmplitudes, params: &SystemParams) -> Option<f64> {
    SortedChannel::new(ch).solve(node.p_u, node.p_l, params).map(|s| s.value)
}

struct Incumbent {
    p: f64,
    x: Activation,
    ee: f64,
}

/// Globally ε-optimal joint power and activation.
pub fn bnb_solve(ch: &ChannelAmplitudes, params: &SystemParams, cfg: &BnbConfig) -> BnbReport {
    let start = Instant::now();
    let sorted = SortedChannel::new(ch);
    let n = ch.n_elements();
    let min_interval = cfg.min_interval.unwrap_or(params.p_max * f64::EPSILON);
    let ao_cfg = AoConfig {
        epsilon: cfg.ao_epsilon.unwrap_or(cfg.epsilon),
        max_iters: cfg.ao_max_iters,
        init: None,
        trace: false,
    };

    let mut stats = BnbStats {
        gap_constant: gap_constant(ch, params),
        queue_max: 1,
        ..BnbStats::default()
    };
    let mut trace = Vec::new();
    let mut incumbent: Option<Incumbent> = None;
    // Each queued node carries its parent's upper bound for residual-gap reporting.
    let mut queue: VecDeque<(BnbNode, f64)> = VecDeque::new();
    queue.push_back((BnbNode { p_l: 0.0, p_u: params.p_max }, f64::INFINITY));
    if cfg.record_trace {
        trace.push(BnbTraceRow {
            iter: 0,
            p_l: 0.0,
            p_u: params.p_max,
            ub: None,
            lb: None,
            incumbent: None,
            q: 1,
            action: BnbAction::Init,
        });
    }

    let mut termination = Termination::Converged;
    while let Some((node, parent_ub)) = queue.pop_front() {
        if stats.iterations >= cfg.max_iters {
            queue.push_front((node, parent_ub));
            let open = queue.iter().map(|(_, ub)| *ub).fold(f64::NEG_INFINITY, f64::max);
            let best = incumbent.as_ref().map_or(f64::NEG_INFINITY, |inc| inc.ee);
            termination = Termination::IterationCap {
                residual_gap: (open - best).max(0.0),
            };
            break;
        }
        stats.iterations += 1;

        let iter = stats.iterations;
        let row = |trace: &mut Vec<BnbTraceRow>, action, ub, lb, incumbent, q| {
            if cfg.record_trace {
                trace.push(BnbTraceRow {
                    iter,
                    p_l: node.p_l,
                    p_u: node.p_u,
                    ub,
                    lb,
                    incumbent,
                    q,
                    action,
                });
            }
        };

        if !is_feasible(node.p_u, ch, params) {
            stats.pruned_infeasible += 1;
            row(&mut trace, BnbAction::PruneInfeas, None, None, incumbent.as_ref().map(|i| i.ee), queue.len());
            continue;
        }

        let ub = sorted
            .solve(node.p_u, node.p_l, params)
            .expect("feasible node has a feasible relaxation")
            .value;
        let ao = ao_run_sorted(&sorted, node.p_l, node.p_u, ch, params, &ao_cfg);
        assert!(ao.solution.is_feasible(), "AO infeasible on a feasible node");
        stats.ao_iterations += ao.solution.diagnostics.iterations;
        let lb = ao.solution.ee;

        let gap = ub - lb;
        stats.max_node_gap = stats.max_node_gap.max(gap);
        if gap > stats.gap_constant * node.width() + GAP_TOLERANCE * ub.abs() {
            stats.gap_bound_violations += 1;
        }

        if incumbent.as_ref().map_or(true, |inc| lb > inc.ee) {
            incumbent = Some(Incumbent {
                p: ao.solution.p,
                x: ao.solution.x.clone(),
                ee: lb,
            });
        }
        let best = incumbent.as_ref().map(|i| i.ee).expect("set above");

        let action = if ub <= best + cfg.epsilon {
            stats.pruned_bound += 1;
            BnbAction::PruneBound
        } else if lb == ub {
            stats.pruned_exact += 1;
            BnbAction::PruneExact
        } else if node.width() <= min_interval {
            stats.pruned_floor += 1;
            BnbAction::PruneFloor
        } else {
            let (left, right) = node.bisect();
            queue.push_back((left, ub));
            queue.push_back((right, ub));
            stats.branched += 1;
            stats.queue_max = stats.queue_max.max(queue.len());
            BnbAction::Branch
        };
        if action != BnbAction::Branch {
            stats.max_pruned_ub = Some(stats.max_pruned_ub.map_or(ub, |m: f64| m.max(ub)));
        }
        row(&mut trace, action, Some(ub), Some(lb), Some(best), queue.len());
    }

    let diagnostics = Diagnostics {
        iterations: stats.iterations,
        loop_iterations: [stats.ao_iterations, 0],
        queue_max: stats.queue_max,
        elapsed: start.elapsed(),
    };
    let solution = match incumbent {
        Some(inc) => Solution::feasible(inc.p, inc.x, inc.ee, diagnostics),
        None => Solution::infeasible(n, diagnostics),
    };
    BnbReport {
        solution,
        stats,
        termination,
        trace,
    }
}
