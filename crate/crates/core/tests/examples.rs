//! Every example must run to completion.

#[path = "../examples/lambert_w.rs"]
mod lambert_w;

#[path = "../examples/optimal_power.rs"]
mod optimal_power;

#[path = "../examples/select_elements.rs"]
mod select_elements;

#[path = "../examples/alternating.rs"]
mod alternating;

#[path = "../examples/branch_and_bound.rs"]
mod branch_and_bound;

#[path = "../examples/baselines.rs"]
mod baselines;

#[path = "../examples/oracle_check.rs"]
mod oracle_check;

#[path = "../examples/sweep.rs"]
mod sweep;

#[path = "../examples/bnb_trace.rs"]
mod bnb_trace;

#[path = "../examples/cli_in_process.rs"]
mod cli_in_process;


#[test]
fn lambert_w_runs() {
    lambert_w::main();
}

#[test]
fn optimal_power_runs() {
    optimal_power::main();
}

#[test]
fn select_elements_runs() {
    select_elements::main();
}

#[test]
fn alternating_runs() {
    alternating::main();
}

#[test]
fn branch_and_bound_runs() {
    branch_and_bound::main();
}

#[test]
fn baselines_runs() {
    baselines::main();
}

#[test]
fn oracle_check_runs() {
    oracle_check::main();
}

#[test]
fn sweep_runs() {
    sweep::main();
}

#[test]
fn bnb_trace_runs() {
    bnb_trace::main();
}

#[test]
fn cli_in_process_runs() {
    cli_in_process::main();
}
