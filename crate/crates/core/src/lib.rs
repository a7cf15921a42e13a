//! Worst-case energy-efficiency maximization for a single-antenna link
//! assisted by an intelligent reflecting surface with on/off elements and
//! bounded channel-estimation error.
//!
//! The crate provides the objective model, a closed-form power solver built
//! on the Lambert W function, an exact activation solver, alternating
//! optimization ([`ao`]), a globally ε-optimal branch-and-bound ([`bnb`]),
//! three baselines, a brute-force oracle and a seeded Monte-Carlo harness.

pub mod ao;
pub mod baselines;
pub mod bnb;
pub mod cli;
pub mod config;
pub mod error;
pub mod experiments;
pub mod lambertw;
pub mod model;
pub mod oracle;
pub mod params;
pub mod power;
pub mod select;
pub mod units;

pub use ao::{ao_run, ao_solve, AoConfig};
pub use bnb::{bnb_solve, BnbConfig, BnbReport};
pub use error::{Error, Result};
pub use params::{validate, Activation, ChannelAmplitudes, Diagnostics, Solution, Status, SystemParams};
