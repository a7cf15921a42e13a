//! Domain types shared by every solver.

use std::fmt;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical constants of the link, all in linear SI units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemParams {
    /// Receiver noise power σ² in watts.
    pub noise_power: f64,
    /// Power amplifier efficiency η in (0, 1].
    pub amp_efficiency: f64,
    /// Consumption of an activated element, watts.
    pub p_on: f64,
    /// Consumption of a deactivated element, watts.
    pub p_off: f64,
    /// Static consumption of the transceiver chains, watts.
    pub p_static: f64,
    /// Maximum transmit power, watts.
    pub p_max: f64,
    /// Minimum worst-case SNR (linear).
    pub gamma_min: f64,
    pub n_elements: usize,
}

impl SystemParams {
    /// Fixed consumption `P_static + N * P_off`.
    pub fn p_fix(&self) -> f64 {
        self.p_static + self.n_elements as f64 * self.p_off
    }

    pub fn with_gamma_min(&self, gamma_min: f64) -> Self {
        Self {
            gamma_min,
            ..self.clone()
        }
    }
}

/// Estimated channel magnitudes and the CSI-uncertainty radius.
///
/// `alpha_hat[0]` is the direct link, `alpha_hat[1..=N]` the cascaded links
/// through each reflecting element.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelAmplitudes {
    pub alpha_hat: Vec<f64>,
    pub xi: f64,
}

impl ChannelAmplitudes {
    pub fn new(alpha_hat: Vec<f64>, xi: f64) -> Self {
        Self { alpha_hat, xi }
    }

    pub fn n_elements(&self) -> usize {
        self.alpha_hat.len().saturating_sub(1)
    }

    pub fn direct(&self) -> f64 {
        self.alpha_hat[0]
    }

    pub fn cascaded(&self) -> &[f64] {
        &self.alpha_hat[1..]
    }

    /// Smallest amplitude over the direct and all cascaded links.
    pub fn alpha_min(&self) -> f64 {
        self.alpha_hat.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn with_xi(&self, xi: f64) -> Self {
        Self {
            alpha_hat: self.alpha_hat.clone(),
            xi,
        }
    }
}

/// On/off state of each reflecting element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Activation(Vec<bool>);

impl Activation {
    pub fn new(bits: Vec<bool>) -> Self {
        Self(bits)
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![false; n])
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![true; n])
    }

    /// Bit `n` of `mask` is element `n`.
    pub fn from_mask(mask: u64, n: usize) -> Self {
        Self((0..n).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn get(&self, n: usize) -> bool {
        self.0[n]
    }

    pub fn set(&mut self, n: usize, on: bool) {
        self.0[n] = on;
    }

    /// Indices of the activated elements, ascending.
    pub fn active_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn to_bitstring(&self) -> String {
        self.0.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub fn from_bitstring(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Config(format!("invalid activation bit {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Self)
    }
}

impl fmt::Display for Activation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bitstring())
    }
}

impl Serialize for Activation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_bitstring())
    }
}

impl<'de> Deserialize<'de> for Activation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Activation::from_bitstring(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Feasible,
    Infeasible,
}

/// Iteration counters collected by a solver run.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Diagnostics {
    /// Total iterations: both AO loops combined, or processed B&B nodes.
    pub iterations: usize,
    /// Per-loop AO iterations (power-first, element-first). For B&B, the
    /// sum over all AO calls.
    pub loop_iterations: [usize; 2],
    /// Peak number of queued B&B nodes.
    pub queue_max: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

/// Result of a solver run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Solution {
    #[serde(rename = "p_watts")]
    pub p: f64,
    pub x: Activation,
    pub ee: f64,
    pub status: Status,
    #[serde(rename = "stats")]
    pub diagnostics: Diagnostics,
}

impl Solution {
    pub fn feasible(p: f64, x: Activation, ee: f64, diagnostics: Diagnostics) -> Self {
        Self {
            p,
            x,
            ee,
            status: Status::Feasible,
            diagnostics,
        }
    }

    pub fn infeasible(n_elements: usize, diagnostics: Diagnostics) -> Self {
        Self {
            p: 0.0,
            x: Activation::zeros(n_elements),
            ee: f64::NAN,
            status: Status::Infeasible,
            diagnostics,
        }
    }

    pub fn is_feasible(&self) -> bool {
        self.status == Status::Feasible
    }
}

/// Checks every invariant on the parameters and channel, reporting the first
/// violation.
pub fn validate(params: &SystemParams, ch: &ChannelAmplitudes) -> Result<()> {
    let fail = |msg: &str| Err(Error::InvalidParams(msg.to_owned()));
    let finite_pos = |v: f64| v.is_finite() && v > 0.0;

    if !finite_pos(params.noise_power) {
        return fail("noise_power must be positive");
    }
    if !(params.amp_efficiency > 0.0 && params.amp_efficiency <= 1.0) {
        return fail("amp_efficiency out of (0,1]");
    }
    if !finite_pos(params.p_static) {
        return fail("p_static must be positive");
    }
    if !finite_pos(params.p_off) {
        return fail("p_off must be positive");
    }
    if !(params.p_on.is_finite() && params.p_on >= params.p_off) {
        return fail("p_on must be at least p_off");
    }
    if !finite_pos(params.p_max) {
        return fail("p_max must be positive");
    }
    if !finite_pos(params.gamma_min) {
        return fail("gamma_min must be positive");
    }
    if params.n_elements == 0 {
        return fail("n_elements must be at least 1");
    }
    if ch.alpha_hat.len() != params.n_elements + 1 {
        return fail("alpha_hat length must be n_elements + 1");
    }
    if ch.alpha_hat.iter().any(|a| !(a.is_finite() && *a >= 0.0)) {
        return fail("alpha_hat entries must be non-negative");
    }
    if !(ch.xi.is_finite() && ch.xi >= 0.0) {
        return fail("xi must be non-negative");
    }
    if ch.xi > ch.alpha_min() {
        return fail("xi exceeds alpha_min");
    }
    Ok(())
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::units::{dbm_to_watts, mw_to_watts};

    /// Parameters in the style of the default simulation scenario.
    pub fn params(n: usize) -> SystemParams {
        SystemParams {
            noise_power: dbm_to_watts(-85.0),
            amp_efficiency: 0.8,
            p_on: mw_to_watts(10.0),
            p_off: mw_to_watts(0.4),
            p_static: mw_to_watts(100.0),
            p_max: dbm_to_watts(27.0),
            gamma_min: 1.0,
            n_elements: n,
        }
    }

    pub fn channel(n: usize) -> ChannelAmplitudes {
        let mut a = vec![1.5e-5];
        a.extend((0..n).map(|i| 2.0e-7 + 1.0e-8 * i as f64));
        ChannelAmplitudes::new(a, 1.0e-7)
    }
}
