//! JSON instance/scenario configuration.
//!
//! Physical quantities are given in dB/dBm/mW as engineers quote them and
//! converted to linear SI units on load.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiments::{make_gamma_min, trial_rng, ScenarioConfig, SweepConfig};
use crate::params::{validate, ChannelAmplitudes, SystemParams};
use crate::units::{db_to_linear, dbm_to_watts, mw_to_watts};

/// Geometry and propagation overrides; positions in meters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeometryConfig {
    pub tx: [f64; 3],
    pub rx: [f64; 3],
    pub irs: [f64; 3],
    pub rician_kappa_db: f64,
    pub ref_loss_db: f64,
    pub ref_distance_m: f64,
    pub ple_irs: f64,
    pub ple_direct: f64,
    pub wavelength_m: f64,
}

impl Default for GeometryConfig {
    fn default() -> Self {
        let s = ScenarioConfig::default();
        Self {
            tx: s.tx,
            rx: s.rx,
            irs: s.irs,
            rician_kappa_db: s.rician_kappa_db,
            ref_loss_db: s.ref_loss_db,
            ref_distance_m: s.ref_distance_m,
            ple_irs: s.ple_irs,
            ple_direct: s.ple_direct,
            wavelength_m: s.wavelength_m,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub noise_power_dbm: f64,
    pub eta: f64,
    pub p_on_mw: f64,
    pub p_off_mw: f64,
    pub p_static_mw: f64,
    pub p_max_dbm: f64,
    pub chi: f64,
    pub tau: f64,
    pub n_elements: usize,
    pub seed: u64,
    pub trials: usize,
    /// Explicit SNR target in dB, replacing the `chi` construction.
    pub gamma_min_db: Option<f64>,
    /// Explicit channel, replacing random generation.
    pub channel: Option<ChannelAmplitudes>,
    pub geometry: GeometryConfig,
    pub sweep: SweepConfig,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            noise_power_dbm: -85.0,
            eta: 0.8,
            p_on_mw: 10.0,
            p_off_mw: 0.4,
            p_static_mw: 100.0,
            p_max_dbm: 27.0,
            chi: 0.4,
            tau: 0.0,
            n_elements: 50,
            seed: 1,
            trials: 100,
            gamma_min_db: None,
            channel: None,
            geometry: GeometryConfig::default(),
            sweep: SweepConfig::default(),
        }
    }
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn scenario(&self) -> ScenarioConfig {
        let g = &self.geometry;
        ScenarioConfig {
            tx: g.tx,
            rx: g.rx,
            irs: g.irs,
            rician_kappa_db: g.rician_kappa_db,
            tau: self.tau,
            chi: self.chi,
            n_elements: self.n_elements,
            trials: self.trials,
            rng_seed: self.seed,
            ref_loss_db: g.ref_loss_db,
            ref_distance_m: g.ref_distance_m,
            ple_irs: g.ple_irs,
            ple_direct: g.ple_direct,
            wavelength_m: g.wavelength_m,
        }
    }

    /// Linear parameters with a given SNR target.
    pub fn system_params(&self, gamma_min: f64) -> SystemParams {
        SystemParams {
            noise_power: dbm_to_watts(self.noise_power_dbm),
            amp_efficiency: self.eta,
            p_on: mw_to_watts(self.p_on_mw),
            p_off: mw_to_watts(self.p_off_mw),
            p_static: mw_to_watts(self.p_static_mw),
            p_max: dbm_to_watts(self.p_max_dbm),
            gamma_min,
            n_elements: self.n_elements,
        }
    }

    /// The single instance described by this config: the explicit channel if
    /// given, otherwise trial 0 of the seeded scenario.
    pub fn instance(&self) -> Result<(ChannelAmplitudes, SystemParams)> {
        let scenario = self.scenario();
        scenario.validate()?;
        let ch = match &self.channel {
            Some(ch) => {
                if ch.n_elements() != self.n_elements {
                    return Err(Error::Config(format!(
                        "channel has {} elements but n_elements = {}",
                        ch.n_elements(),
                        self.n_elements
                    )));
                }
                ch.clone()
            }
            None => crate::experiments::generate_channels(&scenario, &mut trial_rng(self.seed, 0)),
        };
        let mut params = self.system_params(1.0);
        params.gamma_min = match self.gamma_min_db {
            Some(db) => db_to_linear(db),
            None => make_gamma_min(&ch, &params, self.chi),
        };
        validate(&params, &ch)?;
        Ok((ch, params))
    }
}
