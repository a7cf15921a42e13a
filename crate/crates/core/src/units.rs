//! Conversions between logarithmic and linear units.
//!
//! All solver arithmetic is linear SI; these helpers are only used at the
//! configuration and reporting boundaries.

/// dBm to watts: `10^(v/10) * 1e-3`.
pub fn dbm_to_watts(v: f64) -> f64 {
    10f64.powf(v / 10.0) * 1e-3
}

pub fn watts_to_dbm(w: f64) -> f64 {
    10.0 * (w * 1e3).log10()
}

/// dB to a linear power ratio.
pub fn db_to_linear(v: f64) -> f64 {
    10f64.powf(v / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

pub fn mw_to_watts(v: f64) -> f64 {
    v * 1e-3
}
