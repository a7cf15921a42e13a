//! Principal branch W₀ of the Lambert W function on the real line.
//!
//! Initial guesses come from the branch-point series (near -1/e), a
//! logarithmic rational approximation (moderate z) or the asymptotic
//! expansion (large z); Halley's iteration then refines to machine precision.

use std::f64::consts::E;

use crate::error::{Error, Result};

/// -1/e, the branch point.
pub const BRANCH_POINT: f64 = -1.0 / E;

/// Inputs this far below the branch point are treated as rounding noise.
const CLAMP_TOLERANCE: f64 = 1e-15;
const MAX_ITERATIONS: usize = 50;
const STEP_TOLERANCE: f64 = 1e-14;

/// Evaluates W₀(z), the solution `w >= -1` of `w * e^w = z`.
pub fn w0(z: f64) -> Result<f64> {
    if z.is_nan() || z < BRANCH_POINT - CLAMP_TOLERANCE {
        return Err(Error::LambertDomain(z));
    }
    if z <= BRANCH_POINT {
        return Ok(-1.0);
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    if z == f64::INFINITY {
        return Ok(f64::INFINITY);
    }

    let mut w = initial_guess(z);
    for _ in 0..MAX_ITERATIONS {
        let ew = w.exp();
        let f = w * ew - z;
        let wp1 = w + 1.0;
        if f == 0.0 || wp1 == 0.0 {
            break;
        }
        let step = f / (ew * wp1 - (w + 2.0) * f / (2.0 * wp1));
        let next = (w - step).max(-1.0);
        let moved = (next - w).abs();
        w = next;
        if moved <= STEP_TOLERANCE * (1.0 + w.abs()) {
            break;
        }
    }
    Ok(w)
}

fn initial_guess(z: f64) -> f64 {
    if z < -0.25 {
        // Series in p = sqrt(2(ez + 1)) about the branch point.
        let p = (2.0 * E.mul_add(z, 1.0)).max(0.0).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else if z < 3.0 {
        let l = z.ln_1p();
        l * (1.0 - (1.0 + l).ln() / (2.0 + l))
    } else {
        let l1 = z.ln();
        let l2 = l1.ln();
        l1 - l2 + l2 / l1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn residual(z: f64) -> f64 {
        let w = w0(z).unwrap();
        (w * w.exp() - z).abs() / z.abs().max(1.0)
    }

    #[test]
    fn exact_points() {
        assert_eq!(w0(0.0).unwrap(), 0.0);
        assert!((w0(E).unwrap() - 1.0).abs() <= 1e-12);
        assert_eq!(w0(BRANCH_POINT).unwrap(), -1.0);
    }

    #[test]
    fn omega_constant_matches_fixed_point_oracle() {
        // w <- (w^2 + z e^{-w}) / (w + 1) converges to W(z).
        let z = 1.0f64;
        let mut w = 1.0f64;
        for _ in 0..200 {
            w = (w * w + z * (-w).exp()) / (w + 1.0);
            if (w * w.exp() - z).abs() < 1e-14 {
                break;
            }
        }
        assert!((w - 0.5671432904).abs() < 1e-10);
        assert!((w0(1.0).unwrap() - w).abs() < 1e-13);
    }

    #[test]
    fn clamps_rounding_noise_and_rejects_below_branch() {
        assert_eq!(w0(BRANCH_POINT - 5e-16).unwrap(), -1.0);
        assert!(matches!(w0(BRANCH_POINT - 1e-12), Err(Error::LambertDomain(_))));
        assert!(w0(-1.0).is_err());
        assert!(w0(f64::NAN).is_err());
    }

    #[test]
    fn near_branch_point_and_large_arguments() {
        for dz in [1e-14, 1e-10, 1e-6, 1e-3, 0.1] {
            let z = BRANCH_POINT + dz;
            assert!(residual(z) <= 1e-12, "z = {z}");
            assert!(w0(z).unwrap() > -1.0);
        }
        for z in [3.0, 10.0, 1e3, 1e6, 1e12, 1e300] {
            assert!(residual(z) <= 1e-12, "z = {z}");
        }
    }

    proptest! {
        #[test]
        fn defining_identity(z in BRANCH_POINT..1e6) {
            prop_assert!(residual(z) <= 1e-12);
        }

        #[test]
        fn monotone_and_ranged(a in BRANCH_POINT..1e4, b in BRANCH_POINT..1e4) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let (wl, wh) = (w0(lo).unwrap(), w0(hi).unwrap());
            prop_assert!(wl <= wh);
            prop_assert!(wl >= -1.0);
            prop_assert_eq!(wh >= 0.0, hi >= 0.0);
        }
    }
}
