//! Special functions: the gamma function and the one-parameter
//! Mittag-Leffler function E_alpha(z) = sum_k z^k / Gamma(alpha*k + 1).

use crate::error::{Error, Result};
use std::f64::consts::PI;

// Lanczos approximation, g = 7, 9 coefficients. Relative error is below
// 1e-14 on the range this crate needs (binomial weights, series terms).
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// Gamma function for real arguments.
///
/// Returns an error at the poles x = 0, -1, -2, ...
pub fn gamma(x: f64) -> Result<f64> {
    if x <= 0.0 && x == x.trunc() {
        return Err(Error::GammaPole(x));
    }
    Ok(gamma_unchecked(x))
}

fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        // Reflection: Gamma(x) * Gamma(1 - x) = pi / sin(pi x)
        PI / ((PI * x).sin() * gamma_unchecked(1.0 - x))
    } else {
        let z = x - 1.0;
        let mut acc = LANCZOS[0];
        for (i, c) in LANCZOS.iter().enumerate().skip(1) {
            acc += c / (z + i as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
    }
}

/// Term cap for the Mittag-Leffler series.
pub const MITTAG_LEFFLER_MAX_TERMS: usize = 500;
/// Absolute term size at which the series is considered converged.
pub const MITTAG_LEFFLER_TERM_TOL: f64 = 1e-14;
/// Convergence guard on the argument magnitude.
pub const MITTAG_LEFFLER_MAX_ARG: f64 = 5.0;

/// One-parameter Mittag-Leffler function E_alpha(z) by direct series
/// summation. E_1(z) = exp(z); E_alpha gives the analytic step response
/// of single-pole fractional low-pass stages.
///
/// # Panics
///
/// Panics if `alpha <= 0`.
pub fn mittag_leffler(alpha: f64, z: f64) -> Result<f64> {
    assert!(alpha > 0.0, "alpha must be positive");
    if z.abs() > MITTAG_LEFFLER_MAX_ARG {
        return Err(Error::MittagLefflerRange(z));
    }
    if z == 0.0 {
        return Ok(1.0);
    }
    let mut sum = 0.0;
    let mut z_pow = 1.0;
    for k in 0..MITTAG_LEFFLER_MAX_TERMS {
        let term = z_pow / gamma_unchecked(alpha * k as f64 + 1.0);
        sum += term;
        if term.abs() < MITTAG_LEFFLER_TERM_TOL {
            return Ok(sum);
        }
        z_pow *= z;
        if !z_pow.is_finite() {
            break;
        }
    }
    Err(Error::MittagLefflerDivergent(MITTAG_LEFFLER_MAX_TERMS))
}
