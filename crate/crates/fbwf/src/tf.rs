//! Transfer-function assembly: real factors from conjugate-closed pole
//! sets, polynomial expansion, commensurate and classical low-pass
//! prototypes, and stage cascading.
//!
//! All polynomials store coefficients in ascending powers and all
//! constructed stages are monic with unity DC gain (scalar numerator equal
//! to the constant denominator coefficient).

use crate::error::{Error, Result};
use crate::order::gcd;
use crate::pole::{stable_poles, WPole};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

/// Commensurate transfer function b / sum(d_i w^i) in w = s^q.
#[derive(Debug, Clone, PartialEq)]
pub struct WPlaneTF {
    /// Commensurate order q = 1/Q.
    pub q: f64,
    /// Scalar numerator; equals `den[0]` for unity DC gain.
    pub num: f64,
    /// Monic denominator coefficients d_0..d_n, ascending powers of w.
    pub den: Vec<f64>,
}

impl WPlaneTF {
    pub fn degree(&self) -> usize {
        self.den.len().saturating_sub(1)
    }

    /// Evaluate at a w-plane point.
    pub fn eval(&self, w: Complex64) -> Complex64 {
        self.num / polyval(&self.den, w)
    }

    /// Frequency response at s = jΩ on the principal branch:
    /// w = (jΩ)^q = Ω^q e^{jqπ/2}.
    pub fn response_at(&self, omega: f64) -> Complex64 {
        self.eval(fractional_jomega(omega, self.q))
    }

    pub fn dc_gain(&self) -> f64 {
        self.num / self.den[0]
    }
}

/// Classical s-domain rational transfer function.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalTF {
    /// Numerator coefficients, ascending powers of s.
    pub num: Vec<f64>,
    /// Denominator coefficients, ascending powers of s.
    pub den: Vec<f64>,
}

impl ClassicalTF {
    pub fn eval(&self, s: Complex64) -> Complex64 {
        polyval(&self.num, s) / polyval(&self.den, s)
    }

    pub fn response_at(&self, omega: f64) -> Complex64 {
        self.eval(Complex64::new(0.0, omega))
    }

    pub fn dc_gain(&self) -> f64 {
        self.num[0] / self.den[0]
    }
}

/// One cascade stage.
#[derive(Debug, Clone, PartialEq)]
pub enum Stage {
    Classical(ClassicalTF),
    Fractional(WPlaneTF),
}

impl Stage {
    pub fn response_at(&self, omega: f64) -> Complex64 {
        match self {
            Stage::Classical(tf) => tf.response_at(omega),
            Stage::Fractional(tf) => tf.response_at(omega),
        }
    }

    pub fn dc_gain(&self) -> f64 {
        match self {
            Stage::Classical(tf) => tf.dc_gain(),
            Stage::Fractional(tf) => tf.dc_gain(),
        }
    }
}

/// An ordered list of stages evaluated as a pointwise product.
#[derive(Debug, Clone, PartialEq)]
pub struct CascadeFilter {
    pub stages: Vec<Stage>,
}

impl CascadeFilter {
    pub fn response_at(&self, omega: f64) -> Complex64 {
        self.stages
            .iter()
            .map(|stage| stage.response_at(omega))
            .product()
    }
}

/// (jΩ)^alpha on the principal branch (first Riemann sheet).
pub fn fractional_jomega(omega: f64, alpha: f64) -> Complex64 {
    Complex64::from_polar(omega.powf(alpha), alpha * FRAC_PI_2)
}

fn polyval(coeffs: &[f64], x: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

/// Real monic factors from a conjugate-closed root set: a real root r
/// yields (w - r), a conjugate pair a ± jb yields (w² - 2aw + a² + b²).
/// Factor order follows the input root order.
pub fn factors_from_roots(roots: &[Complex64]) -> Result<Vec<Vec<f64>>> {
    let n = roots.len();
    let mut used = vec![false; n];
    let mut factors = Vec::new();
    for i in 0..n {
        if used[i] {
            continue;
        }
        used[i] = true;
        let w = roots[i];
        let tol = 1e-9 * w.norm().max(1.0);
        if w.im.abs() <= tol {
            factors.push(vec![-w.re, 1.0]);
            continue;
        }
        let conj = w.conj();
        match (i + 1..n).find(|&j| !used[j] && (roots[j] - conj).norm() <= tol) {
            Some(j) => {
                used[j] = true;
                factors.push(vec![w.norm_sqr(), -2.0 * w.re, 1.0]);
            }
            None => return Err(Error::NotConjugateClosed),
        }
    }
    Ok(factors)
}

/// Real factors from classified poles; see [`factors_from_roots`].
pub fn factors_from_poles(poles: &[WPole]) -> Result<Vec<Vec<f64>>> {
    let roots: Vec<Complex64> = poles.iter().map(|p| p.value).collect();
    factors_from_roots(&roots)
}

/// Expand a factor list by convolution of coefficient vectors.
pub fn expand_polynomial(factors: &[Vec<f64>]) -> Result<Vec<f64>> {
    if factors.is_empty() {
        return Err(Error::EmptyFactorList);
    }
    let mut acc = vec![1.0];
    for factor in factors {
        if factor.is_empty() {
            return Err(Error::EmptyFactorList);
        }
        let mut next = vec![0.0; acc.len() + factor.len() - 1];
        for (i, &a) in acc.iter().enumerate() {
            for (j, &b) in factor.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// A constructed fractional stage with its pole bookkeeping. The factored
/// form is kept alongside the expansion so consumers can evaluate either.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterSynthesis {
    pub tf: WPlaneTF,
    /// Monic factors of the denominator, ascending coefficients.
    pub factors: Vec<Vec<f64>>,
    /// Retained stable poles, descending |arg|.
    pub poles: Vec<WPole>,
    /// Marginal poles dropped from the filter.
    pub marginal: Vec<WPole>,
}

impl FilterSynthesis {
    /// Frequency response evaluated through the factored denominator.
    pub fn response_factored_at(&self, omega: f64) -> Complex64 {
        let w = fractional_jomega(omega, self.tf.q);
        let den: Complex64 = self.factors.iter().map(|f| polyval(f, w)).product();
        self.tf.num / den
    }
}

/// Build the stable P-pole low-pass prototype over Q Riemann sheets for an
/// s-plane cutoff `omega_c`. The pole circle radius is the mapped cutoff
/// Ω̄_c = omega_c^(1/Q); unstable candidates are discarded and marginal
/// candidates are dropped with a warning entry. The numerator is the
/// constant coefficient of the retained denominator, so DC gain is unity.
///
/// `q_den = 1` builds the classical integer-order prototype in w = s;
/// otherwise P/Q must be a reduced proper fraction.
pub fn build_wtf(p: u32, q_den: u32, omega_c: f64) -> Result<FilterSynthesis> {
    if p == 0 || q_den == 0 {
        return Err(Error::InvalidOrder(
            "pole count and sheet count must be positive".into(),
        ));
    }
    if !omega_c.is_finite() || omega_c <= 0.0 {
        return Err(Error::InvalidSpec(format!(
            "cutoff frequency must be positive, got {omega_c}"
        )));
    }
    if gcd(p as u64, q_den as u64) != 1 {
        return Err(Error::InvalidOrder(format!(
            "P = {p} and Q = {q_den} share a common factor"
        )));
    }
    if q_den > 1 && p >= q_den {
        return Err(Error::InvalidOrder(format!(
            "fractional part P/Q = {p}/{q_den} must be less than one"
        )));
    }
    let radius = omega_c.powf(1.0 / q_den as f64);
    let selection = stable_poles(p, q_den, radius);
    let factors = factors_from_poles(&selection.poles)?;
    let mut den = expand_polynomial(&factors)?;
    // Mirror-symmetric factor products cancel some coefficients exactly;
    // snap the rounding residue so those coefficients read as true zeros.
    let scale = den.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    for c in &mut den {
        if c.abs() <= 1e-12 * scale {
            *c = 0.0;
        }
    }
    let num = den[0];
    Ok(FilterSynthesis {
        tf: WPlaneTF {
            q: 1.0 / q_den as f64,
            num,
            den,
        },
        factors,
        poles: selection.poles,
        marginal: selection.marginal,
    })
}

/// Left-half-plane poles of the classical N-th order Butterworth low-pass.
pub fn butterworth_poles(n: u32, omega_c: f64) -> Vec<Complex64> {
    assert!(n >= 1, "order must be positive");
    assert!(omega_c > 0.0, "cutoff must be positive");
    (1..=n)
        .map(|k| {
            let theta = (2 * k + n - 1) as f64 * PI / (2 * n) as f64;
            Complex64::from_polar(omega_c, theta)
        })
        .collect()
}

/// Classical N-th order Butterworth low-pass with monic denominator and
/// numerator omega_c^N (unity DC gain).
pub fn classical_butterworth(n: u32, omega_c: f64) -> ClassicalTF {
    let mut acc = vec![Complex64::new(1.0, 0.0)];
    for pole in butterworth_poles(n, omega_c) {
        let mut next = vec![Complex64::new(0.0, 0.0); acc.len() + 1];
        for (i, &a) in acc.iter().enumerate() {
            next[i] += a * -pole;
            next[i + 1] += a;
        }
        acc = next;
    }
    let den: Vec<f64> = acc.iter().map(|c| c.re).collect();
    debug_assert!(acc
        .iter()
        .all(|c| c.im.abs() < 1e-9 * omega_c.powi(n as i32)));
    ClassicalTF {
        num: vec![den[0]],
        den,
    }
}

/// Assemble stages into a cascade. Every stage must individually have
/// unity DC gain.
pub fn cascade(stages: Vec<Stage>) -> Result<CascadeFilter> {
    if stages.is_empty() {
        return Err(Error::EmptyCascade);
    }
    for (i, stage) in stages.iter().enumerate() {
        let dc = stage.dc_gain();
        if (dc - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidSpec(format!(
                "stage {i} has DC gain {dc}, expected unity"
            )));
        }
    }
    Ok(CascadeFilter { stages })
}

/// Denominator of a commensurate stage as (exponent, coefficient) pairs in
/// powers of s, zero coefficients skipped, exponents strictly decreasing.
pub fn to_s_expression(tf: &WPlaneTF) -> Vec<(f64, f64)> {
    tf.den
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &d)| d != 0.0)
        .map(|(i, &d)| (i as f64 * tf.q, d))
        .collect()
}
