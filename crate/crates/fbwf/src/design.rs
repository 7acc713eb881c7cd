//! Specification-to-filter pipeline: exact order, order truncation and
//! split, cutoff computation, radius mapping, stage construction, and the
//! assembled design report.
//!
//! For a low-pass specification (Ω_p, Ω_s, α_p, α_s) the exact order is
//!
//!   N = log sqrt((10^{0.1 α_s} - 1) / (10^{0.1 α_p} - 1)) / log(Ω_s / Ω_p)
//!
//! and the stop-band cutoff for a stage of order n is
//!
//!   Ω_c = Ω_s / (10^{0.1 α_s} - 1)^{1/2n}.
//!
//! The truncated order N + P/Q becomes a classical stage of order N
//! cascaded with a P-pole stage over Q Riemann sheets, each stage getting
//! its own cutoff from its own order.

use crate::error::{Error, Result};
use crate::order::{truncate_order, RationalOrder};
use crate::pole::{classify_pole, WPole, DEFAULT_BOUNDARY_EPS};
use crate::tf::{
    build_wtf, butterworth_poles, cascade, classical_butterworth, CascadeFilter, Stage,
};
use serde::{Deserialize, Serialize};

/// Frequency-domain low-pass requirements.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DesignSpec {
    /// Pass-band edge, rad/sec.
    pub omega_p: f64,
    /// Stop-band edge, rad/sec.
    pub omega_s: f64,
    /// Maximum pass-band attenuation, dB.
    pub alpha_p: f64,
    /// Minimum stop-band attenuation, dB.
    pub alpha_s: f64,
}

impl DesignSpec {
    pub fn new(omega_p: f64, omega_s: f64, alpha_p: f64, alpha_s: f64) -> Result<Self> {
        let spec = Self {
            omega_p,
            omega_s,
            alpha_p,
            alpha_s,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("omega_p", self.omega_p),
            ("omega_s", self.omega_s),
            ("alpha_p", self.alpha_p),
            ("alpha_s", self.alpha_s),
        ];
        for (name, value) in fields {
            if !value.is_finite() {
                return Err(Error::InvalidSpec(format!("{name} must be finite")));
            }
        }
        if self.omega_p <= 0.0 {
            return Err(Error::InvalidSpec("omega_p must be positive".into()));
        }
        if self.omega_s <= self.omega_p {
            return Err(Error::InvalidSpec("omega_p must be < omega_s".into()));
        }
        if self.alpha_p <= 0.0 {
            return Err(Error::InvalidSpec("alpha_p must be positive".into()));
        }
        if self.alpha_s <= self.alpha_p {
            return Err(Error::InvalidSpec("alpha_p must be < alpha_s".into()));
        }
        Ok(())
    }
}

/// Which band's attenuation requirement pins a stage's cutoff frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CutoffRule {
    /// Invert the magnitude-squared function at the stop-band edge
    /// (the default; both stages then meet the stop-band requirement
    /// exactly at their own order).
    StopBand,
    /// Invert it at the pass-band edge instead; applies to the fractional
    /// stage, whose cutoff convention is the ambiguous one.
    PassBand,
}

/// Exact Butterworth order meeting the specification.
pub fn required_order(spec: &DesignSpec) -> f64 {
    let ratio = (10f64.powf(0.1 * spec.alpha_s) - 1.0) / (10f64.powf(0.1 * spec.alpha_p) - 1.0);
    ratio.sqrt().ln() / (spec.omega_s / spec.omega_p).ln()
}

/// Cutoff for an order-n stage from the stop-band requirement.
pub fn cutoff_from_stopband(omega_s: f64, alpha_s: f64, n: f64) -> f64 {
    omega_s / (10f64.powf(0.1 * alpha_s) - 1.0).powf(1.0 / (2.0 * n))
}

/// Cutoff for an order-n stage from the pass-band requirement.
pub fn cutoff_from_passband(omega_p: f64, alpha_p: f64, n: f64) -> f64 {
    omega_p / (10f64.powf(0.1 * alpha_p) - 1.0).powf(1.0 / (2.0 * n))
}

/// Map an s-plane cutoff radius onto the w-plane: Ω̄_c = Ω_c^{1/Q}.
/// Contracts radii above one and amplifies radii below one.
pub fn map_radius(omega_c: f64, q_den: u32) -> f64 {
    assert!(omega_c > 0.0, "cutoff must be positive");
    assert!(q_den >= 1, "sheet count must be positive");
    omega_c.powf(1.0 / q_den as f64)
}

// Classical stage poles classified in the s-plane (q = 1): the usual
// left-half-plane Butterworth set.
fn classical_stage_poles(n: u32, omega_c: f64) -> Vec<WPole> {
    butterworth_poles(n, omega_c)
        .into_iter()
        .map(|w| classify_pole(w, 1, DEFAULT_BOUNDARY_EPS).expect("butterworth poles are nonzero"))
        .collect()
}

/// Everything produced by one design run.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignReport {
    pub spec: DesignSpec,
    pub cutoff_rule: CutoffRule,
    pub decimals: usize,
    /// Exact order from the specification.
    pub n_exact: f64,
    /// Truncated and reduced realization order.
    pub order: RationalOrder,
    /// Cutoff of the classical stage, when present.
    pub omega_c_int: Option<f64>,
    /// s-plane cutoff of the fractional stage, when present.
    pub omega_c_frac: Option<f64>,
    /// w-plane radius of the fractional stage, when present.
    pub omega_bar_c: Option<f64>,
    pub filter: CascadeFilter,
    /// Classified poles per stage, parallel to `filter.stages`.
    pub stage_poles: Vec<Vec<WPole>>,
    /// Marginal poles dropped from the fractional stage.
    pub marginal_poles: Vec<WPole>,
    pub warnings: Vec<String>,
}

/// Design with the stop-band cutoff rule.
pub fn design_filter(spec: &DesignSpec, decimals: usize) -> Result<DesignReport> {
    design_filter_with_rule(spec, decimals, CutoffRule::StopBand)
}

/// Full pipeline: exact order, truncation, per-stage cutoffs, stage
/// construction, cascade assembly.
pub fn design_filter_with_rule(
    spec: &DesignSpec,
    decimals: usize,
    cutoff_rule: CutoffRule,
) -> Result<DesignReport> {
    spec.validate()?;
    let n_exact = required_order(spec);
    let order = truncate_order(n_exact, decimals)?;
    if order.n_int == 0 && order.p == 0 {
        return Err(Error::InvalidSpec(format!(
            "exact order {n_exact} truncates to zero at {decimals} decimal(s)"
        )));
    }

    let integer_cutoff = |n: f64| cutoff_from_stopband(spec.omega_s, spec.alpha_s, n);
    let fractional_cutoff = |n: f64| match cutoff_rule {
        CutoffRule::StopBand => cutoff_from_stopband(spec.omega_s, spec.alpha_s, n),
        CutoffRule::PassBand => cutoff_from_passband(spec.omega_p, spec.alpha_p, n),
    };

    let mut stages = Vec::new();
    let mut stage_poles = Vec::new();
    let mut warnings = Vec::new();
    let mut omega_c_int = None;
    let mut omega_c_frac = None;
    let mut omega_bar_c = None;
    let mut marginal_poles = Vec::new();

    if order.n_int >= 1 {
        let wc = integer_cutoff(order.n_int as f64);
        omega_c_int = Some(wc);
        stages.push(Stage::Classical(classical_butterworth(order.n_int, wc)));
        stage_poles.push(classical_stage_poles(order.n_int, wc));
    }

    if order.p > 0 {
        let wc = fractional_cutoff(order.p as f64);
        let built = build_wtf(order.p, order.q_den, wc)?;
        omega_c_frac = Some(wc);
        omega_bar_c = Some(map_radius(wc, order.q_den));
        for pole in &built.marginal {
            warnings.push(format!(
                "marginal pole at w = {:.6} + {:.6}i (|arg| = {:.6} rad) dropped from the \
                 fractional stage",
                pole.value.re, pole.value.im, pole.arg_abs
            ));
        }
        marginal_poles = built.marginal.clone();
        stage_poles.push(built.poles.clone());
        stages.push(Stage::Fractional(built.tf));
    }

    let filter = cascade(stages)?;
    Ok(DesignReport {
        spec: *spec,
        cutoff_rule,
        decimals,
        n_exact,
        order,
        omega_c_int,
        omega_c_frac,
        omega_bar_c,
        filter,
        stage_poles,
        marginal_poles,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::response::{magnitude_squared, FreqSpacing, FrequencyGrid};
    use approx::assert_relative_eq;

    fn worked_spec() -> DesignSpec {
        DesignSpec::new(2.0, 3.0, 6.0, 20.0).unwrap()
    }

    #[test]
    fn required_order_worked_example() {
        assert!((required_order(&worked_spec()) - 4.3195).abs() < 1e-3);
        // Frozen from a 40-digit evaluation of the same expression.
        assert_relative_eq!(
            required_order(&worked_spec()),
            4.319529487855871,
            epsilon = 1e-12
        );
    }

    #[test]
    fn required_order_shrinks_as_attenuations_converge() {
        let spec = DesignSpec::new(2.0, 3.0, 19.999, 20.0).unwrap();
        assert!(required_order(&spec) < 0.01);
    }

    #[test]
    fn required_order_decade_half_power() {
        // Half-power pass edge one decade before a 20 dB stop edge needs
        // about first order.
        let spec = DesignSpec::new(1.0, 10.0, 3.0103, 20.0).unwrap();
        let n = required_order(&spec);
        assert_relative_eq!(n, 0.9978175929627562, epsilon = 1e-9);
    }

    #[test]
    fn required_order_monotone_in_stopband_attenuation() {
        let mut prev = 0.0;
        for alpha_s in [10.0, 15.0, 20.0, 30.0, 40.0] {
            let spec = DesignSpec::new(2.0, 3.0, 6.0, alpha_s).unwrap();
            let n = required_order(&spec);
            assert!(n >= prev);
            prev = n;
        }
    }

    #[test]
    fn cutoff_worked_examples() {
        assert!((cutoff_from_stopband(3.0, 20.0, 4.0) - 1.6891).abs() < 1e-3);
        assert!((cutoff_from_stopband(3.0, 20.0, 5.0) - 1.8948).abs() < 1e-3);
        assert!((cutoff_from_stopband(3.0, 20.0, 3.0) - 1.3949).abs() < 1e-3);
    }

    #[test]
    fn map_radius_directions() {
        assert_eq!(map_radius(1.0, 7), 1.0);
        assert_relative_eq!(map_radius(1.3949, 10), 1.0338, epsilon = 1e-4);
        let mapped = map_radius(0.5, 2);
        assert_relative_eq!(mapped, 0.5f64.sqrt(), epsilon = 1e-12);
        assert!(mapped > 0.5);
        assert!(map_radius(2.0, 3) < 2.0);
    }

    #[test]
    fn design_worked_example() {
        let report = design_filter(&worked_spec(), 1).unwrap();
        assert_eq!(
            report.order,
            RationalOrder {
                n_int: 4,
                p: 3,
                q_den: 10
            }
        );
        assert_eq!(report.filter.stages.len(), 2);
        assert!(report.warnings.is_empty());

        let classical = match &report.filter.stages[0] {
            Stage::Classical(tf) => tf,
            other => panic!("expected classical stage, got {other:?}"),
        };
        let want_classical4 = [8.1408, 12.5952, 9.7422, 4.4144, 1.0];
        for (g, w) in classical.den.iter().zip(want_classical4) {
            assert!((g - w).abs() < 1e-2);
        }

        let fractional = match &report.filter.stages[1] {
            Stage::Fractional(tf) => tf,
            other => panic!("expected fractional stage, got {other:?}"),
        };
        let want_fractional = [1.181, 1.1424, 1.105, 1.0688, 1.0338, 1.0];
        for (g, w) in fractional.den.iter().zip(want_fractional) {
            assert!((g - w).abs() < 1e-3);
        }

        assert_relative_eq!(report.omega_c_int.unwrap(), 1.6891, epsilon = 1e-3);
        assert_relative_eq!(report.omega_c_frac.unwrap(), 1.3949, epsilon = 1e-3);
        assert_relative_eq!(report.omega_bar_c.unwrap(), 1.0338, epsilon = 1e-3);
        assert_eq!(report.stage_poles[0].len(), 4);
        assert_eq!(report.stage_poles[1].len(), 5);
    }

    #[test]
    fn design_integer_order_gets_single_stage() {
        // Exact order ~2.05 truncates to 2: classical stage only.
        let spec = DesignSpec::new(1.0, 3.0, 6.0, 24.32).unwrap();
        let report = design_filter(&spec, 1).unwrap();
        assert!(report.order.is_integer());
        assert_eq!(report.order.n_int, 2);
        assert_eq!(report.filter.stages.len(), 1);
        assert!(report.omega_c_frac.is_none());
        assert!(report.omega_bar_c.is_none());
    }

    #[test]
    fn design_two_decimal_truncation() {
        let report = design_filter(&worked_spec(), 2).unwrap();
        assert_eq!(
            report.order,
            RationalOrder {
                n_int: 4,
                p: 31,
                q_den: 100
            }
        );
        // 2P candidates, the positive-real one discarded.
        assert_eq!(report.stage_poles[1].len(), 61);
    }

    #[test]
    fn design_passband_rule_changes_fractional_stage_only() {
        let stop = design_filter_with_rule(&worked_spec(), 1, CutoffRule::StopBand).unwrap();
        let pass = design_filter_with_rule(&worked_spec(), 1, CutoffRule::PassBand).unwrap();
        assert_eq!(stop.omega_c_int, pass.omega_c_int);
        assert_ne!(stop.omega_c_frac, pass.omega_c_frac);
        let want = cutoff_from_passband(2.0, 6.0, 3.0);
        assert_relative_eq!(pass.omega_c_frac.unwrap(), want, epsilon = 1e-12);
    }

    #[test]
    fn design_rejects_invalid_specs() {
        assert!(DesignSpec::new(2.0, 3.0, 20.0, 6.0).is_err());
        assert!(DesignSpec::new(3.0, 2.0, 6.0, 20.0).is_err());
        assert!(DesignSpec::new(0.0, 2.0, 6.0, 20.0).is_err());
        let err = DesignSpec::new(2.0, 3.0, 20.0, 6.0).unwrap_err();
        assert!(err.to_string().contains("alpha_p must be < alpha_s"));
    }

    #[test]
    fn design_is_deterministic() {
        let a = design_filter(&worked_spec(), 1).unwrap();
        let b = design_filter(&worked_spec(), 1).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn classical_stage_meets_stopband_exactly() {
        // The stop-band cutoff inverts the magnitude-squared function at
        // the stop edge, so compliance there is exact.
        for n in [3u32, 4, 5] {
            let wc = cutoff_from_stopband(3.0, 20.0, n as f64);
            let filter = cascade(vec![Stage::Classical(classical_butterworth(n, wc))]).unwrap();
            let grid = FrequencyGrid::from_points(vec![3.0], FreqSpacing::Linear).unwrap();
            let mag2 = magnitude_squared(&filter, &grid);
            assert!((mag2[0] - 0.01).abs() < 1e-6, "N={n}: {}", mag2[0]);
        }
    }

    #[test]
    fn cascade_low_frequency_gain_below_unity() {
        // The fractional stage's slow pole pulls the cascade gain below
        // one at low frequencies, approaching unity only in the limit.
        let report = design_filter(&worked_spec(), 1).unwrap();
        let grid = FrequencyGrid::from_points(vec![1e-6, 1e-4, 1e-2], FreqSpacing::Log).unwrap();
        let mag2 = magnitude_squared(&report.filter, &grid);
        assert!(mag2.iter().all(|&m| m < 1.0));
        assert!(mag2[0] > mag2[1] && mag2[1] > mag2[2]);
    }
}
