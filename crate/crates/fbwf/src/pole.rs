//! Pole placement on the w-plane circle and damping classification.
//!
//! A filter with P poles over Q Riemann sheets places its 2P candidate
//! poles at w_k = ±j * r * exp(j(2k-1)π/2P), k = 1..P, all on the circle
//! of radius r. With commensurate order q = 1/Q a pole is stable iff
//! |arg(w)| > qπ/2, and the stable region subdivides by damping behavior:
//!
//! | |arg(w)|        | class         |
//! |-----------------|---------------|
//! | < qπ/2          | unstable      |
//! | = qπ/2          | marginal      |
//! | (qπ/2, qπ)      | under-damped  |
//! | [qπ, π)         | hyper-damped  |
//! | = π             | ultra-damped  |
//!
//! Candidate angles are exact rational multiples of π (numerator over 2P),
//! so all boundary comparisons here are integer comparisons; no boundary
//! case depends on floating-point coincidence.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Angular tolerance used when classifying arbitrary (non-generated)
/// complex poles against the qπ/2 and π boundaries.
pub const DEFAULT_BOUNDARY_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PoleClass {
    Unstable,
    Marginal,
    UnderDamped,
    HyperDamped,
    UltraDamped,
}

impl PoleClass {
    /// Strict stability: marginal poles map onto the s-plane imaginary
    /// axis and do not count as stable.
    pub fn is_stable(self) -> bool {
        matches!(
            self,
            PoleClass::UnderDamped | PoleClass::HyperDamped | PoleClass::UltraDamped
        )
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PoleClass::Unstable => "unstable",
            PoleClass::Marginal => "marginal",
            PoleClass::UnderDamped => "under_damped",
            PoleClass::HyperDamped => "hyper_damped",
            PoleClass::UltraDamped => "ultra_damped",
        }
    }
}

/// A w-plane pole together with its principal angle and damping class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WPole {
    pub value: Complex64,
    /// |arg(value)| in [0, π].
    pub arg_abs: f64,
    pub class: PoleClass,
}

/// Stable poles of one filter plus any marginal poles that were dropped.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct StablePoleSelection {
    pub poles: Vec<WPole>,
    /// Poles exactly on the stability boundary, excluded from the filter;
    /// callers should surface these as warnings.
    pub marginal: Vec<WPole>,
}

/// Candidate counts per damping class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StabilityCensus {
    pub unstable: usize,
    pub marginal: usize,
    pub under_damped: usize,
    pub hyper_damped: usize,
    pub ultra_damped: usize,
}

impl StabilityCensus {
    pub fn total(&self) -> usize {
        self.unstable + self.marginal + self.under_damped + self.hyper_damped + self.ultra_damped
    }
}

// Signed angle numerators a (angle = a * π / 2P) for the 2P candidates,
// reduced into (-2P, 2P] and ordered by descending |a|, ties by ascending
// sign. That ordering is descending |arg| with conjugates adjacent, the
// negative-imaginary member first.
fn angle_numerators(p: u32) -> Vec<i64> {
    let two_p = 2 * p as i64;
    let four_p = 4 * p as i64;
    let mut nums = Vec::with_capacity(2 * p as usize);
    for k in 1..=p as i64 {
        for a in [p as i64 + 2 * k - 1, 2 * k - 1 - p as i64] {
            let mut a = a.rem_euclid(four_p);
            if a > two_p {
                a -= four_p;
            }
            nums.push(a);
        }
    }
    nums.sort_by(|x, y| y.abs().cmp(&x.abs()).then(x.cmp(y)));
    nums
}

// Complex value and |arg| for an angle numerator. The axis candidates
// (a = 0, a = 2P) are built exactly; conjugate pairs share one sin_cos
// evaluation so the pair is bit-exact under conjugation.
fn pole_from_numerator(a: i64, p: u32, radius: f64) -> (Complex64, f64) {
    let two_p = 2 * p as i64;
    if a == 0 {
        return (Complex64::new(radius, 0.0), 0.0);
    }
    if a == two_p {
        return (Complex64::new(-radius, 0.0), PI);
    }
    let arg_abs = a.unsigned_abs() as f64 * PI / two_p as f64;
    let (sin, cos) = arg_abs.sin_cos();
    let im = if a < 0 { -sin } else { sin };
    (Complex64::new(radius * cos, radius * im), arg_abs)
}

// Exact classification of a candidate angle |a|π/2P against the Table 1
// bands for q = 1/Q: everything reduces to comparing |a|·Q with P and 2P.
fn classify_numerator(a_abs: u64, p: u32, q_den: u32) -> PoleClass {
    let lhs = a_abs as u128 * q_den as u128;
    let p = p as u128;
    if a_abs as u128 == 2 * p {
        PoleClass::UltraDamped
    } else if lhs < p {
        PoleClass::Unstable
    } else if lhs == p {
        PoleClass::Marginal
    } else if lhs < 2 * p {
        PoleClass::UnderDamped
    } else {
        PoleClass::HyperDamped
    }
}

/// The 2P candidate poles of a P-pole filter on the circle of the given
/// radius, ordered by descending |arg|, conjugate first within a pair.
///
/// # Panics
///
/// Panics if `p == 0` or `radius <= 0`.
pub fn candidate_poles(p: u32, radius: f64) -> Vec<Complex64> {
    assert!(p >= 1, "pole count must be positive");
    assert!(radius > 0.0, "radius must be positive");
    angle_numerators(p)
        .into_iter()
        .map(|a| pole_from_numerator(a, p, radius).0)
        .collect()
}

/// All 2P candidates with exact damping classification for q = 1/Q.
pub fn classified_candidates(p: u32, q_den: u32, radius: f64) -> Vec<WPole> {
    assert!(p >= 1, "pole count must be positive");
    assert!(q_den >= 1, "sheet count must be positive");
    assert!(radius > 0.0, "radius must be positive");
    angle_numerators(p)
        .into_iter()
        .map(|a| {
            let (value, arg_abs) = pole_from_numerator(a, p, radius);
            WPole {
                value,
                arg_abs,
                class: classify_numerator(a.unsigned_abs(), p, q_den),
            }
        })
        .collect()
}

/// Classify an arbitrary complex w-plane point for q = 1/Q.
///
/// `eps` is the angular tolerance (radians) applied at the qπ/2 and π
/// boundaries; [`DEFAULT_BOUNDARY_EPS`] is a sensible default. The band
/// boundary at qπ is closed on the hyper-damped side.
pub fn classify_pole(w: Complex64, q_den: u32, eps: f64) -> Result<WPole> {
    assert!(q_den >= 1, "sheet count must be positive");
    assert!(eps > 0.0, "eps must be positive");
    if w == Complex64::new(0.0, 0.0) {
        return Err(Error::ZeroPole);
    }
    let arg_abs = w.arg().abs();
    let q = 1.0 / q_den as f64;
    let half_band = q * PI / 2.0;
    let full_band = q * PI;
    let class = if (arg_abs - half_band).abs() <= eps {
        PoleClass::Marginal
    } else if (PI - arg_abs).abs() <= eps {
        PoleClass::UltraDamped
    } else if arg_abs < half_band {
        PoleClass::Unstable
    } else if arg_abs < full_band {
        PoleClass::UnderDamped
    } else {
        PoleClass::HyperDamped
    };
    Ok(WPole {
        value: w,
        arg_abs,
        class,
    })
}

/// Stable poles for a P-pole filter over Q sheets, unstable candidates
/// discarded. Marginal candidates are also excluded from the filter but
/// returned separately so the boundary condition can be reported.
pub fn stable_poles(p: u32, q_den: u32, radius: f64) -> StablePoleSelection {
    let mut selection = StablePoleSelection::default();
    for pole in classified_candidates(p, q_den, radius) {
        match pole.class {
            PoleClass::Unstable => {}
            PoleClass::Marginal => selection.marginal.push(pole),
            _ => selection.poles.push(pole),
        }
    }
    selection
}

/// Count the 2P candidates of a P-pole filter per damping class at q = 1/Q.
pub fn stability_census(p: u32, q_den: u32) -> StabilityCensus {
    let mut census = StabilityCensus::default();
    for pole in classified_candidates(p, q_den, 1.0) {
        match pole.class {
            PoleClass::Unstable => census.unstable += 1,
            PoleClass::Marginal => census.marginal += 1,
            PoleClass::UnderDamped => census.under_damped += 1,
            PoleClass::HyperDamped => census.hyper_damped += 1,
            PoleClass::UltraDamped => census.ultra_damped += 1,
        }
    }
    census
}

/// Number of unstable conjugate pairs at q = 1/Q, i.e. unstable candidates
/// off the real axis. The real-axis candidate at arg 0 (present for odd P)
/// is always unstable and always discarded, so it does not affect whether
/// further exclusions are needed.
pub fn unstable_pair_count(p: u32, q_den: u32) -> usize {
    classified_candidates(p, q_den, 1.0)
        .iter()
        .filter(|pole| pole.class == PoleClass::Unstable && pole.value.im != 0.0)
        .count()
        / 2
}

/// Smallest fractional sheet count Q >= 2 at which no conjugate pair of
/// the P-pole candidate set is strictly unstable.
pub fn first_strictly_stable_q(p: u32, q_max: u32) -> Option<u32> {
    (2..=q_max).find(|&q| unstable_pair_count(p, q) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_4;

    fn census(p: u32, q: u32) -> (usize, usize, usize, usize, usize) {
        let c = stability_census(p, q);
        (
            c.unstable,
            c.marginal,
            c.under_damped,
            c.hyper_damped,
            c.ultra_damped,
        )
    }

    #[test]
    fn single_pole_candidates_are_real_pair() {
        let poles = candidate_poles(1, 1.0);
        assert_eq!(poles.len(), 2);
        assert_eq!(poles[0], Complex64::new(-1.0, 0.0));
        assert_eq!(poles[1], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn two_pole_candidates_match_table() {
        let poles = candidate_poles(2, 1.0);
        let r = FRAC_PI_4.cos();
        let want = [(-r, -r), (-r, r), (r, -r), (r, r)];
        assert_eq!(poles.len(), 4);
        for (got, (re, im)) in poles.iter().zip(want) {
            assert_relative_eq!(got.re, re, epsilon = 1e-12);
            assert_relative_eq!(got.im, im, epsilon = 1e-12);
        }
    }

    #[test]
    fn three_pole_candidates_match_table() {
        let poles = candidate_poles(3, 1.0);
        assert_eq!(poles.len(), 6);
        // Descending |arg|: -1 first, then the 2π/3 pair, π/3 pair, +1 last.
        assert_eq!(poles[0], Complex64::new(-1.0, 0.0));
        assert_relative_eq!(poles[1].re, -0.5, epsilon = 1e-12);
        assert_relative_eq!(poles[1].im, -0.8660254037844386, epsilon = 1e-12);
        assert_relative_eq!(poles[4].im, 0.8660254037844386, epsilon = 1e-12);
        assert_eq!(poles[5], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn candidates_closed_under_conjugation_and_mirror() {
        for p in 1..=9u32 {
            let poles = candidate_poles(p, 1.0);
            assert_eq!(poles.len(), 2 * p as usize);
            for w in &poles {
                assert!(poles.iter().any(|v| *v == w.conj()), "missing conjugate");
                assert!(
                    poles.iter().any(|v| (v + w).norm() < 1e-12),
                    "missing mirror"
                );
                assert_relative_eq!(w.norm(), 1.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn angle_law_matches_direct_multiset() {
        // |arg| multiset equals |±π/2 + (2k-1)π/2P| reduced to [0, π].
        for p in 1..=9u32 {
            let mut got: Vec<f64> = candidate_poles(p, 1.0)
                .iter()
                .map(|w| w.arg().abs())
                .collect();
            let mut want = Vec::new();
            for k in 1..=p as i64 {
                for sign in [1.0, -1.0] {
                    let mut theta = sign * PI / 2.0 + (2 * k - 1) as f64 * PI / (2.0 * p as f64);
                    while theta > PI {
                        theta -= 2.0 * PI;
                    }
                    while theta < -PI {
                        theta += 2.0 * PI;
                    }
                    want.push(theta.abs());
                }
            }
            got.sort_by(f64::total_cmp);
            want.sort_by(f64::total_cmp);
            for (g, w) in got.iter().zip(want) {
                assert_relative_eq!(*g, w, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn classify_negative_real_is_ultra_damped() {
        let pole = classify_pole(Complex64::new(-1.0, 0.0), 10, DEFAULT_BOUNDARY_EPS).unwrap();
        assert_eq!(pole.class, PoleClass::UltraDamped);
        assert_relative_eq!(pole.arg_abs, PI);
    }

    #[test]
    fn classify_positive_real_is_unstable() {
        let pole = classify_pole(Complex64::new(1.0, 0.0), 10, DEFAULT_BOUNDARY_EPS).unwrap();
        assert_eq!(pole.class, PoleClass::Unstable);
        assert_eq!(pole.arg_abs, 0.0);
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn classify_boundary_is_marginal() {
        // arg = π/4 equals qπ/2 exactly at q = 1/2: atan2 on equal
        // components returns the same float as PI/4.
        let w = Complex64::new(0.7071, 0.7071);
        assert_eq!(w.arg(), FRAC_PI_4);
        let pole = classify_pole(w, 2, DEFAULT_BOUNDARY_EPS).unwrap();
        assert_eq!(pole.class, PoleClass::Marginal);
    }

    #[test]
    fn classify_rejects_origin() {
        assert_eq!(
            classify_pole(Complex64::new(0.0, 0.0), 3, DEFAULT_BOUNDARY_EPS),
            Err(Error::ZeroPole)
        );
    }

    #[test]
    fn stable_pole_counts() {
        // P=4, Q=3: the π/8 pair is unstable, 6 poles remain.
        let sel = stable_poles(4, 3, 1.0);
        assert_eq!(sel.poles.len(), 6);
        assert!(sel.marginal.is_empty());

        // P=1 keeps only the ultra-damped pole at -1.
        let sel = stable_poles(1, 5, 1.0);
        assert_eq!(sel.poles.len(), 1);
        assert_eq!(sel.poles[0].value, Complex64::new(-1.0, 0.0));

        // P=8, Q=2: two conjugate pairs are unstable, 12 poles remain.
        let sel = stable_poles(8, 2, 1.0);
        assert_eq!(sel.poles.len(), 12);
    }

    #[test]
    fn marginal_poles_reported_separately() {
        // P=4 over Q=4 sheets puts the π/8 pair exactly on the boundary.
        let sel = stable_poles(4, 4, 1.0);
        assert_eq!(sel.poles.len(), 6);
        assert_eq!(sel.marginal.len(), 2);
        for pole in &sel.marginal {
            assert_eq!(pole.class, PoleClass::Marginal);
            assert_relative_eq!(pole.arg_abs, PI / 8.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn stable_pole_ordering_is_descending_angle() {
        let sel = stable_poles(4, 5, 1.0);
        let args: Vec<f64> = sel.poles.iter().map(|p| p.arg_abs).collect();
        for pair in args.windows(2) {
            assert!(pair[0] >= pair[1]);
        }
        // Within a conjugate pair the negative-imaginary member leads.
        for pair in sel.poles.chunks(2) {
            assert!(pair[0].value.im <= pair[1].value.im);
            assert_eq!(pair[0].value, pair[1].value.conj());
        }
    }

    #[test]
    fn census_examples() {
        // Third-order candidates split by Table 1 bands; the +r candidate
        // at arg 0 is unstable for every Q.
        assert_eq!(census(3, 5), (1, 0, 0, 4, 1));
        assert_eq!(census(3, 2), (1, 0, 2, 2, 1));
        // Sixth-order at Q=4 has one unstable conjugate pair.
        assert_eq!(census(6, 4), (2, 0, 0, 10, 0));
        // Classical q=1 first-order pair.
        assert_eq!(census(1, 1), (1, 0, 0, 0, 1));
        assert_eq!(census(2, 3), (0, 0, 2, 2, 0));
    }

    #[test]
    fn census_counts_all_candidates() {
        for p in 1..=9u32 {
            for q in 1..=12u32 {
                assert_eq!(stability_census(p, q).total(), 2 * p as usize);
            }
        }
    }

    #[test]
    fn stability_is_monotone_in_sheet_count() {
        // A candidate stable at Q0 stays stable for every larger Q.
        for p in 1..=9u32 {
            for q0 in 1..12u32 {
                let before = classified_candidates(p, q0, 1.0);
                let after = classified_candidates(p, q0 + 1, 1.0);
                for (b, a) in before.iter().zip(&after) {
                    if b.class.is_stable() {
                        assert!(
                            a.class.is_stable(),
                            "P={p}: pole {} lost stability from Q={q0} to Q={}",
                            b.value,
                            q0 + 1
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn classical_reduction_at_q1() {
        // At Q=1 the stable set is exactly the P left-half-plane
        // Butterworth poles.
        for p in 1..=9u32 {
            let sel = stable_poles(p, 1, 1.0);
            assert_eq!(sel.poles.len(), p as usize);
            let mut got: Vec<Complex64> = sel.poles.iter().map(|w| w.value).collect();
            let mut want: Vec<Complex64> = (1..=p)
                .map(|k| {
                    let theta = (2 * k + p - 1) as f64 * PI / (2 * p) as f64;
                    Complex64::from_polar(1.0, theta)
                })
                .collect();
            let key = |w: &Complex64| (w.re, w.im);
            got.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
            want.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
            for (g, w) in got.iter().zip(want) {
                assert!((g - w).norm() < 1e-12, "P={p}: {g} vs {w}");
            }
        }
    }

    #[test]
    fn rational_and_float_classification_agree() {
        for p in 1..=9u32 {
            for q in 1..=12u32 {
                for pole in classified_candidates(p, q, 1.0) {
                    let float_class = classify_pole(pole.value, q, DEFAULT_BOUNDARY_EPS)
                        .unwrap()
                        .class;
                    if float_class == pole.class {
                        continue;
                    }
                    // The qπ band edge is compared without eps, so a pole
                    // exactly on it may land either side in float.
                    let band = PI / q as f64;
                    assert!(
                        (pole.arg_abs - band).abs() < 1e-12,
                        "P={p} Q={q}: {:?} vs {:?} away from the band edge",
                        pole.class,
                        float_class
                    );
                }
            }
        }
    }
}
