//! Design and analysis of fractional-order Butterworth-like low-pass
//! filters.
//!
//! A filter of order N + P/Q splits into a classical N-th order Butterworth
//! stage and a fractional stage with P poles placed on a circle in the
//! complex w-plane, w = s^(1/Q). Pole candidates are classified by the
//! commensurate stability criterion |arg(w)| > π/(2Q) into unstable,
//! marginal, under-damped, hyper-damped and ultra-damped sets; the stable
//! set becomes a real-coefficient commensurate transfer function. Frequency
//! responses evaluate fractional powers of jΩ on the principal branch, and
//! step responses come from Grünwald–Letnikov time stepping.
//!
//! The [`design`] module ties everything into a specification-to-filter
//! pipeline; the remaining modules expose the pieces individually.

pub mod design;
pub mod error;
pub mod gl;
pub mod order;
pub mod pole;
pub mod response;
pub mod special;
pub mod tf;

pub use design::{
    cutoff_from_passband, cutoff_from_stopband, design_filter, design_filter_with_rule, map_radius,
    required_order, CutoffRule, DesignReport, DesignSpec,
};
pub use error::{Error, Result};
pub use gl::gl_coefficients;
pub use order::{reduce_order, truncate_order, RationalOrder};
pub use pole::{
    candidate_poles, classified_candidates, classify_pole, first_strictly_stable_q,
    stability_census, stable_poles, unstable_pair_count, PoleClass, StabilityCensus,
    StablePoleSelection, WPole, DEFAULT_BOUNDARY_EPS,
};
pub use response::{
    bode, freq_response, magnitude_squared, step_response_gl, BodePoint, FreqSpacing,
    FrequencyGrid, TimeGrid,
};
pub use special::{gamma, mittag_leffler};
pub use tf::{
    build_wtf, butterworth_poles, cascade, classical_butterworth, expand_polynomial,
    factors_from_poles, factors_from_roots, fractional_jomega, to_s_expression, CascadeFilter,
    ClassicalTF, FilterSynthesis, Stage, WPlaneTF,
};
