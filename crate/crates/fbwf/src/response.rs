//! Frequency and step responses of cascade filters.
//!
//! Frequency evaluation substitutes s = jΩ with fractional powers on the
//! principal branch. Step responses integrate each stage's commensurate
//! differential equation with the Grünwald–Letnikov backward-difference
//! scheme, feeding each stage's output into the next; integer-order stages
//! run through the same machinery, where the binomial weights truncate to
//! the ordinary backward-difference scheme.

use crate::error::{Error, Result};
use crate::gl::gl_coefficients;
use crate::tf::{CascadeFilter, Stage};
use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreqSpacing {
    Log,
    Linear,
}

/// Strictly increasing positive frequency samples, rad/sec.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    points: Vec<f64>,
    spacing: FreqSpacing,
}

impl FrequencyGrid {
    /// Logarithmically spaced grid. Phase unwrapping assumes at least
    /// ~50 points per decade.
    pub fn log_space(lo: f64, hi: f64, n: usize) -> Result<Self> {
        Self::spaced(lo, hi, n, FreqSpacing::Log)
    }

    pub fn linear(lo: f64, hi: f64, n: usize) -> Result<Self> {
        Self::spaced(lo, hi, n, FreqSpacing::Linear)
    }

    fn spaced(lo: f64, hi: f64, n: usize, spacing: FreqSpacing) -> Result<Self> {
        if !(lo > 0.0 && hi > lo) {
            return Err(Error::InvalidGrid(format!(
                "need 0 < lo < hi, got [{lo}, {hi}]"
            )));
        }
        if n < 2 {
            return Err(Error::InvalidGrid("need at least two points".into()));
        }
        let mut points = Vec::with_capacity(n);
        for i in 0..n {
            let frac = i as f64 / (n - 1) as f64;
            points.push(match spacing {
                FreqSpacing::Log => lo * (hi / lo).powf(frac),
                FreqSpacing::Linear => lo + (hi - lo) * frac,
            });
        }
        points[n - 1] = hi;
        Ok(Self { points, spacing })
    }

    pub fn from_points(points: Vec<f64>, spacing: FreqSpacing) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidGrid("empty grid".into()));
        }
        if points[0] <= 0.0 || points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidGrid(
                "points must be positive and strictly increasing".into(),
            ));
        }
        Ok(Self { points, spacing })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn spacing(&self) -> FreqSpacing {
        self.spacing
    }
}

/// Uniform time grid for step simulation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    /// Step size, seconds.
    pub h: f64,
    /// Horizon, seconds.
    pub t_max: f64,
    /// History truncation length (retained samples); full history if absent.
    pub memory: Option<usize>,
}

impl TimeGrid {
    pub fn new(h: f64, t_max: f64) -> Result<Self> {
        if !h.is_finite() || h <= 0.0 {
            return Err(Error::InvalidGrid(format!(
                "step size must be positive, got {h}"
            )));
        }
        if !t_max.is_finite() || t_max < h {
            return Err(Error::InvalidGrid(format!(
                "horizon {t_max} must be at least one step {h}"
            )));
        }
        Ok(Self {
            h,
            t_max,
            memory: None,
        })
    }

    pub fn with_memory(mut self, samples: usize) -> Result<Self> {
        if samples == 0 {
            return Err(Error::InvalidGrid("memory length must be positive".into()));
        }
        self.memory = Some(samples);
        Ok(self)
    }

    /// Sample instants 0, h, 2h, ... covering t_max.
    pub fn times(&self) -> Vec<f64> {
        let steps = ((self.t_max / self.h) - 1e-9).ceil().max(1.0) as usize;
        (0..=steps).map(|i| i as f64 * self.h).collect()
    }
}

impl Default for TimeGrid {
    fn default() -> Self {
        Self {
            h: 1e-3,
            t_max: 30.0,
            memory: None,
        }
    }
}

/// Complex frequency response of the cascade over the grid. Evaluation is
/// pointwise independent, so callers may shard the grid across threads;
/// this implementation keeps the natural grid order.
pub fn freq_response(filter: &CascadeFilter, grid: &FrequencyGrid) -> Vec<Complex64> {
    grid.points()
        .iter()
        .map(|&omega| filter.response_at(omega))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BodePoint {
    pub omega: f64,
    /// 20 log10 |H|; -inf when the response is exactly zero.
    pub magnitude_db: f64,
    /// Phase unwrapped along the grid, degrees.
    pub phase_deg: f64,
}

/// Bode samples: dB magnitude and unwrapped phase along the grid.
pub fn bode(filter: &CascadeFilter, grid: &FrequencyGrid) -> Vec<BodePoint> {
    let response = freq_response(filter, grid);
    let mut out = Vec::with_capacity(response.len());
    let mut offset = 0.0;
    let mut prev: Option<f64> = None;
    for (&omega, h) in grid.points().iter().zip(&response) {
        let raw = h.arg().to_degrees();
        if let Some(p) = prev {
            while raw + offset - p > 180.0 {
                offset -= 360.0;
            }
            while raw + offset - p < -180.0 {
                offset += 360.0;
            }
        }
        let phase = raw + offset;
        prev = Some(phase);
        out.push(BodePoint {
            omega,
            magnitude_db: 20.0 * h.norm().log10(),
            phase_deg: phase,
        });
    }
    out
}

/// |H(jΩ)|² over the grid.
pub fn magnitude_squared(filter: &CascadeFilter, grid: &FrequencyGrid) -> Vec<f64> {
    freq_response(filter, grid)
        .iter()
        .map(|h| h.norm_sqr())
        .collect()
}

/// Output magnitude above which a stage simulation is declared divergent
/// (an unstable or marginal stage slipped through).
pub const DIVERGENCE_GUARD: f64 = 1e6;

// Denominator terms (exponent, coefficient) and scalar numerator gain of a
// stage, as needed by the G-L scheme.
fn stage_terms(stage: &Stage) -> Result<(Vec<(f64, f64)>, f64)> {
    match stage {
        Stage::Fractional(tf) => {
            let terms = tf
                .den
                .iter()
                .enumerate()
                .filter(|(_, &d)| d != 0.0)
                .map(|(k, &d)| (k as f64 * tf.q, d))
                .collect();
            Ok((terms, tf.num))
        }
        Stage::Classical(tf) => {
            if tf.num.len() > 1 && tf.num[1..].iter().any(|&c| c != 0.0) {
                return Err(Error::UnsupportedStage(
                    "time stepping requires a scalar numerator".into(),
                ));
            }
            let terms = tf
                .den
                .iter()
                .enumerate()
                .filter(|(_, &d)| d != 0.0)
                .map(|(k, &d)| (k as f64, d))
                .collect();
            Ok((terms, tf.num[0]))
        }
    }
}

// One stage of sum_k a_k D^{alpha_k} y = b u under zero initial conditions:
//   y_n = (b u_n - sum_{j=1}^{min(n,L)} g_j y_{n-j}) / g_0,
// with the combined kernel g_j = sum_k a_k h^{-alpha_k} c_j^{(alpha_k)}.
fn simulate_stage(stage: &Stage, input: &[f64], grid: &TimeGrid) -> Result<Vec<f64>> {
    let (terms, gain) = stage_terms(stage)?;
    let n = input.len();
    let window = grid.memory.map_or(n - 1, |l| l.min(n - 1));
    let mut kernel = vec![0.0; window + 1];
    for &(alpha, a) in &terms {
        let scale = a * grid.h.powf(-alpha);
        for (g, c) in kernel.iter_mut().zip(gl_coefficients(alpha, window + 1)) {
            *g += scale * c;
        }
    }
    let lead = kernel[0];
    let mut y = vec![0.0; n];
    for i in 0..n {
        let j_max = i.min(window);
        let history: f64 = kernel[1..=j_max]
            .iter()
            .zip(y[i - j_max..i].iter().rev())
            .map(|(g, v)| g * v)
            .sum();
        let value = (gain * input[i] - history) / lead;
        if value.abs() > DIVERGENCE_GUARD {
            return Err(Error::StepDiverged {
                t: i as f64 * grid.h,
                y: value,
            });
        }
        y[i] = value;
    }
    Ok(y)
}

/// Unit-step response of the cascade by Grünwald–Letnikov time stepping,
/// stage by stage: the output of stage i drives stage i+1.
pub fn step_response_gl(filter: &CascadeFilter, grid: &TimeGrid) -> Result<Vec<(f64, f64)>> {
    let times = grid.times();
    let mut signal = vec![1.0; times.len()];
    for stage in &filter.stages {
        signal = simulate_stage(stage, &signal, grid)?;
    }
    Ok(times.into_iter().zip(signal).collect())
}
