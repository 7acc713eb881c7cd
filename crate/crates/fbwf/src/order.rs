//! Filter orders as reduced rational numbers.
//!
//! An order N + P/Q keeps its integer part N and a proper fraction P/Q in
//! lowest terms; the commensurate order of the fractional part is q = 1/Q.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A filter order split into an integer part and a reduced proper fraction.
///
/// Invariants: `p < q_den`, and `gcd(p, q_den) == 1` whenever `p > 0`;
/// an integer order carries `p = 0, q_den = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RationalOrder {
    pub n_int: u32,
    pub p: u32,
    pub q_den: u32,
}

impl RationalOrder {
    /// Commensurate order of the fractional part, q = 1/Q.
    pub fn commensurate_order(&self) -> f64 {
        1.0 / self.q_den as f64
    }

    pub fn value(&self) -> f64 {
        self.n_int as f64 + self.p as f64 / self.q_den as f64
    }

    pub fn is_integer(&self) -> bool {
        self.p == 0
    }
}

impl fmt::Display for RationalOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.n_int, self.p) {
            (n, 0) => write!(f, "{n}"),
            (0, p) => write!(f, "{p}/{}", self.q_den),
            (n, p) => write!(f, "{n} + {p}/{}", self.q_den),
        }
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Reduce p/q_den to lowest terms and split off the integer part.
pub fn reduce_order(p: u64, q_den: u64) -> Result<RationalOrder> {
    if q_den == 0 {
        return Err(Error::InvalidOrder("denominator must be nonzero".into()));
    }
    let n_int = p / q_den;
    let rem = p % q_den;
    let (p_red, q_red) = if rem == 0 {
        (0, 1)
    } else {
        let g = gcd(rem, q_den);
        (rem / g, q_den / g)
    };
    if n_int > u32::MAX as u64 || q_red > u32::MAX as u64 {
        return Err(Error::InvalidOrder(format!(
            "order {p}/{q_den} out of range"
        )));
    }
    Ok(RationalOrder {
        n_int: n_int as u32,
        p: p_red as u32,
        q_den: q_red as u32,
    })
}

/// Truncate (never round) a real order toward zero at `decimals` decimal
/// places and reduce the result to lowest terms.
///
/// Truncation works on the shortest decimal string that round-trips the
/// input, so values entered as e.g. 4.3195 truncate the way they read.
pub fn truncate_order(n_exact: f64, decimals: usize) -> Result<RationalOrder> {
    if !n_exact.is_finite() || n_exact <= 0.0 {
        return Err(Error::InvalidOrder(format!(
            "order must be positive and finite, got {n_exact}"
        )));
    }
    if decimals == 0 || decimals > 9 {
        return Err(Error::InvalidOrder(format!(
            "decimals must be between 1 and 9, got {decimals}"
        )));
    }
    let text = format!("{n_exact}");
    let (int_text, frac_text) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text.as_str(), ""),
    };
    let kept = &frac_text[..frac_text.len().min(decimals)];
    let n_int: u64 = int_text
        .parse()
        .map_err(|_| Error::InvalidOrder(format!("order {n_exact} out of range")))?;
    if n_int > u32::MAX as u64 {
        return Err(Error::InvalidOrder(format!("order {n_exact} out of range")));
    }
    let frac: u64 = if kept.is_empty() {
        0
    } else {
        kept.parse().unwrap()
    };
    let scale = 10u64.pow(kept.len() as u32);
    reduce_order(n_int * scale + frac, scale)
}
