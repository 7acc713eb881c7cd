//! Grünwald–Letnikov binomial weights.
//!
//! The alpha-order backward-difference operator carries the weights
//! c_j = (-1)^j * Gamma(alpha+1) / (Gamma(j+1) * Gamma(alpha-j+1)),
//! evaluated here by the recurrence c_0 = 1, c_j = c_{j-1} * (1 - (alpha+1)/j)
//! so integer alpha never touches a gamma pole.

/// First `n` Grünwald–Letnikov weights for differentiation order `alpha`.
pub fn gl_coefficients(alpha: f64, n: usize) -> Vec<f64> {
    let mut c = Vec::with_capacity(n);
    if n == 0 {
        return c;
    }
    c.push(1.0);
    for j in 1..n {
        let prev = c[j - 1];
        c.push(prev * (1.0 - (alpha + 1.0) / j as f64));
    }
    c
}
