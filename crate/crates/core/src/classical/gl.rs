//! Grünwald-Letnikov sums.

use super::{apply, Side};
use crate::error::{Error, Result};
use crate::grid::{FracOrder, GridFn};

/// Signed binomial weights `w_r = (-1)^r C(alpha, r)`, `r = 0..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct GLWeights {
    alpha: f64,
    coeffs: Vec<f64>,
}

impl GLWeights {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }
}

/// `w_0 = 1`, `w_r = w_{r-1} (1 - (alpha + 1) / r)`. For integer `alpha` the
/// recurrence hits an exact zero at `r = alpha + 1` and stays there.
pub fn gl_weights(alpha: f64, n: usize) -> GLWeights {
    let mut coeffs = Vec::with_capacity(n + 1);
    let mut w = 1.0;
    coeffs.push(w);
    for r in 1..=n {
        w *= 1.0 - (alpha + 1.0) / r as f64;
        coeffs.push(w);
    }
    GLWeights { alpha, coeffs }
}

/// Rising-factorial weights `[p r] = p (p+1) ... (p+r-1) / r!`, `r = 0..=N`,
/// which are exactly the signed weights `w_r` of order `-p`.
pub fn rising_weights(p: f64, n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut c = 1.0;
    out.push(c);
    for r in 1..=n {
        c *= (p + r as f64 - 1.0) / r as f64;
        out.push(c);
    }
    out
}

fn convolve_left(u: &[f64], weights: &[f64], scale: f64) -> Vec<f64> {
    (0..u.len())
        .map(|j| {
            let mut acc = 0.0;
            for r in 0..=j {
                acc += weights[r] * u[j - r];
            }
            scale * acc
        })
        .collect()
}

/// Grünwald-Letnikov derivative with the grid step as `h`:
/// `h^-alpha sum_{r=0}^{(t-a)/h} w_r g(t - r h)` on the left and the mirrored
/// sum over `g(t + r h)` on the right.
pub fn gl_derivative(g: &GridFn, order: FracOrder, side: Side) -> Result<GridFn> {
    let alpha = order.alpha();
    apply(g, side, |u, h| {
        let w = gl_weights(alpha, u.len());
        Ok(convolve_left(u, w.coeffs(), h.powf(-alpha)))
    })
}

/// Grünwald-Letnikov integral of order `p > 0`:
/// `h^p sum_{r=0}^{(t-a)/h} [p r] g(t - r h)`.
pub fn gl_integral(g: &GridFn, p: f64, side: Side) -> Result<GridFn> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::NonPositiveOrder(p));
    }
    apply(g, side, |u, h| {
        let w = rising_weights(p, u.len());
        Ok(convolve_left(u, &w, h.powf(p)))
    })
}
