//! Riemann-Liouville integrals and derivatives, the Caputo derivative, and
//! iterated (Cauchy) integrals.

use super::{apply, Side};
use crate::error::{Error, Result};
use crate::grid::{diff_once, terminal_derivatives, FracOrder, GridFn};
use crate::reference::{gamma, recip_gamma};

/// `(1 + x)^p - 1` without cancellation for small `x`.
fn pow1pm1(x: f64, p: f64) -> f64 {
    (p * x.ln_1p()).exp_m1()
}

/// Left Riemann-Liouville integral of order `alpha` at every node, by
/// product-trapezoidal quadrature: `u` is interpolated linearly between
/// nodes and the kernel `(x - t)^(alpha - 1)` is integrated exactly on each
/// cell.
///
/// With `p = alpha + 1` the weights are
///
/// ```text
/// I(x_j) = h^alpha / Gamma(alpha + 2) * (a_j u_0 + sum_{k=1}^{j-1} c_{j-k} u_k + u_j)
/// a_j    = (j-1)^p - (j-1-alpha) j^alpha
/// c_m    = (m+1)^p - 2 m^p + (m-1)^p
/// ```
pub(crate) fn rl_integral_left(u: &[f64], h: f64, alpha: f64) -> Vec<f64> {
    let n = u.len();
    let p = alpha + 1.0;
    let scale = h.powf(alpha) / gamma(alpha + 2.0).expect("alpha + 2 is positive");

    let mut c = vec![0.0; n];
    for (m, cm) in c.iter_mut().enumerate().skip(1) {
        let mf = m as f64;
        let inv = 1.0 / mf;
        *cm = mf.powf(p) * (pow1pm1(inv, p) + pow1pm1(-inv, p));
    }

    let mut out = vec![0.0; n];
    for j in 1..n {
        let jf = j as f64;
        let first = if j == 1 {
            alpha
        } else {
            jf.powf(alpha) * (jf * pow1pm1(-1.0 / jf, p) + 1.0 + alpha)
        };
        let mut acc = first * u[0];
        for k in 1..j {
            acc += c[j - k] * u[k];
        }
        acc += u[j];
        out[j] = scale * acc;
    }
    out
}

/// Riemann-Liouville fractional integral `I^alpha g` from the given side.
/// The value at the terminal itself is 0.
pub fn rl_integral(g: &GridFn, order: FracOrder, side: Side) -> Result<GridFn> {
    apply(g, side, |u, h| Ok(rl_integral_left(u, h, order.alpha())))
}

pub(crate) fn cumulative_trapezoid(u: &[f64], h: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(u.len());
    let mut acc = 0.0;
    out.push(0.0);
    for w in u.windows(2) {
        acc += 0.5 * h * (w[0] + w[1]);
        out.push(acc);
    }
    out
}

/// `n`-fold repeated trapezoidal integration from the terminal.
pub fn cauchy_iterated_integral(g: &GridFn, n: usize, side: Side) -> Result<GridFn> {
    if n == 0 {
        return Err(Error::NonPositiveOrder(0.0));
    }
    apply(g, side, |u, h| {
        let mut cur = u.to_vec();
        for _ in 0..n {
            cur = cumulative_trapezoid(&cur, h);
        }
        Ok(cur)
    })
}

fn diff_n(u: &[f64], h: f64, order: usize) -> Result<Vec<f64>> {
    if order >= u.len() - 1 {
        return Err(Error::GridTooCoarse {
            order,
            n_points: u.len(),
        });
    }
    let mut cur = u.to_vec();
    for _ in 0..order {
        cur = diff_once(&cur, h);
    }
    Ok(cur)
}

fn caputo_left(u: &[f64], h: f64, order: FracOrder) -> Result<Vec<f64>> {
    let m = order.ceil();
    let dm = diff_n(u, h, m)?;
    if order.is_integer() {
        return Ok(dm);
    }
    Ok(rl_integral_left(&dm, h, m as f64 - order.alpha()))
}

/// Caputo derivative `I^(m - alpha) g^(m)` with `m = ceil(alpha)`; the
/// `m`-th derivative comes from [`crate::grid::finite_diff`]. On the right
/// side the derivative is `(-d/dx)^m`. Integer orders give the ordinary
/// derivative.
pub fn caputo_derivative(g: &GridFn, order: FracOrder, side: Side) -> Result<GridFn> {
    apply(g, side, |u, h| caputo_left(u, h, order))
}

/// Riemann-Liouville derivative, computed as the Caputo derivative plus the
/// Taylor tail
///
/// ```text
/// sum_{k<m} g^(k)(a) (x - a)^(k - alpha) / Gamma(k + 1 - alpha)
/// ```
///
/// which is exact for `m`-times differentiable `g`. At the terminal the tail
/// diverges unless every `g^(k)(a)` vanishes; that node is then set to
/// `+inf`.
pub fn rl_derivative(g: &GridFn, order: FracOrder, side: Side) -> Result<GridFn> {
    apply(g, side, |u, h| {
        let caputo = caputo_left(u, h, order)?;
        if order.is_integer() {
            return Ok(caputo);
        }
        let alpha = order.alpha();
        let derivs = terminal_derivatives(u, h, order.ceil())?;
        let coeffs: Vec<f64> = derivs
            .iter()
            .enumerate()
            .map(|(k, d)| d * recip_gamma(k as f64 + 1.0 - alpha))
            .collect();
        let mut out = caputo;
        if derivs.iter().any(|&d| d != 0.0) {
            out[0] = f64::INFINITY;
        }
        for (j, v) in out.iter_mut().enumerate().skip(1) {
            let x = j as f64 * h;
            let mut tail = 0.0;
            for (k, c) in coeffs.iter().enumerate() {
                tail += c * x.powf(k as f64 - alpha);
            }
            *v += tail;
        }
        Ok(out)
    })
}
