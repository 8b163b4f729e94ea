//! Conformable derivative `(t-a)^(1-alpha) g'(t)` and the kernel integral
//! `int_a^t (x-a)^(alpha-1) g(x) dx`, for `0 < alpha <= 1`.
//!
//! Near the terminal the functions these operators meet are not smooth: the
//! integral of a smooth `g` behaves like `c0 + (t-a)^alpha * smooth`, and the
//! derivative of a smooth `g` like `(t-a)^(1-alpha) * smooth`. Plain
//! polynomial stencils lose accuracy on the first few hundred nodes there. So
//! within `SINGULAR_NODES` of the terminal the derivative stencil is made
//! exact on `{1, x, x^2, x^alpha, x^(alpha+1)}` and the quadrature on
//! `{1, x, x^2, x^(1-alpha), x^(2-alpha)}`; further out a five-point
//! polynomial stencil and the product-trapezoidal rule take over.

use super::rl::cumulative_trapezoid;
use super::{apply, Side};
use crate::error::{Error, Result};
use crate::grid::{diff_once, GridFn};

/// Nodes (derivative) or cells (integral) next to the terminal that get the
/// singular basis.
const SINGULAR_NODES: usize = 32;

/// Outside this band the singular basis functions are numerically
/// indistinguishable from polynomials and the 5x5 systems become singular.
const SINGULAR_BAND: (f64, f64) = (0.01, 0.99);

fn check_order(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(Error::OrderOutOfRange {
            alpha,
            range: "(0, 1]",
        })
    }
}

fn in_band(alpha: f64) -> bool {
    alpha >= SINGULAR_BAND.0 && alpha <= SINGULAR_BAND.1
}

/// Solves `A w = rhs` by Gaussian elimination with partial pivoting.
fn solve5(mut a: [[f64; 5]; 5], mut rhs: [f64; 5]) -> [f64; 5] {
    for row in 0..5 {
        let scale = a[row].iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if scale > 0.0 {
            a[row].iter_mut().for_each(|v| *v /= scale);
            rhs[row] /= scale;
        }
    }
    for col in 0..5 {
        let pivot = (col..5)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..5 {
            let f = a[row][col] / a[col][col];
            let pivot_row = a[col];
            for (x, p) in a[row][col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= f * p;
            }
            rhs[row] -= f * rhs[col];
        }
    }
    let mut w = [0.0; 5];
    for row in (0..5).rev() {
        let mut acc = rhs[row];
        for k in row + 1..5 {
            acc -= a[row][k] * w[k];
        }
        w[row] = acc / a[row][row];
    }
    w
}

/// A basis function on the index axis: a shifted monomial `(x - c)^k` or a
/// pure power `x^e`.
#[derive(Clone, Copy)]
enum Basis {
    Shifted(i32, f64),
    Power(f64),
}

impl Basis {
    fn at(self, x: f64) -> f64 {
        match self {
            Basis::Shifted(k, c) => (x - c).powi(k),
            Basis::Power(e) => x.powf(e),
        }
    }
}

/// Weights `w` on the nodes `lo..lo+5` with `sum w_i phi(x_i) = target(phi)`
/// for each of the five basis functions.
fn stencil(lo: usize, basis: [Basis; 5], target: impl Fn(Basis) -> f64) -> [f64; 5] {
    let mut a = [[0.0; 5]; 5];
    let mut rhs = [0.0; 5];
    for (row, phi) in basis.iter().enumerate() {
        for (col, entry) in a[row].iter_mut().enumerate() {
            *entry = phi.at((lo + col) as f64);
        }
        rhs[row] = target(*phi);
    }
    solve5(a, rhs)
}

fn window(center: usize, len: usize) -> usize {
    center.saturating_sub(2).min(len - 5)
}

pub(crate) fn conformable_derivative_left(u: &[f64], h: f64, alpha: f64) -> Vec<f64> {
    let len = u.len();
    if alpha == 1.0 {
        return diff_once(u, h);
    }
    if len < 5 {
        let d = diff_once(u, h);
        return d
            .iter()
            .enumerate()
            .map(|(j, dj)| (j as f64 * h).powf(1.0 - alpha) * dj)
            .collect();
    }
    let singular = in_band(alpha);
    let scale = h.powf(-alpha);
    (0..len)
        .map(|j| {
            let xj = j as f64;
            let lo = window(j, len);
            let basis = if singular && j < SINGULAR_NODES {
                [
                    Basis::Shifted(0, xj),
                    Basis::Shifted(1, xj),
                    Basis::Shifted(2, xj),
                    Basis::Power(alpha),
                    Basis::Power(alpha + 1.0),
                ]
            } else {
                [0, 1, 2, 3, 4].map(|k| Basis::Shifted(k, xj))
            };
            // x^(1-alpha) d/dx applied to each basis function at x_j.
            let w = stencil(lo, basis, |phi| match phi {
                Basis::Shifted(1, _) => xj.powf(1.0 - alpha),
                Basis::Shifted(..) => 0.0,
                Basis::Power(e) => e * xj.powf(e - alpha),
            });
            let mut acc = 0.0;
            for (i, wi) in w.iter().enumerate() {
                acc += wi * u[lo + i];
            }
            scale * acc
        })
        .collect()
}

/// `(x1^p - x0^p) / p`.
fn moment(x0: f64, x1: f64, p: f64) -> f64 {
    (x1.powf(p) - x0.powf(p)) / p
}

pub(crate) fn conformable_integral_left(u: &[f64], h: f64, alpha: f64) -> Vec<f64> {
    let len = u.len();
    if alpha == 1.0 {
        return cumulative_trapezoid(u, h);
    }
    let singular = in_band(alpha) && len >= 5;
    let mut out = Vec::with_capacity(len);
    let mut acc = 0.0;
    out.push(0.0);
    for k in 0..len - 1 {
        let (x0, x1) = (k as f64, (k + 1) as f64);
        let m0 = moment(x0, x1, alpha);
        let m1 = moment(x0, x1, alpha + 1.0);
        let cell = if singular && k < SINGULAR_NODES {
            let lo = window(k, len);
            let c = 0.5 * (x0 + x1);
            let basis = [
                Basis::Shifted(0, c),
                Basis::Shifted(1, c),
                Basis::Shifted(2, c),
                Basis::Power(1.0 - alpha),
                Basis::Power(2.0 - alpha),
            ];
            let m2 = moment(x0, x1, alpha + 2.0);
            // int_{x0}^{x1} x^(alpha-1) phi(x) dx for each basis function.
            let w = stencil(lo, basis, |phi| match phi {
                Basis::Shifted(0, _) => m0,
                Basis::Shifted(1, _) => m1 - c * m0,
                Basis::Shifted(_, _) => m2 - 2.0 * c * m1 + c * c * m0,
                Basis::Power(e) if e < 1.0 => x1 - x0,
                Basis::Power(_) => 0.5 * (x1 * x1 - x0 * x0),
            });
            w.iter().enumerate().map(|(i, wi)| wi * u[lo + i]).sum::<f64>()
        } else {
            (x1 * m0 - m1) * u[k] + (m1 - x0 * m0) * u[k + 1]
        };
        acc += cell;
        out.push(acc);
    }
    let scale = h.powf(alpha);
    out.iter_mut().for_each(|v| *v *= scale);
    out
}

/// Conformable derivative: `(t-a)^(1-alpha) g'(t)` on the left and
/// `-(b-t)^(1-alpha) g'(t)` on the right, `0 < alpha <= 1`.
pub fn conformable_derivative(g: &GridFn, alpha: f64, side: Side) -> Result<GridFn> {
    check_order(alpha)?;
    apply(g, side, |u, h| Ok(conformable_derivative_left(u, h, alpha)))
}

/// Conformable integral: `int_a^t (x-a)^(alpha-1) g(x) dx` on the left and
/// `int_t^b (b-x)^(alpha-1) g(x) dx` on the right, `0 < alpha <= 1`.
pub fn conformable_integral(g: &GridFn, alpha: f64, side: Side) -> Result<GridFn> {
    check_order(alpha)?;
    apply(g, side, |u, h| Ok(conformable_integral_left(u, h, alpha)))
}
