//! Multiplicative operators on positive grid functions.
//!
//! Every operator works in log space: `g = ln f` goes through the matching
//! classical operator and the result is exponentiated once at the end. The
//! Letnikov product `prod f(t - r h)^(w_r h^-alpha)` is therefore evaluated
//! as `exp(h^-alpha sum w_r g(t - r h))`, which never forms the individual
//! factors.

use std::fmt;
use std::str::FromStr;

use crate::classical::{
    self, apply, conformable_derivative_left, conformable_integral_left, cumulative_trapezoid,
    Side,
};
use crate::error::{Error, Result};
use crate::grid::{
    diff_once, exp_drop, finite_diff, log_lift, make_grid, FracOrder, GridFn, Interval,
    UniformGrid,
};
use crate::reference::taylor_tail_log;

/// Forward `(f(x+h)/f(x))^(1/h)` or backward `(f(x)/f(x-h))^(1/h)` quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

/// `exp(g^(n))` with `g = ln f`. Forward and backward derivatives agree for
/// differentiable `f`, so `direction` does not change the value; it only
/// matters for [`mult_derivative_limit_quotient`].
pub fn mult_derivative(f: &GridFn, n: usize, direction: Direction) -> Result<GridFn> {
    let _ = direction;
    if n == 0 {
        return Err(Error::NonPositiveOrder(0.0));
    }
    exp_drop(&finite_diff(&log_lift(f)?, n)?)
}

/// The difference quotient itself at step `h`, which must be the grid step.
/// The result lives on the interior nodes `a + h ..= b - h`.
pub fn mult_derivative_limit_quotient(
    f: &GridFn,
    direction: Direction,
    h: f64,
) -> Result<GridFn> {
    let grid = f.grid();
    let step = grid.step();
    if (h - step).abs() > 1e-12 * step {
        return Err(Error::GridMismatch);
    }
    let g = log_lift(f)?;
    let u = g.values();
    let n = u.len();
    if n < 5 {
        return Err(Error::TooFewPoints(n));
    }
    let values: Vec<f64> = (1..n - 1)
        .map(|i| match direction {
            Direction::Forward => ((u[i + 1] - u[i]) / h).exp(),
            Direction::Backward => ((u[i] - u[i - 1]) / h).exp(),
        })
        .collect();
    let inner = make_grid(Interval::new(grid.point(1), grid.point(n - 2))?, n - 2)?;
    GridFn::new(inner, values, true)
}

/// `exp(int_a^x ln f)` at every node, by the trapezoidal rule.
pub fn mult_integral(f: &GridFn) -> Result<GridFn> {
    let g = log_lift(f)?;
    let h = g.grid().step();
    let lifted = GridFn::from_raw(*g.grid(), cumulative_trapezoid(g.values(), h), false);
    exp_drop(&lifted)
}

pub fn mult_rl_integral(f: &GridFn, order: FracOrder, side: Side) -> Result<GridFn> {
    exp_drop(&classical::rl_integral(&log_lift(f)?, order, side)?)
}

/// The terminal node is `+inf` unless the Taylor coefficients of `ln f` there
/// all vanish.
pub fn mult_rl_derivative(f: &GridFn, order: FracOrder, side: Side) -> Result<GridFn> {
    exp_drop(&classical::rl_derivative(&log_lift(f)?, order, side)?)
}

pub fn mult_caputo(f: &GridFn, order: FracOrder, side: Side) -> Result<GridFn> {
    exp_drop(&classical::caputo_derivative(&log_lift(f)?, order, side)?)
}

/// Caputo derivative as the Riemann-Liouville derivative of
/// `f(t) exp(-S_g(t))`, where `S_g` is the Taylor polynomial of `ln f` at the
/// terminal with `ceil(alpha)` terms.
pub fn mult_caputo_via_rl(f: &GridFn, order: FracOrder, side: Side) -> Result<GridFn> {
    let g = log_lift(f)?;
    let tail = taylor_tail_log(f, order.ceil(), side)?;
    let values = g
        .values()
        .iter()
        .zip(tail.values())
        .map(|(x, s)| x - s)
        .collect();
    let reduced = GridFn::from_raw(*g.grid(), values, false);
    exp_drop(&classical::rl_derivative(&reduced, order, side)?)
}

pub fn mult_letnikov_derivative(f: &GridFn, order: FracOrder, side: Side) -> Result<GridFn> {
    exp_drop(&classical::gl_derivative(&log_lift(f)?, order, side)?)
}

pub fn mult_letnikov_integral(f: &GridFn, p: f64, side: Side) -> Result<GridFn> {
    exp_drop(&classical::gl_integral(&log_lift(f)?, p, side)?)
}

/// Splits `alpha > 0` into `n = ceil(alpha) - 1` and `beta = alpha - n` in
/// `(0, 1]`.
fn split_order(alpha: f64) -> Result<(usize, f64)> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::NonPositiveOrder(alpha));
    }
    let n = alpha.ceil() as usize - 1;
    Ok((n, alpha - n as f64))
}

/// Conformable derivative of any order `alpha > 0`. Above 1 it is the order
/// `beta = alpha - n` derivative of `f^(n)`; on the right the inner
/// derivative is `(-d/dt)^n`.
pub fn mult_conformable_derivative(f: &GridFn, alpha: f64, side: Side) -> Result<GridFn> {
    let (n, beta) = split_order(alpha)?;
    let g = log_lift(f)?;
    if n + 1 >= g.len() - 1 {
        return Err(Error::GridTooCoarse {
            order: n + 1,
            n_points: g.len(),
        });
    }
    let lifted = apply(&g, side, |u, h| {
        let mut cur = u.to_vec();
        for _ in 0..n {
            cur = diff_once(&cur, h);
        }
        Ok(conformable_derivative_left(&cur, h, beta))
    })?;
    exp_drop(&lifted)
}

/// Conformable integral of any order `alpha > 0`: the `(n+1)`-fold iterated
/// multiplicative integral of `f^((t-a)^(beta-1))`.
pub fn mult_conformable_integral(f: &GridFn, alpha: f64, side: Side) -> Result<GridFn> {
    let (n, beta) = split_order(alpha)?;
    let g = log_lift(f)?;
    let lifted = apply(&g, side, |u, h| {
        let mut cur = conformable_integral_left(u, h, beta);
        for _ in 0..n {
            cur = cumulative_trapezoid(&cur, h);
        }
        Ok(cur)
    })?;
    exp_drop(&lifted)
}

/// The nine multiplicative operators, named as on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorKind {
    MultDeriv,
    MultIntegral,
    MultRLIntegral,
    MultRLDeriv,
    MultCaputo,
    MultLetnikovDeriv,
    MultLetnikovIntegral,
    MultConfDeriv,
    MultConfIntegral,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 9] = [
        OperatorKind::MultDeriv,
        OperatorKind::MultIntegral,
        OperatorKind::MultRLIntegral,
        OperatorKind::MultRLDeriv,
        OperatorKind::MultCaputo,
        OperatorKind::MultLetnikovDeriv,
        OperatorKind::MultLetnikovIntegral,
        OperatorKind::MultConfDeriv,
        OperatorKind::MultConfIntegral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::MultDeriv => "mderiv",
            OperatorKind::MultIntegral => "mint",
            OperatorKind::MultRLIntegral => "mrl-int",
            OperatorKind::MultRLDeriv => "mrl-deriv",
            OperatorKind::MultCaputo => "mcaputo",
            OperatorKind::MultLetnikovDeriv => "mletnikov-deriv",
            OperatorKind::MultLetnikovIntegral => "mletnikov-int",
            OperatorKind::MultConfDeriv => "mconf-deriv",
            OperatorKind::MultConfIntegral => "mconf-int",
        }
    }

    /// Whether the order is an integer count of derivatives (`mderiv`) or
    /// absent (`mint`).
    pub fn order_kind(self) -> OrderKind {
        match self {
            OperatorKind::MultDeriv => OrderKind::Integer,
            OperatorKind::MultIntegral => OrderKind::None,
            _ => OrderKind::Real,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    None,
    Integer,
    Real,
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OperatorKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        OperatorKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown operator `{s}`"))
    }
}

/// A fully specified operator application. `order` is the integer `n` for
/// [`OperatorKind::MultDeriv`], ignored for [`OperatorKind::MultIntegral`],
/// and `alpha` (or `p`) otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorRequest {
    pub kind: OperatorKind,
    pub order: f64,
    pub side: Side,
    pub direction: Direction,
    pub grid: UniformGrid,
}

impl OperatorRequest {
    pub fn apply(&self, f: &GridFn) -> Result<GridFn> {
        if *f.grid() != self.grid {
            return Err(Error::GridMismatch);
        }
        let alpha = self.order;
        match self.kind {
            OperatorKind::MultDeriv => {
                if !(alpha >= 1.0 && alpha.fract() == 0.0) {
                    return Err(Error::OrderOutOfRange {
                        alpha,
                        range: "integers >= 1",
                    });
                }
                mult_derivative(f, alpha as usize, self.direction)
            }
            OperatorKind::MultIntegral => mult_integral(f),
            OperatorKind::MultRLIntegral => mult_rl_integral(f, FracOrder::new(alpha)?, self.side),
            OperatorKind::MultRLDeriv => mult_rl_derivative(f, FracOrder::new(alpha)?, self.side),
            OperatorKind::MultCaputo => mult_caputo(f, FracOrder::new(alpha)?, self.side),
            OperatorKind::MultLetnikovDeriv => {
                mult_letnikov_derivative(f, FracOrder::new(alpha)?, self.side)
            }
            OperatorKind::MultLetnikovIntegral => mult_letnikov_integral(f, alpha, self.side),
            OperatorKind::MultConfDeriv => mult_conformable_derivative(f, alpha, self.side),
            OperatorKind::MultConfIntegral => mult_conformable_integral(f, alpha, self.side),
        }
    }
}
