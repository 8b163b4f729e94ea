//! Uniform grids, sampled functions, and the bridge between multiplicative and
//! additive calculus.
//!
//! Every multiplicative operator in this crate is evaluated in log space: a
//! positive function `f` is lifted to `g = ln f` with [`log_lift`], a classical
//! operator acts on `g`, and [`exp_drop`] brings the result back.

use crate::error::{Error, Result};
use crate::parser::Expr;

/// A finite interval `[a, b]` with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::DegenerateInterval { a, b });
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }
}

/// Uniform grid of `n_points` nodes covering an [`Interval`], endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    interval: Interval,
    n_points: usize,
    step: f64,
}

impl UniformGrid {
    pub fn new(interval: Interval, n_points: usize) -> Result<Self> {
        if n_points < 3 {
            return Err(Error::TooFewPoints(n_points));
        }
        let step = interval.length() / (n_points - 1) as f64;
        Ok(Self {
            interval,
            n_points,
            step,
        })
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn a(&self) -> f64 {
        self.interval.a
    }

    pub fn b(&self) -> f64 {
        self.interval.b
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grid step `h`.
    pub fn step(&self) -> f64 {
        self.step
    }

    /// Node `i`. The last node is `b` itself rather than `a + (n-1) h`.
    pub fn point(&self, i: usize) -> f64 {
        assert!(i < self.n_points, "grid index {i} out of range");
        if i + 1 == self.n_points {
            self.interval.b
        } else {
            self.interval.a + i as f64 * self.step
        }
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n_points).map(move |i| self.point(i))
    }

    /// Index of the node nearest to `x`, if `x` lies on a node within `tol`.
    pub fn index_of(&self, x: f64, tol: f64) -> Option<usize> {
        let i = ((x - self.a()) / self.step).round();
        if i < 0.0 || i >= self.n_points as f64 {
            return None;
        }
        let i = i as usize;
        ((self.point(i) - x).abs() <= tol).then_some(i)
    }
}

/// Builds a uniform grid; fails on a degenerate interval or fewer than 3 points.
pub fn make_grid(interval: Interval, n_points: usize) -> Result<UniformGrid> {
    UniformGrid::new(interval, n_points)
}

/// A function sampled on a [`UniformGrid`].
///
/// Sampled inputs are always finite. Outputs of derivative operators of
/// Riemann-Liouville type may carry `+inf` at the terminal point, which marks
/// a genuine singularity of the exact operator there.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFn {
    grid: UniformGrid,
    values: Vec<f64>,
    positive: bool,
}

impl GridFn {
    /// Wraps sampled values, validating length, finiteness and (when
    /// `positive` is set) strict positivity.
    pub fn new(grid: UniformGrid, values: Vec<f64>, positive: bool) -> Result<Self> {
        assert_eq!(values.len(), grid.len(), "values must match the grid size");
        for (i, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFiniteValue {
                    t: grid.point(i),
                    value: v,
                });
            }
            if positive && v <= 0.0 {
                return Err(Error::PositivityViolation {
                    t: grid.point(i),
                    value: v,
                });
            }
        }
        Ok(Self {
            grid,
            values,
            positive,
        })
    }

    /// Operator output; may contain the `+inf` singular marker.
    pub(crate) fn from_raw(grid: UniformGrid, values: Vec<f64>, positive: bool) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self {
            grid,
            values,
            positive,
        }
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn is_positive(&self) -> bool {
        self.positive
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at node `i`.
    pub fn at(&self, i: usize) -> f64 {
        self.values[i]
    }

    /// True when node `i` carries the singular marker.
    pub fn is_singular(&self, i: usize) -> bool {
        !self.values[i].is_finite()
    }

    /// Pointwise product of two positive grid functions on the same grid.
    pub fn mul(&self, other: &GridFn) -> Result<GridFn> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(x, y)| x * y)
            .collect();
        Ok(GridFn::from_raw(
            self.grid,
            values,
            self.positive && other.positive,
        ))
    }

    pub(crate) fn map(&self, positive: bool, f: impl Fn(f64) -> f64) -> GridFn {
        GridFn::from_raw(self.grid, self.values.iter().map(|&v| f(v)).collect(), positive)
    }
}

/// Real order `alpha > 0` together with `n = floor(alpha) + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracOrder {
    alpha: f64,
    n: usize,
}

impl FracOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::NonPositiveOrder(alpha));
        }
        Ok(Self {
            alpha,
            n: alpha.floor() as usize + 1,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `floor(alpha) + 1`; for integer `alpha` this is `alpha + 1`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_integer(&self) -> bool {
        self.alpha.fract() == 0.0
    }

    /// `ceil(alpha)`: the derivative order inside the Caputo form and the
    /// number of Taylor terms it removes. Equals `n` except at integer orders.
    pub fn ceil(&self) -> usize {
        if self.is_integer() {
            self.alpha as usize
        } else {
            self.n
        }
    }
}

/// Samples `f` at every grid node.
pub fn sample(
    f: impl Fn(f64) -> Result<f64>,
    grid: &UniformGrid,
    require_positive: bool,
) -> Result<GridFn> {
    let values = grid.points().map(f).collect::<Result<Vec<_>>>()?;
    GridFn::new(*grid, values, require_positive)
}

/// Samples a parsed expression at every grid node.
pub fn sample_expr(expr: &Expr, grid: &UniformGrid, require_positive: bool) -> Result<GridFn> {
    sample(|t| expr.eval(t), grid, require_positive)
}

/// `g = ln f` for a positive grid function.
pub fn log_lift(f: &GridFn) -> Result<GridFn> {
    if !f.positive {
        return Err(Error::NotPositive);
    }
    Ok(f.map(false, f64::ln))
}

/// `f = exp g`. A finite input whose exponential overflows is an error; the
/// `+inf` singular marker passes through unchanged.
pub fn exp_drop(g: &GridFn) -> Result<GridFn> {
    for (i, &v) in g.values.iter().enumerate() {
        if v.is_finite() && !v.exp().is_finite() {
            return Err(Error::Overflow {
                t: g.grid.point(i),
                exponent: v,
            });
        }
    }
    Ok(g.map(true, f64::exp))
}

/// Derivative of order `order` by repeated second-order differencing: central
/// differences inside, one-sided three-point stencils at the two ends, so the
/// output lives on the full grid.
pub fn finite_diff(g: &GridFn, order: usize) -> Result<GridFn> {
    let n = g.len();
    if order == 0 {
        return Ok(g.clone());
    }
    if order >= n - 1 {
        return Err(Error::GridTooCoarse { order, n_points: n });
    }
    let mut values = g.values.clone();
    for _ in 0..order {
        values = diff_once(&values, g.grid.step());
    }
    Ok(GridFn::from_raw(g.grid, values, false))
}

pub(crate) fn diff_once(u: &[f64], h: f64) -> Vec<f64> {
    let n = u.len();
    let mut d = vec![0.0; n];
    let inv2h = 0.5 / h;
    // Written in differences so that constants give exactly zero.
    d[0] = (3.0 * (u[1] - u[0]) - (u[2] - u[1])) * inv2h;
    for i in 1..n - 1 {
        d[i] = (u[i + 1] - u[i - 1]) * inv2h;
    }
    d[n - 1] = (3.0 * (u[n - 1] - u[n - 2]) - (u[n - 2] - u[n - 3])) * inv2h;
    d
}

/// `k`-th derivatives of `u` at node 0 for `k < count`, from one-sided
/// differencing.
pub(crate) fn terminal_derivatives(u: &[f64], h: f64, count: usize) -> Result<Vec<f64>> {
    if count > 1 && count >= u.len() {
        return Err(Error::GridTooCoarse {
            order: count - 1,
            n_points: u.len(),
        });
    }
    let mut out = Vec::with_capacity(count);
    let mut cur = u.to_vec();
    for k in 0..count {
        if k > 0 {
            cur = diff_once(&cur, h);
        }
        out.push(cur[0]);
    }
    Ok(out)
}
