//! Classical (additive) fractional operators on real grid functions.
//!
//! These are the kernels that the multiplicative operators are lifted from.
//! Every operator is implemented for the left terminal `a`; the right-hand
//! versions are obtained by reflecting the grid (`x -> a + b - x`), which maps
//! `I_b`, `D_b`, `(-d/dx)^n` and the right conformable operators onto their
//! left counterparts exactly, node for node.

mod conformable;
mod gl;
mod rl;

pub use conformable::{conformable_derivative, conformable_integral};
pub use gl::{gl_derivative, gl_integral, gl_weights, rising_weights, GLWeights};
pub use rl::{caputo_derivative, cauchy_iterated_integral, rl_derivative, rl_integral};

pub(crate) use conformable::{conformable_derivative_left, conformable_integral_left};
pub(crate) use rl::cumulative_trapezoid;

use crate::error::Result;
use crate::grid::GridFn;

/// Which terminal an operator accumulates memory from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// Terminal `a`; integrates over `[a, x]`.
    Left,
    /// Terminal `b`; integrates over `[x, b]`.
    Right,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// Runs a left-terminal kernel on `u`, reflecting input and output for the
/// right side.
pub(crate) fn sided(
    u: &[f64],
    side: Side,
    kernel: impl FnOnce(&[f64]) -> Result<Vec<f64>>,
) -> Result<Vec<f64>> {
    match side {
        Side::Left => kernel(u),
        Side::Right => {
            let rev: Vec<f64> = u.iter().rev().copied().collect();
            let mut out = kernel(&rev)?;
            out.reverse();
            Ok(out)
        }
    }
}

pub(crate) fn apply(
    g: &GridFn,
    side: Side,
    kernel: impl FnOnce(&[f64], f64) -> Result<Vec<f64>>,
) -> Result<GridFn> {
    let h = g.grid().step();
    let values = sided(g.values(), side, |u| kernel(u, h))?;
    Ok(GridFn::from_raw(*g.grid(), values, false))
}
