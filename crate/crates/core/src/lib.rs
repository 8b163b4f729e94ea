//! Multiplicative fractional calculus on sampled positive functions.
//!
//! A multiplicative operator acts on a positive `f` through its logarithm:
//! the multiplicative Riemann-Liouville integral of `f` is `exp(I^alpha ln f)`,
//! the multiplicative derivative is `exp((ln f)')`, and so on. This crate
//! samples `f` on a uniform grid, lifts it to `g = ln f`, applies a classical
//! operator to `g` and exponentiates the result once.
//!
//! ```
//! use mulfrac::classical::Side;
//! use mulfrac::grid::{make_grid, sample, FracOrder, Interval};
//! use mulfrac::multiplicative::mult_rl_derivative;
//!
//! let grid = make_grid(Interval::new(0.0, 1.0)?, 2049)?;
//! let f = sample(|_| Ok(std::f64::consts::E), &grid, true)?;
//! let d = mult_rl_derivative(&f, FracOrder::new(0.5)?, Side::Left)?;
//!
//! // The fractional derivative of a constant is not 1: here it is
//! // exp(x^-0.5 / sqrt(pi)).
//! let want = (1.0 / std::f64::consts::PI.sqrt()).exp();
//! assert!((d.at(2048) - want).abs() < 1e-3 * want);
//! # Ok::<(), mulfrac::Error>(())
//! ```
//!
//! Modules:
//!
//! - [`grid`]: intervals, grids, sampling, [`grid::log_lift`] and [`grid::exp_drop`].
//! - [`parser`]: expressions in `t` for command-line input.
//! - [`classical`]: Riemann-Liouville, Caputo, Grünwald-Letnikov and conformable operators.
//! - [`multiplicative`]: the multiplicative operators built on them.
//! - [`reference`]: the Gamma function and closed-form values.
//! - [`verify`]: the named property checks.
//!
//! The guide in `book/` walks through each operator family; its code
//! listings run as doctests of this crate.

pub mod classical;
pub mod error;
pub mod grid;
pub mod multiplicative;
pub mod parser;
pub mod reference;
pub mod verify;

pub use classical::Side;
pub use error::{Error, Result};
pub use grid::{make_grid, sample, FracOrder, GridFn, Interval, UniformGrid};
pub use parser::Expr;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/grids.md")]
    mod grids {}
    #[doc = include_str!("../../../book/src/expressions.md")]
    mod expressions {}
    #[doc = include_str!("../../../book/src/riemann-liouville.md")]
    mod riemann_liouville {}
    #[doc = include_str!("../../../book/src/letnikov.md")]
    mod letnikov {}
    #[doc = include_str!("../../../book/src/conformable.md")]
    mod conformable {}
    #[doc = include_str!("../../../book/src/closed-forms.md")]
    mod closed_forms {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
