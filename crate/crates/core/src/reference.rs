//! Closed-form values: the Gamma function, power-law examples, the
//! constant-function Riemann-Liouville derivative, and Taylor tail products.
//!
//! These are the ground truth that [`crate::verify`] and the CLI `table`
//! command compare numerical operators against.

use std::f64::consts::PI;

use crate::classical::Side;
use crate::error::{Error, Result};
use crate::grid::{terminal_derivatives, GridFn};

// Lanczos coefficients for g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x.fract() == 0.0
}

/// Gamma function by the Lanczos approximation, with the reflection formula
/// below 1/2. Fails at the poles `0, -1, -2, ...`.
pub fn gamma(x: f64) -> Result<f64> {
    if is_pole(x) || x.is_nan() {
        return Err(Error::Pole(x));
    }
    Ok(gamma_unchecked(x))
}

fn gamma_unchecked(x: f64) -> f64 {
    if x < 0.5 {
        PI / ((PI * x).sin() * gamma_unchecked(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut acc = LANCZOS[0];
        for (i, c) in LANCZOS.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        let w = x + LANCZOS_G + 0.5;
        // Split w^(x+1/2) so that moderately large x does not overflow early.
        let p = w.powf(0.5 * (x + 0.5));
        (2.0 * PI).sqrt() * p * ((-w).exp() * p) * acc
    }
}

/// `1 / Gamma(x)`, which is zero at the poles.
pub fn recip_gamma(x: f64) -> f64 {
    if is_pole(x) {
        0.0
    } else {
        1.0 / gamma_unchecked(x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerLawKind {
    Integral,
    Derivative,
}

/// Multiplicative fractional integral or derivative of `exp(d^(beta-1))`,
/// with `d` the distance to the terminal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawCase {
    pub alpha: f64,
    pub beta: f64,
    pub side: Side,
    pub kind: PowerLawKind,
}

impl PowerLawCase {
    /// Coefficient and exponent of `d` in the log of the result:
    /// `Gamma(beta)/Gamma(alpha+beta) d^(alpha+beta-1)` for the integral and
    /// `Gamma(beta)/Gamma(beta-alpha) d^(beta-alpha-1)` for the derivative.
    pub fn log_coefficients(&self) -> Result<(f64, f64)> {
        let (alpha, beta) = (self.alpha, self.beta);
        if !(alpha > 0.0 && beta > 0.0 && alpha.is_finite() && beta.is_finite()) {
            return Err(Error::NonPositiveOrder(alpha.min(beta)));
        }
        match self.kind {
            PowerLawKind::Integral => {
                Ok((gamma(beta)? / gamma(alpha + beta)?, alpha + beta - 1.0))
            }
            PowerLawKind::Derivative => {
                Ok((gamma(beta)? / gamma(beta - alpha)?, beta - alpha - 1.0))
            }
        }
    }

    /// The function the operator acts on, `exp(d^(beta-1))`, at `x`.
    pub fn input_value(&self, terminal: f64, x: f64) -> Result<f64> {
        let d = distance(self.side, terminal, x)?;
        Ok(d.powf(self.beta - 1.0).exp())
    }
}

fn distance(side: Side, terminal: f64, x: f64) -> Result<f64> {
    let d = match side {
        Side::Left => x - terminal,
        Side::Right => terminal - x,
    };
    if d < 0.0 {
        return Err(Error::WrongSide { x, terminal });
    }
    Ok(d)
}

/// Closed-form value of the power-law example at `x`; `terminal` is `a` for
/// the left operators and `b` for the right ones.
pub fn power_law_mult_value(case: &PowerLawCase, terminal: f64, x: f64) -> Result<f64> {
    let (coef, exponent) = case.log_coefficients()?;
    let d = distance(case.side, terminal, x)?;
    Ok((coef * d.powf(exponent)).exp())
}

/// Multiplicative Riemann-Liouville derivative of the constant `c` at
/// distance `d` from the terminal: `exp(ln c d^(-alpha) / Gamma(1-alpha))`,
/// and exactly 1 at integer orders.
pub fn constant_mult_rl_value(c: f64, alpha: f64, distance: f64) -> Result<f64> {
    if c.is_nan() || c <= 0.0 {
        return Err(Error::PositivityViolation { t: distance, value: c });
    }
    if alpha.is_nan() || alpha <= 0.0 {
        return Err(Error::NonPositiveOrder(alpha));
    }
    if alpha.fract() == 0.0 || c == 1.0 {
        return Ok(1.0);
    }
    Ok((c.ln() * distance.powf(-alpha) * recip_gamma(1.0 - alpha)).exp())
}

/// `prod_{k<n} exp(g^(k)(terminal) (t - terminal)^k / k!)` with `g = ln f`,
/// that is `exp(S_g)` for the Taylor polynomial `S_g` of `g` at the terminal.
/// The right side uses `(-1)^k g^(k)(b) (b - t)^k`. Derivatives at the
/// terminal come from one-sided differencing.
pub fn taylor_tail_product(f: &GridFn, n: usize, side: Side) -> Result<GridFn> {
    let log_tail = taylor_tail_log(f, n, side)?;
    Ok(log_tail.map(true, f64::exp))
}

/// The Taylor polynomial `S_g` itself, sampled on the grid of `f`.
pub(crate) fn taylor_tail_log(f: &GridFn, n: usize, side: Side) -> Result<GridFn> {
    if !f.is_positive() {
        return Err(Error::NotPositive);
    }
    let grid = *f.grid();
    let h = grid.step();
    let mut g: Vec<f64> = f.values().iter().map(|v| v.ln()).collect();
    if side == Side::Right {
        g.reverse();
    }
    let derivs = terminal_derivatives(&g, h, n)?;
    let len = g.len();
    let mut s: Vec<f64> = (0..len)
        .map(|i| {
            // Distance in the mirrored frame is always i*h.
            let d = if i + 1 == len { grid.b() - grid.a() } else { i as f64 * h };
            let mut term = 1.0;
            let mut acc = 0.0;
            for (k, dk) in derivs.iter().enumerate() {
                if k > 0 {
                    term *= d / k as f64;
                }
                acc += dk * term;
            }
            acc
        })
        .collect();
    if side == Side::Right {
        s.reverse();
    }
    Ok(GridFn::from_raw(grid, s, false))
}
