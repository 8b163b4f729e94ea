//! Closed forms behind `eval --ref`: constant functions under every operator,
//! and `exp(d^p)` with `d` the distance to the terminal under the
//! Riemann-Liouville and Letnikov operators.

use mulfrac::classical::Side;
use mulfrac::error::Result;
use mulfrac::grid::UniformGrid;
use mulfrac::multiplicative::OperatorKind;
use mulfrac::parser::{BinaryOp, Expr, UnaryOp};
use mulfrac::reference::{constant_mult_rl_value, gamma, power_law_mult_value, PowerLawCase, PowerLawKind};

pub fn reference(
    expr: &Expr,
    op: OperatorKind,
    order: Option<f64>,
    side: Side,
    grid: &UniformGrid,
) -> Result<Option<Vec<f64>>> {
    let terminal = match side {
        Side::Left => grid.a(),
        Side::Right => grid.b(),
    };
    let distance = |x: f64| (x - terminal).abs();
    let alpha = order.unwrap_or(1.0);

    if expr.is_constant() {
        let c = expr.eval(0.0)?;
        let lc = c.ln();
        let value = |x: f64| -> Result<f64> {
            let d = distance(x);
            Ok(match op {
                OperatorKind::MultDeriv | OperatorKind::MultCaputo | OperatorKind::MultConfDeriv => 1.0,
                OperatorKind::MultIntegral => (lc * (x - grid.a())).exp(),
                OperatorKind::MultRLIntegral | OperatorKind::MultLetnikovIntegral => {
                    (lc * d.powf(alpha) / gamma(alpha + 1.0)?).exp()
                }
                OperatorKind::MultRLDeriv | OperatorKind::MultLetnikovDeriv => {
                    constant_mult_rl_value(c, alpha, d)?
                }
                OperatorKind::MultConfIntegral => {
                    let beta = alpha - (alpha.ceil() - 1.0);
                    (lc * d.powf(alpha) * gamma(beta)? / gamma(alpha + 1.0)?).exp()
                }
            })
        };
        return grid.points().map(value).collect::<Result<_>>().map(Some);
    }

    let kind = match op {
        OperatorKind::MultRLIntegral | OperatorKind::MultLetnikovIntegral => PowerLawKind::Integral,
        OperatorKind::MultRLDeriv | OperatorKind::MultLetnikovDeriv => PowerLawKind::Derivative,
        _ => return Ok(None),
    };
    let Some(p) = power_exponent(expr, side, grid) else {
        return Ok(None);
    };
    let case = PowerLawCase {
        alpha,
        beta: p + 1.0,
        side,
        kind,
    };
    case.log_coefficients()?;
    grid.points()
        .map(|x| power_law_mult_value(&case, terminal, x))
        .collect::<Result<_>>()
        .map(Some)
}

fn constant_value(e: &Expr) -> Option<f64> {
    e.is_constant().then(|| e.eval(0.0).ok()).flatten()
}

/// `p` when `expr` is `exp(d^p)` or `exp(d)`, with `d` written as `t - a`
/// (or `t` when `a = 0`) on the left and `b - t` on the right.
fn power_exponent(expr: &Expr, side: Side, grid: &UniformGrid) -> Option<f64> {
    let Expr::Unary(UnaryOp::Exp, inner) = expr else {
        return None;
    };
    let (base, p) = match inner.as_ref() {
        Expr::Binary(BinaryOp::Pow, base, p) => (base.as_ref(), constant_value(p)?),
        other => (other, 1.0),
    };
    let is_distance = match (side, base) {
        (Side::Left, Expr::Var) => grid.a() == 0.0,
        (Side::Left, Expr::Binary(BinaryOp::Sub, l, r)) => {
            **l == Expr::Var && constant_value(r) == Some(grid.a())
        }
        (Side::Right, Expr::Binary(BinaryOp::Sub, l, r)) => {
            **r == Expr::Var && constant_value(l) == Some(grid.b())
        }
        _ => false,
    };
    is_distance.then_some(p)
}
