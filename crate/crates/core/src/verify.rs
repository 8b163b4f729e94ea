//! Named numerical checks of the identities the operators must satisfy.
//!
//! Each property has a fixed tolerance and a default grid size. Errors of
//! multiplicative quantities are measured in log space, `|ln x - ln y|`,
//! which is their relative error to first order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classical::{cauchy_iterated_integral, gl_weights, rl_integral, Side};
use crate::error::{Error, Result};
use crate::grid::{make_grid, sample, FracOrder, GridFn, Interval, UniformGrid};
use crate::multiplicative::*;
use crate::reference::{
    constant_mult_rl_value, gamma, power_law_mult_value, PowerLawCase, PowerLawKind,
};

/// Outcome of one property check. `passed` is `observed_error <= tolerance`.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub name: String,
    pub passed: bool,
    pub observed_error: f64,
    pub tolerance: f64,
    pub config_summary: String,
}

struct Property {
    name: &'static str,
    tolerance: f64,
    default_points: usize,
    run: fn(&Config) -> Result<(f64, String)>,
}

struct Config {
    n_points: usize,
    seed: u64,
}

const QUAD: usize = 2049;
const GL: usize = 4097;

const REGISTRY: [Property; 17] = [
    Property { name: "lift_identity", tolerance: 5e-3, default_points: GL, run: lift_identity },
    Property { name: "product_rule", tolerance: 1e-10, default_points: QUAD, run: product_rule },
    Property { name: "caputo_constant", tolerance: 1e-12, default_points: QUAD, run: caputo_constant },
    Property { name: "rl_constant", tolerance: 1e-4, default_points: QUAD, run: rl_constant },
    Property { name: "caputo_inversion_left", tolerance: 1e-3, default_points: QUAD, run: caputo_inversion_left },
    Property { name: "caputo_inversion_right", tolerance: 1e-3, default_points: QUAD, run: caputo_inversion_right },
    Property { name: "conformable_inverse_a", tolerance: 1e-4, default_points: QUAD, run: conformable_inverse_a },
    Property { name: "conformable_inverse_b", tolerance: 1e-4, default_points: QUAD, run: conformable_inverse_b },
    Property { name: "conformable_inverse_c", tolerance: 1e-4, default_points: QUAD, run: conformable_inverse_c },
    Property { name: "conformable_inverse_d", tolerance: 1e-4, default_points: QUAD, run: conformable_inverse_d },
    Property { name: "higher_conformable_a", tolerance: 1e-3, default_points: QUAD, run: higher_conformable_a },
    Property { name: "higher_conformable_b", tolerance: 1e-3, default_points: QUAD, run: higher_conformable_b },
    Property { name: "gl_matches_rl_derivative", tolerance: 5e-3, default_points: GL, run: gl_matches_rl_derivative },
    Property { name: "gl_matches_rl_integral", tolerance: 5e-3, default_points: GL, run: gl_matches_rl_integral },
    Property { name: "cauchy_integer_reduction", tolerance: 1e-6, default_points: QUAD, run: cauchy_integer_reduction },
    Property { name: "power_law_oracle", tolerance: 1e-3, default_points: QUAD, run: power_law_oracle },
    Property { name: "mult_deriv_quotient_convergence", tolerance: 0.1, default_points: QUAD, run: quotient_convergence },
];

/// Names of all registered properties, in registration order.
pub fn property_names() -> impl Iterator<Item = &'static str> {
    REGISTRY.iter().map(|p| p.name)
}

/// Runs the named properties in the given order. `n_points` overrides each
/// property's default grid size; `seed` drives the random test functions.
/// Every name is checked before anything runs.
pub fn run_suite<S: AsRef<str>>(
    names: &[S],
    n_points: Option<usize>,
    seed: u64,
) -> Result<Vec<PropertyReport>> {
    let props = names
        .iter()
        .map(|name| {
            let name = name.as_ref();
            REGISTRY
                .iter()
                .find(|p| p.name == name)
                .ok_or_else(|| Error::UnknownProperty(name.to_string()))
        })
        .collect::<Result<Vec<_>>>()?;
    props
        .into_iter()
        .map(|p| {
            let config = Config {
                n_points: n_points.unwrap_or(p.default_points),
                seed,
            };
            let (observed, summary) = (p.run)(&config)?;
            Ok(PropertyReport {
                name: p.name.to_string(),
                passed: observed <= p.tolerance,
                observed_error: observed,
                tolerance: p.tolerance,
                config_summary: summary,
            })
        })
        .collect()
}

fn unit(n: usize) -> Result<UniformGrid> {
    make_grid(Interval::new(0.0, 1.0)?, n)
}

fn positive(grid: &UniformGrid, g: impl Fn(f64) -> f64) -> Result<GridFn> {
    sample(|t| Ok(g(t).exp()), grid, true)
}

fn smooth_log(t: f64) -> f64 {
    t.sin() + 2.0
}

fn order(alpha: f64) -> FracOrder {
    FracOrder::new(alpha).expect("registered orders are positive")
}

fn log_gap(x: f64, y: f64) -> f64 {
    if x == y {
        0.0
    } else {
        (x.ln() - y.ln()).abs()
    }
}

/// Largest log gap between `f` and `exact` over the nodes selected by `keep`.
fn max_log_gap(f: &GridFn, exact: impl Fn(f64) -> f64, keep: impl Fn(usize) -> bool) -> f64 {
    f.grid()
        .points()
        .enumerate()
        .filter(|&(i, _)| keep(i))
        .map(|(i, t)| log_gap(f.at(i), exact(t)))
        .fold(0.0, f64::max)
}

fn nearest(grid: &UniformGrid, x: f64) -> usize {
    (((x - grid.a()) / grid.step()).round() as usize).min(grid.len() - 1)
}

const PROBES: [f64; 4] = [0.25, 0.5, 0.75, 1.0];

fn random_cubic(rng: &mut ChaCha8Rng) -> [f64; 4] {
    std::array::from_fn(|_| rng.random_range(-1.0..=1.0))
}

fn cubic(c: [f64; 4], t: f64) -> f64 {
    ((c[3] * t + c[2]) * t + c[1]) * t + c[0]
}

/// Product `prod f(t - r h)^(w_r h^-alpha)` at node `j`, carrying the binary
/// exponent separately so the running product never overflows. Returns its
/// natural log.
fn letnikov_product_log(f: &GridFn, alpha: f64, j: usize) -> f64 {
    let h = f.grid().step();
    let scale = h.powf(-alpha);
    let w = gl_weights(alpha, j);
    let mut mantissa = 1.0f64;
    let mut exponent = 0i64;
    for r in 0..=j {
        mantissa *= f.at(j - r).powf(w.coeffs()[r] * scale);
        if !(1e-100..=1e100).contains(&mantissa) {
            let e = mantissa.log2().floor();
            mantissa /= e.exp2();
            exponent += e as i64;
        }
    }
    mantissa.ln() + exponent as f64 * std::f64::consts::LN_2
}

fn lift_identity(c: &Config) -> Result<(f64, String)> {
    let grid = unit(c.n_points)?;
    let h = grid.step();
    let f = positive(&grid, smooth_log)?;

    let mut worst = 0.0f64;
    let exact = mult_derivative(&f, 1, Direction::Forward)?;
    for dir in [Direction::Forward, Direction::Backward] {
        let q = mult_derivative_limit_quotient(&f, dir, h)?;
        for i in 0..q.len() {
            worst = worst.max(log_gap(q.at(i), exact.at(i + 1)));
        }
    }

    let alpha = 0.5;
    let rl = mult_rl_derivative(&f, order(alpha), Side::Left)?;
    for x in PROBES {
        let j = nearest(&grid, x);
        worst = worst.max((letnikov_product_log(&f, alpha, j) - rl.at(j).ln()).abs());
    }

    // (f(t + eps (t-a)^(1-alpha)) / f(t))^(1/eps) on the analytic f.
    let eps = 1e-6;
    for alpha in [0.25, 0.5, 0.9] {
        let conf = mult_conformable_derivative(&f, alpha, Side::Left)?;
        for x in PROBES {
            let j = nearest(&grid, x);
            let t = grid.point(j);
            let f_at = |s: f64| smooth_log(s).exp();
            let limit = (f_at(t + eps * t.powf(1.0 - alpha)) / f_at(t)).powf(1.0 / eps);
            worst = worst.max(log_gap(limit, conf.at(j)));
        }
    }
    Ok((
        worst,
        format!(
            "N={} f=exp(sin t + 2); quotient vs derivative, Letnikov product vs RL at alpha=0.5, conformable limit eps=1e-6",
            c.n_points
        ),
    ))
}

fn product_rule(c: &Config) -> Result<(f64, String)> {
    let grid = unit(c.n_points)?;
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let alpha = 0.7;
    let ops: [fn(&GridFn) -> Result<GridFn>; 4] = [
        |f| mult_rl_derivative(f, order(0.7), Side::Left),
        |f| mult_caputo(f, order(0.7), Side::Left),
        |f| mult_letnikov_derivative(f, order(0.7), Side::Left),
        |f| mult_conformable_derivative(f, 0.7, Side::Left),
    ];
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let (p, q) = (random_cubic(&mut rng), random_cubic(&mut rng));
        let f = positive(&grid, |t| cubic(p, t))?;
        let g = positive(&grid, |t| cubic(q, t))?;
        let fg = f.mul(&g)?;
        for op in ops {
            let (lhs, mf, mg) = (op(&fg)?, op(&f)?, op(&g)?);
            for i in 1..grid.len() {
                let rhs = mf.at(i) * mg.at(i);
                worst = worst.max(((lhs.at(i) - rhs) / rhs).abs());
            }
        }
    }
    Ok((
        worst,
        format!(
            "N={} seed={} 20 pairs exp(cubic), alpha={alpha}, RL/Caputo/Letnikov/conformable, t > a",
            c.n_points, c.seed
        ),
    ))
}

fn caputo_constant(c: &Config) -> Result<(f64, String)> {
    let grid = unit(c.n_points)?;
    let mut worst = 0.0f64;
    for value in [0.5, 1.0, std::f64::consts::E, 10.0] {
        let f = sample(|_| Ok(value), &grid, true)?;
        for alpha in [0.3, 0.7, 1.4] {
            for side in [Side::Left, Side::Right] {
                let d = mult_caputo(&f, order(alpha), side)?;
                worst = d.values().iter().fold(worst, |w, v| w.max((v - 1.0).abs()));
            }
        }
    }
    Ok((
        worst,
        format!("N={} c in {{0.5, 1, e, 10}}, alpha in {{0.3, 0.7, 1.4}}, both sides", c.n_points),
    ))
}

fn rl_constant(c: &Config) -> Result<(f64, String)> {
    let grid = unit(c.n_points)?;
    let mut worst = 0.0f64;
    for value in [0.5, std::f64::consts::E, 10.0] {
        let f = sample(|_| Ok(value), &grid, true)?;
        for alpha in [0.3, 0.5, 0.9] {
            for side in [Side::Left, Side::Right] {
                let d = mult_rl_derivative(&f, order(alpha), side)?;
                for (i, t) in grid.points().enumerate() {
                    let dist = match side {
                        Side::Left => t - grid.a(),
                        Side::Right => grid.b() - t,
                    };
                    if dist < 0.05 {
                        continue;
                    }
                    let want = constant_mult_rl_value(value, alpha, dist)?;
                    worst = worst.max(((d.at(i) - want) / want).abs());
                }
            }
        }
    }
    Ok((
        worst,
        format!(
            "N={} c in {{0.5, e, 10}}, alpha in {{0.3, 0.5, 0.9}}, both sides, distance >= 0.05",
            c.n_points
        ),
    ))
}

fn caputo_inversion(c: &Config, side: Side) -> Result<(f64, String)> {
    let grid = unit(c.n_points)?;
    let f = positive(&grid, smooth_log)?;
    let anchor = match side {
        Side::Left => smooth_log(grid.a()),
        Side::Right => smooth_log(grid.b()),
    };
    let mut worst = 0.0f64;
    for alpha in [0.3, 0.7] {
        let back = mult_rl_integral(&mult_caputo(&f, order(alpha), side)?, order(alpha), side)?;
        worst = worst.max(max_log_gap(&back, |t| (smooth_log(t) - anchor).exp(), |_| true));
    }
    Ok((
        worst,
        format!("N={} f=exp(sin t + 2), alpha in {{0.3, 0.7}}, {} side", c.n_points, side.name()),
    ))
}

fn caputo_inversion_left(c: &Config) -> Result<(f64, String)> {
    caputo_inversion(c, Side::Left)
}

fn caputo_inversion_right(c: &Config) -> Result<(f64, String)> {
    caputo_inversion(c, Side::Right)
}

/// `derivative_first` selects `I(T f)` over `T(I f)`.
fn conformable_inverse(c: &Config, side: Side, derivative_first: bool) -> Result<(f64, String)> {
    let grid = unit(c.n_points)?;
    let f = positive(&grid, smooth_log)?;
    let anchor = match (derivative_first, side) {
        (false, _) => 0.0,
        (true, Side::Left) => smooth_log(grid.a()),
        (true, Side::Right) => smooth_log(grid.b()),
    };
    let mut worst = 0.0f64;
    for alpha in [0.25, 0.5, 0.9] {
        let out = if derivative_first {
            mult_conformable_integral(&mult_conformable_derivative(&f, alpha, side)?, alpha, side)?
        } else {
            mult_conformable_derivative(&mult_conformable_integral(&f, alpha, side)?, alpha, side)?
        };
        worst = worst.max(max_log_gap(&out, |t| (smooth_log(t) - anchor).exp(), |_| true));
    }
    let form = if derivative_first { "I(T f)" } else { "T(I f)" };
    Ok((
        worst,
        format!(
            "N={} f=exp(sin t + 2), alpha in {{0.25, 0.5, 0.9}}, {form}, {} side",
            c.n_points,
            side.name()
        ),
    ))
}

fn conformable_inverse_a(c: &Config) -> Result<(f64, String)> {
    conformable_inverse(c, Side::Left, false)
}

fn conformable_inverse_b(c: &Config) -> Result<(f64, String)> {
    conformable_inverse(c, Side::Right, false)
}

fn conformable_inverse_c(c: &Config) -> Result<(f64, String)> {
    conformable_inverse(c, Side::Left, true)
}

fn conformable_inverse_d(c: &Config) -> Result<(f64, String)> {
    conformable_inverse(c, Side::Right, true)
}

fn higher_conformable(c: &Config, side: Side) -> Result<(f64, String)> {
    let grid = unit(c.n_points)?;
    let f = positive(&grid, smooth_log)?;
    let alpha = 1.5;
    let back =
        mult_conformable_integral(&mult_conformable_derivative(&f, alpha, side)?, alpha, side)?;
    // Divide out the first two Taylor terms of ln f at the terminal.
    let tail = |t: f64| match side {
        Side::Left => smooth_log(0.0) + 0.0f64.cos() * t,
        Side::Right => smooth_log(1.0) - 1.0f64.cos() * (1.0 - t),
    };
    let worst = max_log_gap(&back, |t| (smooth_log(t) - tail(t)).exp(), |_| true);
    Ok((
        worst,
        format!("N={} f=exp(sin t + 2), alpha=1.5, {} side", c.n_points, side.name()),
    ))
}

fn higher_conformable_a(c: &Config) -> Result<(f64, String)> {
    higher_conformable(c, Side::Left)
}

fn higher_conformable_b(c: &Config) -> Result<(f64, String)> {
    higher_conformable(c, Side::Right)
}

/// Largest log gap at t = 0.25, 0.5, 0.75, 1 between the Letnikov and
/// Riemann-Liouville derivatives of order 1/2 of `exp(sin t + 2)` on an
/// `n_points` grid over `[0, 1]`.
pub fn gl_rl_derivative_gap(n_points: usize) -> Result<f64> {
    let grid = unit(n_points)?;
    let f = positive(&grid, smooth_log)?;
    let gl = mult_letnikov_derivative(&f, order(0.5), Side::Left)?;
    let rl = mult_rl_derivative(&f, order(0.5), Side::Left)?;
    Ok(PROBES
        .iter()
        .map(|&x| {
            let j = nearest(&grid, x);
            log_gap(gl.at(j), rl.at(j))
        })
        .fold(0.0, f64::max))
}

/// Same as [`gl_rl_derivative_gap`] for the integrals of order 1/2.
pub fn gl_rl_integral_gap(n_points: usize) -> Result<f64> {
    let grid = unit(n_points)?;
    let f = positive(&grid, smooth_log)?;
    let gl = mult_letnikov_integral(&f, 0.5, Side::Left)?;
    let rl = mult_rl_integral(&f, order(0.5), Side::Left)?;
    Ok(PROBES
        .iter()
        .map(|&x| {
            let j = nearest(&grid, x);
            log_gap(gl.at(j), rl.at(j))
        })
        .fold(0.0, f64::max))
}

fn gl_matches_rl_derivative(c: &Config) -> Result<(f64, String)> {
    Ok((
        gl_rl_derivative_gap(c.n_points)?,
        format!("N={} f=exp(sin t + 2), alpha=0.5, t in {{0.25, 0.5, 0.75, 1}}", c.n_points),
    ))
}

fn gl_matches_rl_integral(c: &Config) -> Result<(f64, String)> {
    Ok((
        gl_rl_integral_gap(c.n_points)?,
        format!("N={} f=exp(sin t + 2), p=0.5, t in {{0.25, 0.5, 0.75, 1}}", c.n_points),
    ))
}

fn cauchy_integer_reduction(c: &Config) -> Result<(f64, String)> {
    let grid = unit(c.n_points)?;
    let g = sample(|t| Ok(t.sin()), &grid, false)?;
    let mut worst = 0.0f64;
    for n in 1..=3 {
        for side in [Side::Left, Side::Right] {
            let rl = rl_integral(&g, order(n as f64), side)?;
            let iterated = cauchy_iterated_integral(&g, n, side)?;
            for (x, y) in rl.values().iter().zip(iterated.values()) {
                worst = worst.max((x - y).abs());
            }
        }
    }
    Ok((worst, format!("N={} g=sin t, alpha in {{1, 2, 3}}, both sides", c.n_points)))
}

/// `int_a^b phi` by adaptive Simpson to absolute tolerance `tol`.
fn adaptive_simpson(phi: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn step(
        phi: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (phi(lm), phi(rm));
        let left = simpson(fa, flm, fm, a, m);
        let right = simpson(fm, frm, fb, m, b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(phi, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + step(phi, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let (fa, fm, fb) = (phi(a), phi(0.5 * (a + b)), phi(b));
    step(phi, a, b, fa, fm, fb, simpson(fa, fm, fb, a, b), tol, 50)
}

/// `(1/Gamma(alpha)) int_0^x (x-t)^(alpha-1) t^(beta-1) dt` by adaptive
/// quadrature after substituting `s = (x-t)^alpha`, which removes the kernel
/// singularity.
fn brute_force_power_integral(alpha: f64, beta: f64, x: f64) -> Result<f64> {
    let phi = |s: f64| (x - s.powf(1.0 / alpha)).max(0.0).powf(beta - 1.0);
    Ok(adaptive_simpson(&phi, 0.0, x.powf(alpha), 1e-13) / (alpha * gamma(alpha)?))
}

fn power_law_oracle(c: &Config) -> Result<(f64, String)> {
    let grid = unit(c.n_points)?;
    let int = PowerLawCase {
        alpha: 0.5,
        beta: 1.5,
        side: Side::Left,
        kind: PowerLawKind::Integral,
    };
    let (coef, exponent) = int.log_coefficients()?;
    for k in 1..=10 {
        let x = k as f64 / 10.0;
        let closed = coef * x.powf(exponent);
        let brute = brute_force_power_integral(int.alpha, int.beta, x)?;
        if ((brute - closed) / closed).abs() > 1e-7 {
            return Ok((f64::INFINITY, format!("oracle disagrees at x={x}: {brute} vs {closed}")));
        }
    }

    let f = sample(|t| int.input_value(0.0, t), &grid, true)?;
    let num = mult_rl_integral(&f, order(int.alpha), Side::Left)?;
    let mut worst = max_log_gap(&num, |t| power_law_mult_value(&int, 0.0, t).unwrap(), |_| true);

    let der = PowerLawCase {
        alpha: 0.5,
        beta: 3.0,
        kind: PowerLawKind::Derivative,
        ..int
    };
    let f = sample(|t| der.input_value(0.0, t), &grid, true)?;
    let num = mult_rl_derivative(&f, order(der.alpha), Side::Left)?;
    let exact = |t| power_law_mult_value(&der, 0.0, t).unwrap();
    worst = worst.max(max_log_gap(&num, exact, |i| i > 0));
    Ok((
        worst,
        format!(
            "N={} exp(t^0.5) alpha=0.5 integral and exp(t^2) alpha=0.5 derivative; quadrature oracle at 10 points",
            c.n_points
        ),
    ))
}

/// Least-squares slopes of `log |ln q_h(1/2) - g'(1/2)|` against `log h` for
/// the forward and backward quotients of `f = exp(t^2)`, `h = 2^-4 .. 2^-10`.
pub fn quotient_slopes() -> Result<(f64, f64)> {
    let mut slopes = [0.0; 2];
    for (slot, dir) in [Direction::Forward, Direction::Backward].into_iter().enumerate() {
        let mut pts = Vec::new();
        for k in 4..=10 {
            let n = (1usize << k) + 1;
            let grid = unit(n)?;
            let f = positive(&grid, |t| t * t)?;
            let q = mult_derivative_limit_quotient(&f, dir, grid.step())?;
            let mid = nearest(&grid, 0.5) - 1;
            let err = (q.at(mid).ln() - 1.0).abs();
            pts.push((grid.step().ln(), err.ln()));
        }
        slopes[slot] = least_squares_slope(&pts);
    }
    Ok((slopes[0], slopes[1]))
}

pub fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

fn quotient_convergence(_: &Config) -> Result<(f64, String)> {
    let (fwd, bwd) = quotient_slopes()?;
    Ok((
        (fwd - 1.0).abs().max((bwd - 1.0).abs()),
        format!("f=exp(t^2) at t=0.5, h=2^-4..2^-10, slopes forward={fwd:.4} backward={bwd:.4}"),
    ))
}
