//! Acceptance run: one PASS/FAIL line per criterion on stderr, then a single
//! assertion that all of them passed.
//!
//! Expected values come from analytic formulas or from quadrature written
//! here, not from the library's own reference module.

use std::f64::consts::{E, PI};
use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use mulfrac::classical::{cauchy_iterated_integral, gl_derivative, gl_weights, rl_integral};
use mulfrac::multiplicative::*;
use mulfrac::parser::Expr;
use mulfrac::verify::{gl_rl_derivative_gap, gl_rl_integral_gap, least_squares_slope};
use mulfrac::{make_grid, sample, FracOrder, GridFn, Interval, Side, UniformGrid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn unit(n: usize) -> UniformGrid {
    make_grid(Interval::new(0.0, 1.0).unwrap(), n).unwrap()
}

fn positive(grid: &UniformGrid, g: impl Fn(f64) -> f64) -> GridFn {
    sample(|t| Ok(g(t).exp()), grid, true).unwrap()
}

fn ord(a: f64) -> FracOrder {
    FracOrder::new(a).unwrap()
}

fn rel(x: f64, y: f64) -> f64 {
    ((x - y) / y).abs()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn caputo_constant_rule() -> Outcome {
    let grid = unit(2049);
    let mut worst = 0.0f64;
    let mut slowest = Duration::ZERO;
    for c in [0.5, 1.0, E, 10.0] {
        let f = sample(|_| Ok(c), &grid, true).unwrap();
        for alpha in [0.3, 0.7, 1.4] {
            let start = Instant::now();
            let d = mult_caputo(&f, ord(alpha), Side::Left).unwrap();
            slowest = slowest.max(start.elapsed());
            worst = d.values().iter().fold(worst, |w, v| w.max((v - 1.0).abs()));
        }
    }
    check(
        worst <= 1e-12 && slowest < Duration::from_secs(1),
        format!("max |D - 1| = {worst:e}, slowest call {slowest:?}"),
    )
}

fn constant_rl_derivative() -> Outcome {
    let target = |x: f64| (x.powf(-0.5) / PI.sqrt()).exp();

    let grid = unit(2049);
    let e = sample(|_| Ok(E), &grid, true).unwrap();
    let d = mult_rl_derivative(&e, ord(0.5), Side::Left).unwrap();
    let rl = grid
        .points()
        .enumerate()
        .filter(|&(_, x)| x >= 0.05)
        .map(|(i, x)| rel(d.at(i), target(x)))
        .fold(0.0, f64::max);

    let grid = unit(4097);
    let e = sample(|_| Ok(E), &grid, true).unwrap();
    let d = mult_letnikov_derivative(&e, ord(0.5), Side::Left).unwrap();
    let gl = grid
        .points()
        .enumerate()
        .filter(|&(_, x)| x >= 0.05)
        .map(|(i, x)| rel(d.at(i), target(x)))
        .fold(0.0, f64::max);
    check(
        rl <= 1e-3 && gl <= 5e-3,
        format!("RL rel err {rl:e} (x >= 0.05), Letnikov rel err {gl:e} at h = 1/4096"),
    )
}

/// Adaptive Gauss-Kronrod (7/15) quadrature; returns the integral and the
/// accumulated error estimate.
fn gauss_kronrod(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    const XK: [f64; 8] = [
        0.9914553711208126,
        0.9491079123427585,
        0.8648644233597691,
        0.7415311855993945,
        0.5860872354676911,
        0.4058451513773972,
        0.20778495500789848,
        0.0,
    ];
    const WK: [f64; 8] = [
        0.022935322010529224,
        0.06309209262997856,
        0.10479001032225019,
        0.14065325971552592,
        0.1690047266392679,
        0.19035057806478542,
        0.20443294007529889,
        0.20948214108472782,
    ];
    const WG: [f64; 4] = [
        0.1294849661688697,
        0.27970539148927664,
        0.3818300505051189,
        0.4179591836734694,
    ];
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let mut kronrod = WK[7] * f(c);
    let mut gauss = WG[3] * f(c);
    for i in 0..7 {
        let pair = f(c - r * XK[i]) + f(c + r * XK[i]);
        kronrod += WK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    let (kronrod, gauss) = (kronrod * r, gauss * r);
    let err = (kronrod - gauss).abs();
    if err <= tol || r < 1e-12 {
        return (kronrod, err);
    }
    let (l, el) = gauss_kronrod(f, a, c, 0.5 * tol);
    let (rr, er) = gauss_kronrod(f, c, b, 0.5 * tol);
    (l + rr, el + er)
}

fn power_law_integral() -> Outcome {
    // ln f = t^0.5; the corrected closed form is exp(Gamma(1.5) x).
    let gamma_1_5 = 0.5 * PI.sqrt();
    let closed = |x: f64| gamma_1_5 * x;

    // (1/Gamma(1/2)) int_0^x (x - t)^(-1/2) t^(1/2) dt with s = sqrt(x - t).
    let mut oracle_gap = 0.0f64;
    let mut oracle_err = 0.0f64;
    for k in 1..=10 {
        let x = k as f64 / 10.0;
        let integrand = |s: f64| 2.0 * (x - s * s).max(0.0).sqrt();
        let (v, err) = gauss_kronrod(&integrand, 0.0, x.sqrt(), 1e-12);
        let v = v / PI.sqrt();
        oracle_err = oracle_err.max(err);
        oracle_gap = oracle_gap.max(rel(v, closed(x)));
    }

    let grid = unit(2049);
    let f = positive(&grid, f64::sqrt);
    let i = mult_rl_integral(&f, ord(0.5), Side::Left).unwrap();
    let log_err = grid
        .points()
        .enumerate()
        .map(|(k, x)| (i.at(k).ln() - closed(x)).abs())
        .fold(0.0, f64::max);
    let far = grid
        .points()
        .enumerate()
        .filter(|&(_, x)| x >= 0.05)
        .map(|(k, x)| rel(i.at(k).ln(), closed(x)))
        .fold(0.0, f64::max);
    check(
        log_err <= 1e-3 && oracle_err <= 1e-8 && oracle_gap <= 1e-7,
        format!(
            "max |ln I - ln closed| = {log_err:e} (relative in ln for x >= 0.05: {far:e}); \
             quadrature error {oracle_err:e}, quadrature vs closed {oracle_gap:e}"
        ),
    )
}

fn random_cubic(rng: &mut ChaCha8Rng) -> [f64; 4] {
    std::array::from_fn(|_| rng.random_range(-1.0..=1.0))
}

fn product_rule() -> Outcome {
    let grid = unit(2049);
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let (p, q) = (random_cubic(&mut rng), random_cubic(&mut rng));
        let f = positive(&grid, |t| p[0] + t * (p[1] + t * (p[2] + t * p[3])));
        let g = positive(&grid, |t| q[0] + t * (q[1] + t * (q[2] + t * q[3])));
        let fg = f.mul(&g).unwrap();
        let d = |x: &GridFn| mult_rl_derivative(x, ord(0.7), Side::Left).unwrap();
        let (lhs, df, dg) = (d(&fg), d(&f), d(&g));
        for i in 1..grid.len() {
            worst = worst.max(rel(lhs.at(i), df.at(i) * dg.at(i)));
        }
    }
    check(worst <= 1e-10, format!("20 pairs, max rel err {worst:e}"))
}

fn caputo_inversion() -> Outcome {
    let grid = unit(2049);
    let g = |t: f64| t.sin() + 2.0;
    let f = positive(&grid, g);
    let mut worst = [0.0f64; 2];
    for alpha in [0.3, 0.7] {
        for (slot, (side, anchor)) in [(Side::Left, g(0.0)), (Side::Right, g(1.0))].into_iter().enumerate() {
            let back =
                mult_rl_integral(&mult_caputo(&f, ord(alpha), side).unwrap(), ord(alpha), side).unwrap();
            for (k, t) in grid.points().enumerate() {
                worst[slot] = worst[slot].max(rel(back.at(k), (g(t) - anchor).exp()));
            }
        }
    }
    check(
        worst[0] <= 1e-3 && worst[1] <= 1e-3,
        format!("left rel err {:e}, right rel err {:e}", worst[0], worst[1]),
    )
}

fn conformable_inverses() -> Outcome {
    let grid = unit(2049);
    let g = |t: f64| t.sin() + 2.0;
    let f = positive(&grid, g);
    let mut worst = [0.0f64; 4];
    for alpha in [0.25, 0.5, 0.9] {
        for (side, anchor, slots) in [(Side::Left, g(0.0), (0, 2)), (Side::Right, g(1.0), (1, 3))] {
            let ti = mult_conformable_derivative(
                &mult_conformable_integral(&f, alpha, side).unwrap(),
                alpha,
                side,
            )
            .unwrap();
            let it = mult_conformable_integral(
                &mult_conformable_derivative(&f, alpha, side).unwrap(),
                alpha,
                side,
            )
            .unwrap();
            for (k, t) in grid.points().enumerate() {
                worst[slots.0] = worst[slots.0].max(rel(ti.at(k), g(t).exp()));
                worst[slots.1] = worst[slots.1].max(rel(it.at(k), (g(t) - anchor).exp()));
            }
        }
    }
    check(
        worst.iter().all(|&w| w <= 1e-4),
        format!("(a) {:e}, (b) {:e}, (c) {:e}, (d) {:e}", worst[0], worst[1], worst[2], worst[3]),
    )
}

fn higher_order_conformable() -> Outcome {
    let grid = unit(2049);
    let g = |t: f64| t.sin() + 2.0;
    let f = positive(&grid, g);
    let back = mult_conformable_integral(
        &mult_conformable_derivative(&f, 1.5, Side::Left).unwrap(),
        1.5,
        Side::Left,
    )
    .unwrap();
    // g(0) = 2, g'(0) = 1.
    let worst = grid
        .points()
        .enumerate()
        .map(|(k, t)| rel(back.at(k), (g(t) - 2.0 - t).exp()))
        .fold(0.0, f64::max);
    check(worst <= 1e-3, format!("alpha = 1.5, max rel err {worst:e}"))
}

fn binomial(n: u64, r: u64) -> f64 {
    (0..r).fold(1.0, |acc, k| acc * (n - k) as f64 / (k + 1) as f64)
}

fn gl_equivalence() -> Outcome {
    let mut der = Vec::new();
    let mut int = Vec::new();
    for k in 8..=12 {
        let n = (1usize << k) + 1;
        let h = 1.0 / (n - 1) as f64;
        der.push((h.ln(), gl_rl_derivative_gap(n).unwrap().ln()));
        int.push((h.ln(), gl_rl_integral_gap(n).unwrap().ln()));
    }
    let (sd, si) = (least_squares_slope(&der), least_squares_slope(&int));

    // Integer orders: binomial weights and plain backward differences.
    let mut weight_err = 0.0f64;
    let mut diff_err = 0.0f64;
    let grid = unit(65);
    let h = grid.step();
    let u: Vec<f64> = grid.points().map(|t| (3.0 * t).sin() + t * t).collect();
    let g = sample(|t| Ok((3.0 * t).sin() + t * t), &grid, false).unwrap();
    for n in 1..=4u64 {
        let w = gl_weights(n as f64, 10);
        for r in 0..=10u64 {
            let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
            let want = if r <= n { sign * binomial(n, r) } else { 0.0 };
            weight_err = weight_err.max((w.coeffs()[r as usize] - want).abs());
        }
        let d = gl_derivative(&g, ord(n as f64), Side::Left).unwrap();
        for j in n as usize..grid.len() {
            let mut cur: Vec<f64> = u[j - n as usize..=j].to_vec();
            for _ in 0..n {
                cur = cur.windows(2).map(|p| p[1] - p[0]).collect();
            }
            // Compare before dividing by h^n, which only magnifies roundoff.
            diff_err = diff_err.max((d.at(j) * h.powi(n as i32) - cur[0]).abs());
        }
    }
    check(
        sd >= 0.9 && si >= 0.9 && weight_err <= 1e-12 && diff_err <= 1e-12,
        format!(
            "slopes: derivative {sd:.3}, integral {si:.3}; integer weights err {weight_err:e}, \
             iterated differences err {diff_err:e}"
        ),
    )
}

fn cauchy_reduction() -> Outcome {
    let grid = unit(2049);
    let g = sample(|t| Ok(t.sin()), &grid, false).unwrap();
    let mut worst = 0.0f64;
    for n in 1..=3 {
        let rl = rl_integral(&g, ord(n as f64), Side::Left).unwrap();
        let iterated = cauchy_iterated_integral(&g, n, Side::Left).unwrap();
        for (x, y) in rl.values().iter().zip(iterated.values()) {
            worst = worst.max((x - y).abs());
        }
    }
    check(worst <= 1e-6, format!("max |I^n - iterated| = {worst:e}"))
}

const CORPUS: [(&str, f64); 34] = [
    ("1+2*3", 7.0),
    ("(1+2)*3", 9.0),
    ("2^3^2", 512.0),
    ("(2^3)^2", 64.0),
    ("-2^2", -4.0),
    ("(-2)^2", 4.0),
    ("2^-1", 0.5),
    ("2^-1^2", 0.5),
    ("--3", 3.0),
    ("-(-3)", 3.0),
    ("8/4/2", 1.0),
    ("8/(4/2)", 4.0),
    ("10-4-3", 3.0),
    ("10-(4-3)", 9.0),
    ("2*3+4*5", 26.0),
    ("2*(3+4)*5", 70.0),
    ("1+2^2*3", 13.0),
    ("3*2^2", 12.0),
    ("-3*2", -6.0),
    ("2*-3", -6.0),
    ("2^2*3^2", 36.0),
    ("4^0.5", 2.0),
    ("abs(-5)", 5.0),
    ("sqrt(16)+1", 5.0),
    ("exp(0)", 1.0),
    ("ln(1)", 0.0),
    ("sin(0)+cos(0)", 1.0),
    ("  1 +\t2 ", 3.0),
    ("1.5e1", 15.0),
    ("2.5E-1*4", 1.0),
    ("-2^-2", -0.25),
    ("(1+2)^(1+1)", 9.0),
    ("6/2*3", 9.0),
    ("1-2+3", 2.0),
];

/// Random well-formed text from the grammar, with random spacing.
fn gen_expr(rng: &mut ChaCha8Rng, depth: u32) -> String {
    let terms = 1 + rng.random_range(0..if depth > 0 { 3 } else { 1 });
    let mut s = gen_term(rng, depth);
    for _ in 1..terms {
        s.push_str(if rng.random_bool(0.5) { " + " } else { "-" });
        s.push_str(&gen_term(rng, depth));
    }
    s
}

fn gen_term(rng: &mut ChaCha8Rng, depth: u32) -> String {
    let factors = 1 + rng.random_range(0..if depth > 0 { 3 } else { 1 });
    let mut s = gen_unary(rng, depth);
    for _ in 1..factors {
        s.push_str(if rng.random_bool(0.5) { "*" } else { " / " });
        s.push_str(&gen_unary(rng, depth));
    }
    s
}

fn gen_unary(rng: &mut ChaCha8Rng, depth: u32) -> String {
    if rng.random_bool(0.2) {
        return format!("-{}", gen_unary(rng, depth));
    }
    let base = gen_primary(rng, depth);
    if depth > 0 && rng.random_bool(0.25) {
        let exp = match rng.random_range(0..3) {
            0 => format!("{}", rng.random_range(0..4)),
            1 => "t".to_string(),
            _ => format!("-{}", rng.random_range(1..3)),
        };
        format!("{base}^{exp}")
    } else {
        base
    }
}

fn gen_primary(rng: &mut ChaCha8Rng, depth: u32) -> String {
    let choice = if depth == 0 { rng.random_range(0..4) } else { rng.random_range(0..6) };
    match choice {
        0 => format!("{}", rng.random_range(0..100)),
        1 => format!("{:.3}", rng.random_range(0.0..10.0)),
        2 => "t".to_string(),
        3 => ["e", "pi"][rng.random_range(0..2)].to_string(),
        4 => {
            let name = ["exp", "ln", "sin", "cos", "sqrt", "abs"][rng.random_range(0..6)];
            format!("{name}( {} )", gen_expr(rng, depth - 1))
        }
        _ => format!("({})", gen_expr(rng, depth - 1)),
    }
}

fn equivalent(x: &mulfrac::Result<f64>, y: &mulfrac::Result<f64>) -> bool {
    match (x, y) {
        (Ok(a), Ok(b)) if a.is_finite() && b.is_finite() => {
            (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
        }
        (Ok(a), Ok(b)) => a == b || (a.is_nan() && b.is_nan()),
        (Err(_), Err(_)) => true,
        _ => false,
    }
}

fn parser_contract() -> Outcome {
    let mut wrong = Vec::new();
    for (text, want) in CORPUS {
        match Expr::parse(text).and_then(|e| e.eval(0.7)) {
            Ok(v) if v == want => {}
            other => wrong.push(format!("{text} -> {other:?}")),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut fuzz_fail = 0;
    for _ in 0..1000 {
        let text = gen_expr(&mut rng, 3);
        let Ok(first) = Expr::parse(&text) else {
            fuzz_fail += 1;
            continue;
        };
        let Ok(second) = Expr::parse(&first.to_string()) else {
            fuzz_fail += 1;
            continue;
        };
        for _ in 0..10 {
            let t = rng.random_range(-2.0..2.0);
            if !equivalent(&first.eval(t), &second.eval(t)) {
                fuzz_fail += 1;
                break;
            }
        }
    }
    check(
        wrong.is_empty() && fuzz_fail == 0,
        format!(
            "{} corpus cases, wrong: {wrong:?}; 1000 fuzz round trips, {fuzz_fail} failed",
            CORPUS.len()
        ),
    )
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_mulfrac")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn cli_contract() -> Outcome {
    let mut problems = Vec::new();

    let (code, out) = run_cli(&["eval", "--op", "mcaputo", "--fn", "5", "--alpha", "0.5", "--a", "0", "--b", "1"]);
    let lines: Vec<&str> = out.lines().collect();
    if code != 0 || lines.first() != Some(&"x,value") || lines.len() != 1026 {
        problems.push(format!("mcaputo: exit {code}, {} lines", lines.len()));
    }
    for (i, line) in lines.iter().enumerate().skip(1) {
        let x = (i - 1) as f64 / 1024.0;
        if *line != format!("{x:.16e},1.0000000000000000e0") {
            problems.push(format!("mcaputo row {i}: {line}"));
            break;
        }
    }

    let (code, out) = run_cli(&[
        "eval", "--op", "mrl-deriv", "--fn", "e", "--alpha", "0.5", "--a", "0", "--b", "1", "--ref",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    if code != 0 || lines.first() != Some(&"x,value,reference,abs_err") {
        problems.push(format!("mrl-deriv: exit {code}, header {:?}", lines.first()));
    }
    let mut max_err = 0.0f64;
    for line in lines.iter().skip(2) {
        let cols: Vec<&str> = line.split(',').collect();
        let x: f64 = cols[0].parse().unwrap();
        let err: f64 = cols[3].parse().unwrap();
        let exact = (x.powf(-0.5) / PI.sqrt()).exp();
        if rel(cols[2].parse().unwrap(), exact) > 1e-12 {
            problems.push(format!("reference column off at x = {x}"));
            break;
        }
        max_err = max_err.max(err);
    }
    if !lines.get(1).is_some_and(|l| l.starts_with("0.0000000000000000e0,inf,")) {
        problems.push(format!("terminal row {:?}", lines.get(1)));
    }
    if max_err > 1e-3 {
        problems.push(format!("mrl-deriv abs_err {max_err:e}"));
    }

    let (code, out) = run_cli(&["eval", "--op", "mrl-int", "--fn", "t", "--alpha", "0.5", "--a", "0", "--b", "1"]);
    if code != 3 || !out.is_empty() {
        problems.push(format!("mrl-int of t: exit {code}"));
    }

    let start = Instant::now();
    let (code, out) = run_cli(&["verify", "--suite", "all"]);
    let took = start.elapsed();
    if code != 0 || out.lines().count() != 17 || took > Duration::from_secs(30) {
        problems.push(format!("verify all: exit {code}, {} lines, {took:?}", out.lines().count()));
    }
    check(
        problems.is_empty(),
        if problems.is_empty() {
            format!("three eval examples reproduced; verify --suite all in {took:?}")
        } else {
            problems.join("; ")
        },
    )
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 11] = [
        ("caputo constant rule", caputo_constant_rule),
        ("RL derivative of a constant", constant_rl_derivative),
        ("power-law RL integral", power_law_integral),
        ("product rule", product_rule),
        ("Caputo inversion", caputo_inversion),
        ("conformable inverse identities", conformable_inverses),
        ("higher-order conformable inversion", higher_order_conformable),
        ("Letnikov and RL agree", gl_equivalence),
        ("Cauchy reduction", cauchy_reduction),
        ("parser", parser_contract),
        ("CLI contract", cli_contract),
    ];
    let mut failed = 0;
    let mut err = std::io::stderr().lock();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (tag, detail) = match run() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        writeln!(err, "{tag} {:>2} {name}: {detail}", i + 1).unwrap();
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
