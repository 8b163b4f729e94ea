use std::io::{self, Write};
use std::process;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mulfrac::classical::Side;
use mulfrac::error::Error;
use mulfrac::grid::{make_grid, sample, sample_expr, FracOrder, Interval, UniformGrid};
use mulfrac::multiplicative::{
    mult_rl_derivative, mult_rl_integral, Direction, OperatorKind, OperatorRequest, OrderKind,
};
use mulfrac::parser::Expr;
use mulfrac::reference::{constant_mult_rl_value, power_law_mult_value, PowerLawCase, PowerLawKind};
use mulfrac::verify::{property_names, run_suite};

mod closed_form;
mod output;

use output::{Meta, SeriesResult};

#[derive(Parser)]
#[command(name = "mulfrac", version, about = "Multiplicative fractional calculus on sampled functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply one operator to a function of t and print the samples.
    Eval(EvalArgs),
    /// Run the named property checks.
    Verify(VerifyArgs),
    /// Compare a closed-form example with its numerical value.
    Table(TableArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DirectionArg {
    Forward,
    Backward,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum SeriesFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Case {
    PowerInt,
    PowerDeriv,
    Constant,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct EvalArgs {
    #[arg(long, value_parser = parse_op)]
    op: OperatorKind,
    /// Expression in t, e.g. "exp(sin(t) + 2)".
    #[arg(long = "fn")]
    function: String,
    #[arg(long)]
    alpha: Option<f64>,
    /// Derivative count for mderiv.
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, value_enum, default_value = "left")]
    side: SideArg,
    #[arg(long, value_enum, default_value = "forward")]
    direction: DirectionArg,
    #[arg(long)]
    a: f64,
    #[arg(long)]
    b: f64,
    #[arg(long, default_value_t = 1025)]
    grid: usize,
    #[arg(long, value_enum, default_value = "csv")]
    out: SeriesFormat,
    /// Add reference and abs_err columns from a closed form.
    #[arg(long = "ref")]
    reference: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// "all" or a comma-separated list of property names.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    out: ReportFormat,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct TableArgs {
    #[arg(long, value_enum)]
    case: Case,
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long, value_enum, default_value = "left")]
    side: SideArg,
    #[arg(long, default_value_t = 0.0)]
    a: f64,
    #[arg(long, default_value_t = 1.0)]
    b: f64,
    #[arg(long, default_value_t = 1025)]
    grid: usize,
}

fn parse_op(s: &str) -> Result<OperatorKind, String> {
    s.parse()
}

const USAGE: i32 = 2;
const DOMAIN: i32 = 3;
const NO_REFERENCE: i32 = 4;

struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: USAGE, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::PositivityViolation { .. }
            | Error::NonFiniteValue { .. }
            | Error::NotPositive
            | Error::EvalDomain { .. }
            | Error::Overflow { .. } => DOMAIN,
            Error::Pole(_) => NO_REFERENCE,
            _ => USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval(args) => cmd_eval(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::Table(args) => cmd_table(&args),
    };
    match result {
        Ok(code) => process::exit(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            process::exit(f.code);
        }
    }
}

/// Writes to stdout; a reader that went away (`| head`) is not an error.
fn emit(text: &str) {
    let mut out = io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
            process::exit(1);
        }
    }
}

fn unit_grid(a: f64, b: f64, n: usize) -> Result<UniformGrid, Failure> {
    Ok(make_grid(Interval::new(a, b)?, n)?)
}

fn cmd_eval(args: &EvalArgs) -> Result<i32, Failure> {
    let expr = Expr::parse(&args.function)?;
    let grid = unit_grid(args.a, args.b, args.grid)?;
    let order = match args.op.order_kind() {
        OrderKind::None => None,
        OrderKind::Integer => Some(args.n.unwrap_or(1) as f64),
        OrderKind::Real => Some(
            args.alpha
                .ok_or_else(|| Failure::usage(format!("--alpha is required for {}", args.op)))?,
        ),
    };
    let side = Side::from(args.side);
    let f = sample_expr(&expr, &grid, true)?;

    let reference = if args.reference {
        let values = closed_form::reference(&expr, args.op, order, side, &grid)?.ok_or(Failure {
            code: NO_REFERENCE,
            message: format!("no closed form registered for {} of {}", args.op, args.function),
        })?;
        Some(values)
    } else {
        None
    };

    let request = OperatorRequest {
        kind: args.op,
        order: order.unwrap_or(1.0),
        side,
        direction: match args.direction {
            DirectionArg::Forward => Direction::Forward,
            DirectionArg::Backward => Direction::Backward,
        },
        grid,
    };
    let values = request.apply(&f)?.into_values();

    let series = SeriesResult::new(
        grid.points().collect(),
        values,
        reference,
        Meta {
            op: args.op.name().to_string(),
            order,
            side: side.name().to_string(),
            a: args.a,
            b: args.b,
            grid: args.grid,
            function: args.function.clone(),
        },
    );
    let text = match args.out {
        SeriesFormat::Csv => series.to_csv(),
        SeriesFormat::Json => series.to_json(),
    };
    emit(&text);
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32, Failure> {
    let names: Vec<String> = if args.suite == "all" {
        property_names().map(String::from).collect()
    } else {
        args.suite.split(',').map(|s| s.trim().to_string()).collect()
    };
    let reports = run_suite(&names, args.grid, args.seed)?;
    let text = match args.out {
        ReportFormat::Text => reports
            .iter()
            .map(|r| {
                format!(
                    "{} {} observed={:.3e} tol={:.0e}\n",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.observed_error,
                    r.tolerance
                )
            })
            .collect(),
        ReportFormat::Json => output::reports_json(&reports) + "\n",
    };
    emit(&text);
    Ok(if reports.iter().all(|r| r.passed) { 0 } else { 1 })
}

fn cmd_table(args: &TableArgs) -> Result<i32, Failure> {
    let grid = unit_grid(args.a, args.b, args.grid)?;
    let side = Side::from(args.side);
    let terminal = match side {
        Side::Left => args.a,
        Side::Right => args.b,
    };
    let order = FracOrder::new(args.alpha)?;
    let (numeric, closed): (Vec<f64>, Vec<f64>) = match args.case {
        Case::PowerInt | Case::PowerDeriv => {
            let beta = args.beta.ok_or_else(|| Failure::usage("--beta is required for power cases"))?;
            let case = PowerLawCase {
                alpha: args.alpha,
                beta,
                side,
                kind: match args.case {
                    Case::PowerInt => PowerLawKind::Integral,
                    _ => PowerLawKind::Derivative,
                },
            };
            case.log_coefficients()?;
            let f = sample(|t| case.input_value(terminal, t), &grid, true)?;
            let numeric = match case.kind {
                PowerLawKind::Integral => mult_rl_integral(&f, order, side)?,
                PowerLawKind::Derivative => mult_rl_derivative(&f, order, side)?,
            };
            let closed = grid
                .points()
                .map(|x| power_law_mult_value(&case, terminal, x))
                .collect::<Result<_, _>>()?;
            (numeric.into_values(), closed)
        }
        Case::Constant => {
            let c = std::f64::consts::E;
            let f = sample(|_| Ok(c), &grid, true)?;
            let numeric = mult_rl_derivative(&f, order, side)?;
            let closed = grid
                .points()
                .map(|x| constant_mult_rl_value(c, args.alpha, (x - terminal).abs()))
                .collect::<Result<_, _>>()?;
            (numeric.into_values(), closed)
        }
    };
    emit(&output::table_csv(&grid.points().collect::<Vec<_>>(), &numeric, &closed));
    Ok(0)
}
