use thiserror::Error;

/// Errors produced by grid construction, sampling, the expression parser and
/// the fractional operators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate interval [{a}, {b}]: need finite a < b")]
    DegenerateInterval { a: f64, b: f64 },

    #[error("a grid needs at least 3 points, got {0}")]
    TooFewPoints(usize),

    #[error("function is not positive at t = {t} (value {value})")]
    PositivityViolation { t: f64, value: f64 },

    #[error("function value at t = {t} is not finite ({value})")]
    NonFiniteValue { t: f64, value: f64 },

    #[error("grid function does not carry the positivity flag")]
    NotPositive,

    #[error("exp overflows at t = {t} (exponent {exponent})")]
    Overflow { t: f64, exponent: f64 },

    #[error("grid of {n_points} points is too coarse for order {order}")]
    GridTooCoarse { order: usize, n_points: usize },

    #[error("fractional order must be positive and finite, got {0}")]
    NonPositiveOrder(f64),

    #[error("order {alpha} outside the admissible range {range}")]
    OrderOutOfRange { alpha: f64, range: &'static str },

    #[error("syntax error at byte {offset}: expected {expected}")]
    Syntax { offset: usize, expected: String },

    #[error("unknown function or identifier `{name}` at byte {offset}")]
    UnknownFunction { name: String, offset: usize },

    #[error("evaluation domain error in `{node}` at t = {t}")]
    EvalDomain { node: &'static str, t: f64 },

    #[error("gamma function pole at {0}")]
    Pole(f64),

    #[error("point {x} lies on the wrong side of the terminal {terminal}")]
    WrongSide { x: f64, terminal: f64 },

    #[error("unknown property `{0}`")]
    UnknownProperty(String),

    #[error("grid functions live on different grids")]
    GridMismatch,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
