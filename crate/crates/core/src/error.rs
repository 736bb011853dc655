use thiserror::Error;

use crate::Rational;

/// Errors raised by the representation and analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid digit {0}, expected one of 0, 1, 2")]
    InvalidDigit(u8),
    #[error("schedule period must contain at least one entry")]
    EmptyPeriod,
    #[error("column entry q{index} = {value} is not positive")]
    NonPositiveProbability { index: usize, value: Rational },
    #[error("column does not sum to 1 (sum is {0})")]
    ColumnSum(Rational),
    #[error("epsilon out of [0,1]: {0}")]
    EpsilonOutOfRange(Rational),
    #[error("value {0} lies outside [0,1]")]
    OutOfUnitInterval(String),
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
    #[error("depth must be at least 1")]
    InvalidDepth,
    #[error("digit sequence {0} has no dual representation")]
    NoDualRepresentation(String),
    #[error("operation requires a strictly increasing function (every epsilon below 1/2)")]
    NotStrictlyIncreasing,
    #[error("self-affinity requires constant matrix and epsilon schedules")]
    NonConstantSchedule,
    #[error("affine map {0} is degenerate: g{0} = 0")]
    DegenerateMap(usize),
    #[error("graph sample of rank {rank} exceeds the budget of {budget} points")]
    PointBudgetExceeded { rank: usize, budget: usize },
    #[error("graph sample is approximate; an exact sample is required")]
    ApproximateSample,
    #[error("could not find an exact digit expansion of {0} within {1} digits")]
    InexactEncoding(Rational, usize),
    #[error("invalid box-counting scales: {0}")]
    InvalidScales(String),
    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

pub type Result<T> = std::result::Result<T, Error>;
