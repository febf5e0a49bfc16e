use thiserror::Error;

use crate::frontier::Frontier;
use crate::lp::LpError;
use crate::milp::MilpError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: u64, column: String, message: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("guard violated: {0}")]
    Guard(String),
    #[error("coefficient bound for predictor {predictor} is unbounded ({direction}); the design is degenerate")]
    DegenerateDesign { predictor: usize, direction: &'static str },
    #[error("subproblem unexpectedly infeasible: {0}")]
    Infeasible(String),
    #[error("frontier incomplete after {} points: {source}", partial.points.len())]
    IncompleteFrontier { partial: Box<Frontier>, source: MilpError },
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Milp(#[from] MilpError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
