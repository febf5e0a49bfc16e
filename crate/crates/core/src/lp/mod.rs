//! Linear programming: problem representation, a dense bounded-variable
//! revised simplex solver and an LP-file writer.
//!
//! Every problem is stored in the natural modelling form
//!
//! ```text
//!    min/max  c'x
//!    s.t.     a_i'x  (<= | >= | =)  b_i     i = 1..m
//!             l_j <= x_j <= u_j             j = 1..n   (l_j, u_j may be infinite)
//! ```
//!
//! and converted to equality form with one bounded slack per row inside the
//! solver.

pub mod audit;
pub mod lpfile;
mod simplex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use simplex::solve_lp;

/// Primal feasibility tolerance used for every Optimal return.
pub const FEAS_TOL: f64 = 1e-7;
/// Reduced-cost optimality tolerance.
pub const OPT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    LessEq,
    GreaterEq,
    Equal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub coeffs: Vec<f64>,
    pub relation: Relation,
    pub rhs: f64,
}

impl Constraint {
    pub fn activity(&self, x: &[f64]) -> f64 {
        self.coeffs.iter().zip(x).map(|(a, v)| a * v).sum()
    }

    /// Amount by which `x` violates this row (0 when satisfied).
    pub fn violation(&self, x: &[f64]) -> f64 {
        let lhs = self.activity(x);
        match self.relation {
            Relation::LessEq => (lhs - self.rhs).max(0.0),
            Relation::GreaterEq => (self.rhs - lhs).max(0.0),
            Relation::Equal => (lhs - self.rhs).abs(),
        }
    }
}

/// Lower/upper bound pair for a single variable. Infinite values are allowed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarBounds {
    pub lower: f64,
    pub upper: f64,
}

impl VarBounds {
    pub const NONNEGATIVE: VarBounds = VarBounds { lower: 0.0, upper: f64::INFINITY };
    pub const FREE: VarBounds = VarBounds { lower: f64::NEG_INFINITY, upper: f64::INFINITY };
    pub const BINARY: VarBounds = VarBounds { lower: 0.0, upper: 1.0 };

    pub fn new(lower: f64, upper: f64) -> Self {
        VarBounds { lower, upper }
    }

    pub fn fixed(value: f64) -> Self {
        VarBounds { lower: value, upper: value }
    }

    pub fn violation(&self, v: f64) -> f64 {
        (self.lower - v).max(v - self.upper).max(0.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub sense: Sense,
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
    pub var_bounds: Vec<VarBounds>,
}

impl LinearProgram {
    /// Creates a program with no rows and every variable in `[0, +inf)`.
    pub fn new(sense: Sense, objective: Vec<f64>) -> Self {
        let num_vars = objective.len();
        LinearProgram {
            num_vars,
            sense,
            objective,
            constraints: Vec::new(),
            var_bounds: vec![VarBounds::NONNEGATIVE; num_vars],
        }
    }

    pub fn add_constraint(&mut self, coeffs: Vec<f64>, relation: Relation, rhs: f64) -> &mut Self {
        self.constraints.push(Constraint { coeffs, relation, rhs });
        self
    }

    pub fn set_bounds(&mut self, var: usize, bounds: VarBounds) -> &mut Self {
        self.var_bounds[var] = bounds;
        self
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Largest row or bound violation of `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let rows = self.constraints.iter().map(|c| c.violation(x));
        let bounds = self.var_bounds.iter().zip(x).map(|(b, &v)| b.violation(v));
        rows.chain(bounds).fold(0.0, f64::max)
    }

    pub fn validate(&self) -> Result<(), LpError> {
        if self.objective.len() != self.num_vars || self.var_bounds.len() != self.num_vars {
            return Err(LpError::InvalidInput(format!(
                "objective has {} entries and bounds {} entries for {} variables",
                self.objective.len(),
                self.var_bounds.len(),
                self.num_vars
            )));
        }
        if let Some(j) = self.objective.iter().position(|c| !c.is_finite()) {
            return Err(LpError::InvalidInput(format!("objective coefficient of x{} is not finite", j + 1)));
        }
        for (i, row) in self.constraints.iter().enumerate() {
            if row.coeffs.len() != self.num_vars {
                return Err(LpError::InvalidInput(format!(
                    "row c{} has {} coefficients, expected {}",
                    i + 1,
                    row.coeffs.len(),
                    self.num_vars
                )));
            }
            if !row.rhs.is_finite() || row.coeffs.iter().any(|a| !a.is_finite()) {
                return Err(LpError::InvalidInput(format!("row c{} has a non-finite entry", i + 1)));
            }
        }
        for (j, b) in self.var_bounds.iter().enumerate() {
            if b.lower.is_nan() || b.upper.is_nan() || b.lower > b.upper {
                return Err(LpError::InvalidInput(format!("x{} has invalid bounds [{}, {}]", j + 1, b.lower, b.upper)));
            }
            if b.lower == f64::INFINITY || b.upper == f64::NEG_INFINITY {
                return Err(LpError::InvalidInput(format!("x{} has an empty bound interval", j + 1)));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Primal values. Meaningful only when `status` is Optimal.
    pub x: Vec<f64>,
    pub objective_value: f64,
    pub iteration_count: usize,
    /// Row prices of the final basis, one per constraint, in the sense of
    /// the original objective: `c - A'y` is the reduced-cost vector.
    pub duals: Vec<f64>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("invalid linear program: {0}")]
    InvalidInput(String),
    #[error("simplex iteration limit of {0} reached")]
    IterationLimit(usize),
    #[error("numerical failure: {0}")]
    Numerical(String),
}
