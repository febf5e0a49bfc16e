//! Best-first branch-and-bound for linear programs with binary variables.
//!
//! Nodes are ordered by the LP bound of their parent (FIFO among equal
//! bounds). The branching variable is the most fractional binary, and the
//! two children fix it to 0 and to 1. There are no cuts or primal
//! heuristics. When an LP relaxation is integral, the binaries are rounded
//! and the continuous part is re-solved with them fixed so the incumbent
//! carries exact 0/1 values.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use thiserror::Error;

use crate::lp::{self, LinearProgram, LpError, LpStatus, Sense, VarBounds};

/// Binary values within this distance of 0 or 1 count as integral.
pub const INT_TOL: f64 = 1e-6;
/// A node is pruned when its bound is no better than `incumbent - PRUNE_TOL`.
pub const PRUNE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct MilpProblem {
    pub lp: LinearProgram,
    pub binary_vars: Vec<usize>,
}

impl MilpProblem {
    pub fn new(lp: LinearProgram, binary_vars: Vec<usize>) -> Self {
        MilpProblem { lp, binary_vars }
    }

    pub fn validate(&self) -> Result<(), MilpError> {
        self.lp.validate()?;
        for &j in &self.binary_vars {
            let b = self
                .lp
                .var_bounds
                .get(j)
                .ok_or_else(|| MilpError::InvalidInput(format!("binary index {j} out of range")))?;
            if b.lower < 0.0 || b.upper > 1.0 {
                return Err(MilpError::InvalidInput(format!(
                    "binary x{} has bounds [{}, {}] outside [0, 1]",
                    j + 1,
                    b.lower,
                    b.upper
                )));
            }
        }
        Ok(())
    }

    /// Text LP file of the problem, with the binaries listed.
    pub fn to_lp_file(&self) -> String {
        lp::lpfile::write_lp(&self.lp, &self.binary_vars)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MilpStatus {
    Optimal,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MilpSolution {
    pub status: MilpStatus,
    pub x: Vec<f64>,
    pub objective_value: f64,
    pub nodes_explored: usize,
    /// Objective of the root LP relaxation (`-inf`/`+inf` when unavailable).
    pub root_bound: f64,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MilpError {
    #[error("invalid mixed-integer program: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("LP relaxation is unbounded")]
    Unbounded,
    #[error("node limit of {limit} reached")]
    NodeLimit { limit: usize, incumbent: Option<Box<MilpSolution>> },
}

struct Node {
    /// Parent LP bound in minimization form.
    bound: f64,
    seq: u64,
    fixings: Vec<(usize, f64)>,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Node {}
impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Node {
    // BinaryHeap is a max-heap: the smallest bound, then the oldest node, is "greatest".
    fn cmp(&self, other: &Self) -> Ordering {
        other.bound.total_cmp(&self.bound).then_with(|| other.seq.cmp(&self.seq))
    }
}

fn with_fixings(base: &LinearProgram, fixings: &[(usize, f64)]) -> LinearProgram {
    let mut lp = base.clone();
    for &(j, v) in fixings {
        lp.var_bounds[j] = VarBounds::fixed(v);
    }
    lp
}

/// Solves `problem` to global optimality, exploring at most `node_limit`
/// branch-and-bound nodes.
pub fn solve_milp(problem: &MilpProblem, node_limit: usize) -> Result<MilpSolution, MilpError> {
    problem.validate()?;
    if node_limit == 0 {
        return Err(MilpError::InvalidInput("node limit must be at least 1".into()));
    }
    let sign = match problem.lp.sense {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    };

    let mut open = BinaryHeap::new();
    let mut seq = 0u64;
    open.push(Node { bound: f64::NEG_INFINITY, seq, fixings: Vec::new() });

    // Incumbent objective kept in minimization form.
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut nodes = 0usize;
    let mut root_bound = sign * f64::NEG_INFINITY;

    while let Some(node) = open.pop() {
        let cutoff = best.as_ref().map_or(f64::INFINITY, |(v, _)| v - PRUNE_TOL);
        if node.bound >= cutoff {
            continue;
        }
        if nodes >= node_limit {
            let incumbent = best.map(|(v, x)| {
                Box::new(MilpSolution {
                    status: MilpStatus::Optimal,
                    x,
                    objective_value: sign * v,
                    nodes_explored: nodes,
                    root_bound,
                })
            });
            return Err(MilpError::NodeLimit { limit: node_limit, incumbent });
        }
        nodes += 1;

        let relaxed = lp::solve_lp(&with_fixings(&problem.lp, &node.fixings))?;
        match relaxed.status {
            LpStatus::Infeasible => {
                if nodes == 1 {
                    root_bound = sign * f64::INFINITY;
                }
                continue;
            }
            LpStatus::Unbounded => return Err(MilpError::Unbounded),
            LpStatus::Optimal => {}
        }
        let value = sign * relaxed.objective_value;
        if nodes == 1 {
            root_bound = relaxed.objective_value;
        }
        if value >= cutoff {
            continue;
        }

        let mut branch: Option<(usize, f64)> = None;
        for &j in &problem.binary_vars {
            let v = relaxed.x[j];
            let frac = (v - v.round()).abs();
            if frac > INT_TOL && branch.is_none_or(|(bj, bf)| frac > bf || (frac == bf && j < bj)) {
                branch = Some((j, frac));
            }
        }

        match branch {
            None => {
                let rounded: Vec<(usize, f64)> =
                    problem.binary_vars.iter().map(|&j| (j, relaxed.x[j].round().clamp(0.0, 1.0))).collect();
                let polished = lp::solve_lp(&with_fixings(&problem.lp, &rounded))?;
                let (v, x) = if polished.status == LpStatus::Optimal {
                    (sign * polished.objective_value, polished.x)
                } else {
                    (value, relaxed.x)
                };
                if best.as_ref().is_none_or(|(b, _)| v < *b) {
                    best = Some((v, x));
                }
            }
            Some((j, _)) => {
                for fix in [0.0, 1.0] {
                    let mut fixings = node.fixings.clone();
                    fixings.push((j, fix));
                    seq += 1;
                    open.push(Node { bound: value, seq, fixings });
                }
            }
        }
    }

    Ok(match best {
        Some((v, x)) => MilpSolution {
            status: MilpStatus::Optimal,
            x,
            objective_value: sign * v,
            nodes_explored: nodes,
            root_bound,
        },
        None => MilpSolution {
            status: MilpStatus::Infeasible,
            x: Vec::new(),
            objective_value: sign * f64::INFINITY,
            nodes_explored: nodes,
            root_bound,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::Relation;

    #[test]
    fn single_binary() {
        let mut lp = LinearProgram::new(Sense::Minimize, vec![-1.0]);
        lp.set_bounds(0, VarBounds::BINARY);
        let sol = solve_milp(&MilpProblem::new(lp, vec![0]), 10).unwrap();
        assert_eq!(sol.status, MilpStatus::Optimal);
        assert_eq!(sol.x, vec![1.0]);
        assert_eq!(sol.objective_value, -1.0);
    }

    #[test]
    fn rounding_forces_one_up() {
        let mut lp = LinearProgram::new(Sense::Minimize, vec![1.0, 1.0]);
        lp.set_bounds(0, VarBounds::BINARY).set_bounds(1, VarBounds::BINARY);
        lp.add_constraint(vec![1.0, 1.0], Relation::GreaterEq, 0.5);
        let sol = solve_milp(&MilpProblem::new(lp, vec![0, 1]), 100).unwrap();
        assert!((sol.objective_value - 1.0).abs() < 1e-9);
        assert!(sol.root_bound <= sol.objective_value + 1e-9);
        assert!(sol.nodes_explored <= 7);
    }

    #[test]
    fn infeasible_integer_program() {
        // x1 + x2 = 1.5 with both binary has no integer point.
        let mut lp = LinearProgram::new(Sense::Minimize, vec![1.0, 1.0]);
        lp.set_bounds(0, VarBounds::BINARY).set_bounds(1, VarBounds::BINARY);
        lp.add_constraint(vec![1.0, 1.0], Relation::Equal, 1.5);
        let sol = solve_milp(&MilpProblem::new(lp, vec![0, 1]), 100).unwrap();
        assert_eq!(sol.status, MilpStatus::Infeasible);
    }

    #[test]
    fn node_limit_carries_incumbent() {
        // max sum x_j s.t. 2 sum x_j <= 5 over 6 binaries; the root is fractional.
        let mut lp = LinearProgram::new(Sense::Maximize, vec![1.0; 6]);
        for j in 0..6 {
            lp.set_bounds(j, VarBounds::BINARY);
        }
        lp.add_constraint(vec![2.0; 6], Relation::LessEq, 5.0);
        let err = solve_milp(&MilpProblem::new(lp, (0..6).collect()), 1).unwrap_err();
        assert!(matches!(err, MilpError::NodeLimit { limit: 1, .. }));
    }

    #[test]
    fn rejects_wide_binary_bounds() {
        let lp = LinearProgram::new(Sense::Minimize, vec![1.0]);
        let err = solve_milp(&MilpProblem::new(lp, vec![0]), 10).unwrap_err();
        assert!(matches!(err, MilpError::InvalidInput(_)));
    }
}
