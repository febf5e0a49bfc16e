//! Optional process-wide certificate checking of every Optimal LP return.
//!
//! When enabled, each Optimal solution is checked against the original
//! program data: primal row/bound violation, and the gap between the primal
//! objective and the dual objective rebuilt from the reported row prices.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;

use super::{LinearProgram, LpSolution, Relation, Sense};

/// Reduced costs or row-price signs smaller than this are treated as zero.
const DUAL_TOL: f64 = 1e-7;

static ENABLED: AtomicBool = AtomicBool::new(false);
static STATS: Mutex<AuditStats> = Mutex::new(AuditStats::new());

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditStats {
    pub optimal_solves: usize,
    pub max_primal_violation: f64,
    /// Largest `|primal - dual| / (1 + |primal|)`.
    pub max_relative_dual_gap: f64,
    /// Solves whose row prices were not dual feasible.
    pub dual_infeasible: usize,
}

impl AuditStats {
    const fn new() -> Self {
        AuditStats { optimal_solves: 0, max_primal_violation: 0.0, max_relative_dual_gap: 0.0, dual_infeasible: 0 }
    }
}

pub fn enable() {
    ENABLED.store(true, Ordering::SeqCst);
}

pub fn snapshot() -> AuditStats {
    *STATS.lock().unwrap_or_else(|e| e.into_inner())
}

pub(crate) fn record(lp: &LinearProgram, sol: &LpSolution) {
    if !ENABLED.load(Ordering::Relaxed) {
        return;
    }
    let violation = lp.max_violation(&sol.x);
    let dual = dual_objective(lp, &sol.duals);
    let mut stats = STATS.lock().unwrap_or_else(|e| e.into_inner());
    stats.optimal_solves += 1;
    stats.max_primal_violation = stats.max_primal_violation.max(violation);
    match dual {
        Some(d) => {
            let gap = (d - sol.objective_value).abs() / (1.0 + sol.objective_value.abs());
            stats.max_relative_dual_gap = stats.max_relative_dual_gap.max(gap);
        }
        None => stats.dual_infeasible += 1,
    }
}

/// Lagrangian dual objective of `lp` at row prices `duals`.
///
/// Returns `None` when the prices are not dual feasible (a row price with
/// the wrong sign, or a nonzero reduced cost on an infinite bound).
pub fn dual_objective(lp: &LinearProgram, duals: &[f64]) -> Option<f64> {
    if duals.len() != lp.constraints.len() {
        return None;
    }
    let sign = match lp.sense {
        Sense::Minimize => 1.0,
        Sense::Maximize => -1.0,
    };
    let mut reduced: Vec<f64> = lp.objective.iter().map(|c| sign * c).collect();
    let mut value = 0.0;
    for (row, &price) in lp.constraints.iter().zip(duals) {
        let y = sign * price;
        let ok = match row.relation {
            Relation::LessEq => y <= DUAL_TOL,
            Relation::GreaterEq => y >= -DUAL_TOL,
            Relation::Equal => true,
        };
        if !ok {
            return None;
        }
        value += y * row.rhs;
        for (d, a) in reduced.iter_mut().zip(&row.coeffs) {
            *d -= y * a;
        }
    }
    for (d, b) in reduced.iter().zip(&lp.var_bounds) {
        let bound = if *d > 0.0 { b.lower } else { b.upper };
        if bound.is_finite() {
            value += d * bound;
        } else if d.abs() > DUAL_TOL {
            return None;
        }
    }
    Some(sign * value)
}
