//! Data-driven coefficient bounds.
//!
//! Every efficient solution has total absolute bias at most
//! `sum_i |y_i - median(y)|`: the intercept-only model at the median is
//! feasible with a single active predictor. Maximizing and minimizing each
//! coefficient over the linearized region
//!
//! ```text
//!   sum_i gamma_i <= sum_i |y_i - m|,   |y_i - x_i' beta| <= gamma_i
//! ```
//!
//! therefore gives valid `u_j` and `l_j`.

use rayon::prelude::*;

use super::BoundsVector;
use crate::error::{Error, Result};
use crate::lp::{solve_lp, LinearProgram, LpStatus, Relation, Sense, VarBounds};
use crate::model::Dataset;

/// Median; the mean of the two middle order statistics for even length.
pub fn median(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::Dimension("median of an empty response".into()));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mid = sorted.len() / 2;
    Ok(if sorted.len() % 2 == 1 { sorted[mid] } else { 0.5 * (sorted[mid - 1] + sorted[mid]) })
}

/// `sum_i |y_i - median(y)|`.
pub fn median_bias_bound(d: &Dataset) -> f64 {
    let m = median(d.y()).expect("datasets are never empty");
    d.y().iter().map(|y| (y - m).abs()).sum()
}

fn bound_lp(d: &Dataset, budget: f64, j: usize, sense: Sense) -> LinearProgram {
    let (p, n) = (d.p(), d.n());
    let mut objective = vec![0.0; p + n];
    objective[j] = 1.0;
    let mut lp = LinearProgram::new(sense, objective);
    for k in 0..p {
        lp.set_bounds(k, VarBounds::FREE);
    }
    let mut budget_row = vec![0.0; p + n];
    for g in &mut budget_row[p..] {
        *g = 1.0;
    }
    lp.add_constraint(budget_row, Relation::LessEq, budget);
    for (i, (row, &y)) in d.rows().zip(d.y()).enumerate() {
        let mut below = vec![0.0; p + n];
        let mut above = vec![0.0; p + n];
        for k in 0..p {
            below[k] = -row[k];
            above[k] = row[k];
        }
        below[p + i] = -1.0;
        above[p + i] = -1.0;
        lp.add_constraint(below, Relation::LessEq, -y);
        lp.add_constraint(above, Relation::LessEq, y);
    }
    lp
}

/// Solves the `2p` bound LPs.
pub fn compute_bounds(d: &Dataset) -> Result<BoundsVector> {
    let budget = median_bias_bound(d);
    let solved: Vec<(f64, f64)> = (0..d.p())
        .into_par_iter()
        .map(|j| {
            let hi = extreme(d, budget, j, Sense::Maximize)?;
            let lo = extreme(d, budget, j, Sense::Minimize)?;
            Ok((lo, hi.max(lo)))
        })
        .collect::<Result<_>>()?;
    let (lower, upper) = solved.into_iter().unzip();
    BoundsVector::new(lower, upper)
}

fn extreme(d: &Dataset, budget: f64, j: usize, sense: Sense) -> Result<f64> {
    let sol = solve_lp(&bound_lp(d, budget, j, sense))?;
    match sol.status {
        LpStatus::Optimal => Ok(sol.x[j]),
        LpStatus::Unbounded => Err(Error::DegenerateDesign {
            predictor: j + 1,
            direction: if sense == Sense::Maximize { "upper" } else { "lower" },
        }),
        LpStatus::Infeasible => Err(Error::Infeasible(format!("bound LP for predictor {}", j + 1))),
    }
}
