//! Single-scalarization baselines: a weighted sum of the two objectives and
//! the goal program at one cardinality level.

use super::epsilon::{lexicographic_point, Tally};
use super::{FrontierPoint, FrontierStats};
use crate::error::{Error, Result};
use crate::formulation::{build_bomilp, BoundsVector};
use crate::milp::MilpStatus;
use crate::model::Dataset;
use crate::SolveOptions;

/// `min z1 + lambda z2`. Only supported points can come out of this.
pub fn weighted_sum_baseline(d: &Dataset, b: &BoundsVector, lambda: f64, opts: &SolveOptions) -> Result<FrontierPoint> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::InvalidArgument(format!("lambda must be positive and finite, got {lambda}")));
    }
    let model = build_bomilp(d, b, opts.exclude_trivial)?;
    let mut stats = FrontierStats::default();
    let sol = Tally { stats: &mut stats }.run(&model.weighted_sum(lambda), opts.node_limit)?;
    if sol.status != MilpStatus::Optimal {
        return Err(Error::Infeasible(format!("weighted sum with lambda = {lambda}")));
    }
    let vars = model.decode(&sol.x);
    Ok(FrontierPoint::from_indicators(d, &vars.beta_hat, &vars.r))
}

/// `min z1 s.t. z2 <= k`. Without `lexicographic` the raw optimum is
/// returned, which may be weakly dominated; with it the count is minimized
/// in a second stage.
pub fn goal_programming_baseline(
    d: &Dataset,
    b: &BoundsVector,
    k: usize,
    lexicographic: bool,
    opts: &SolveOptions,
) -> Result<FrontierPoint> {
    if k == 0 || k > d.p() {
        return Err(Error::InvalidArgument(format!("k must be in 1..={}, got {k}", d.p())));
    }
    let model = build_bomilp(d, b, opts.exclude_trivial)?;
    let mut stats = FrontierStats::default();
    let mut tally = Tally { stats: &mut stats };
    if lexicographic {
        return lexicographic_point(d, &model, k, opts.node_limit, &mut tally);
    }
    let sol = tally.run(&model.goal_program(k), opts.node_limit)?;
    if sol.status != MilpStatus::Optimal {
        return Err(Error::Infeasible(format!("bias minimization with at most {k} predictors")));
    }
    let vars = model.decode(&sol.x);
    Ok(FrontierPoint::from_indicators(d, &vars.beta_hat, &vars.r))
}
