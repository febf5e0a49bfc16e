//! Lexicographic epsilon-constraint enumeration.
//!
//! Starting from `k = p`, stage A minimizes the total bias with at most `k`
//! predictors; stage B then minimizes the predictor count among solutions
//! within `LEX_EPS` of that bias, so the emitted point is nondominated.
//! The next level is one below the count stage B achieved, which skips
//! cardinalities that carry no nondominated point.

use std::time::Instant;

use log::{debug, info};

use super::{nondominated, Frontier, FrontierPoint, FrontierStats, LEX_EPS};
use crate::error::{Error, Result};
use crate::formulation::{build_bomilp, lad_fit, BoundsVector, BsspModel};
use crate::milp::{solve_milp, MilpError, MilpSolution, MilpStatus};
use crate::model::Dataset;
use crate::SolveOptions;

pub(crate) struct Tally<'a> {
    pub stats: &'a mut FrontierStats,
}

impl Tally<'_> {
    pub fn run(
        &mut self,
        problem: &crate::milp::MilpProblem,
        node_limit: usize,
    ) -> std::result::Result<MilpSolution, MilpError> {
        self.stats.subproblems += 1;
        let out = solve_milp(problem, node_limit);
        match &out {
            Ok(sol) => self.stats.total_nodes += sol.nodes_explored,
            Err(MilpError::NodeLimit { limit, .. }) => self.stats.total_nodes += limit,
            Err(_) => {}
        }
        out
    }
}

/// Stage A then stage B at cardinality level `k`. The returned point's
/// coefficients are refitted on the chosen support.
pub(crate) fn lexicographic_point(
    d: &Dataset,
    model: &BsspModel,
    k: usize,
    node_limit: usize,
    tally: &mut Tally<'_>,
) -> Result<FrontierPoint> {
    let stage_a = tally.run(&model.goal_program(k), node_limit)?;
    if stage_a.status != MilpStatus::Optimal {
        return Err(Error::Infeasible(format!("bias minimization with at most {k} predictors")));
    }
    let stage_b = tally.run(&model.lexicographic_stage(k, stage_a.objective_value + LEX_EPS), node_limit)?;
    let x = if stage_b.status == MilpStatus::Optimal { &stage_b.x } else { &stage_a.x };
    let vars = model.decode(x);
    let point = FrontierPoint::from_indicators(d, &vars.beta_hat, &vars.r);
    if point.z2 == 0 {
        return Ok(point);
    }
    let fit = lad_fit(d, &point.support())?;
    if fit.z1 <= point.z1 {
        Ok(FrontierPoint { z1: fit.z1, beta: fit.beta, ..point })
    } else {
        Ok(point)
    }
}

/// Enumerates every nondominated point, including the empty model.
pub fn solve_frontier(d: &Dataset, b: &BoundsVector, opts: &SolveOptions) -> Result<Frontier> {
    let started = Instant::now();
    let model = build_bomilp(d, b, true)?;
    let mut stats = FrontierStats::default();
    let mut found = Vec::new();
    let mut k = d.p();
    while k >= 1 {
        let step = {
            let mut tally = Tally { stats: &mut stats };
            lexicographic_point(d, &model, k, opts.node_limit, &mut tally)
        };
        let point = match step {
            Ok(p) => p,
            Err(Error::Milp(source @ MilpError::NodeLimit { .. })) => {
                found.push(FrontierPoint::trivial(d));
                stats.wall_time = started.elapsed();
                stats.complete = false;
                let partial = Frontier { points: nondominated(found), stats };
                return Err(Error::IncompleteFrontier { partial: Box::new(partial), source });
            }
            Err(e) => return Err(e),
        };
        debug!("level k={k}: z1={} z2={}", point.z1, point.z2);
        let next = point.z2;
        found.push(point);
        if next == 0 {
            break;
        }
        k = next - 1;
    }
    found.push(FrontierPoint::trivial(d));
    stats.complete = true;
    stats.wall_time = started.elapsed();
    let points = nondominated(found);
    info!(
        "frontier: {} points, {} subproblems, {} nodes, {:.3}s",
        points.len(),
        stats.subproblems,
        stats.total_nodes,
        stats.wall_time.as_secs_f64()
    );
    Ok(Frontier { points, stats })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulation::{compute_bounds, median_bias_bound};

    #[test]
    fn toy_two_predictor_frontier() {
        let d = Dataset::from_predictors(vec![vec![0.0], vec![1.0], vec![2.0]], vec![0.0, 1.0, 2.1]).unwrap();
        let b = compute_bounds(&d).unwrap();
        let f = solve_frontier(&d, &b, &SolveOptions::default()).unwrap();
        f.check_invariants(2).unwrap();
        // Oracle (all three nonempty supports): {x1} -> 2.1 at the median,
        // {x2} -> 0.05 with slope 1.05, {x1, x2} -> 0.05 as well, so the
        // two-predictor level is dominated.
        let z = f.z_values();
        assert_eq!(z.len(), 2);
        assert!((z[0].0 - 3.1).abs() < 1e-9 && z[0].1 == 0);
        assert!((z[1].0 - 0.05).abs() < 1e-9 && z[1].1 == 1);
        assert!(f.points[1].active[1]);
        assert!(z[1].0 <= median_bias_bound(&d));
        assert!(f.stats.complete);
    }

    #[test]
    fn constant_response_stops_at_intercept() {
        let d = Dataset::from_predictors(
            vec![vec![3.0, 1.0], vec![-1.0, 4.0], vec![8.0, -2.0], vec![0.0, 5.0], vec![2.0, 2.0]],
            vec![4.0; 5],
        )
        .unwrap();
        let b = compute_bounds(&d).unwrap();
        let f = solve_frontier(&d, &b, &SolveOptions::default()).unwrap();
        let z = f.z_values();
        assert_eq!(z.len(), 2);
        assert_eq!(z[0], (20.0, 0));
        assert!(z[1].0.abs() < 1e-9 && z[1].1 == 1);
        assert!(f.points[1].active[0]);
    }

    #[test]
    fn node_limit_marks_incomplete() {
        let (d, _) = crate::model::generate_instance(&crate::model::InstanceClass::new(6, 18, 2)).unwrap();
        let b = compute_bounds(&d).unwrap();
        let opts = SolveOptions { node_limit: 1, ..SolveOptions::default() };
        match solve_frontier(&d, &b, &opts) {
            Err(Error::IncompleteFrontier { partial, .. }) => {
                assert!(!partial.stats.complete);
                assert!(partial.points.iter().any(|p| p.trivial));
            }
            other => panic!("expected an incomplete frontier, got {other:?}"),
        }
    }
}
