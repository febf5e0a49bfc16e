//! Exact bi-objective best subset selection for least-absolute-deviation
//! linear regression.
//!
//! The two objectives are the total absolute residual of the fit and the
//! number of active predictors. The crate builds the bi-objective mixed
//! binary program linking coefficients to activity indicators through
//! data-driven coefficient bounds, enumerates its complete nondominated
//! frontier with a lexicographic epsilon-constraint loop, classifies the
//! frontier points by supportedness, and exposes the weighted-sum and
//! goal-programming scalarizations for comparison.
//!
//! Everything is solved with the crate's own dense simplex ([`lp`]) and
//! branch-and-bound ([`milp`]) implementations.
//!
//! ```
//! use pareto_subset::{compute_bounds, solve_frontier, Dataset, SolveOptions};
//!
//! let d = Dataset::from_predictors(vec![vec![0.0], vec![1.0], vec![2.0]], vec![0.0, 1.0, 2.1]).unwrap();
//! let b = compute_bounds(&d).unwrap();
//! let f = solve_frontier(&d, &b, &SolveOptions::default()).unwrap();
//! assert_eq!(f.len(), 2);
//! ```

pub mod error;
pub mod formulation;
pub mod frontier;
pub mod lp;
pub mod milp;
pub mod model;

pub use error::{Error, Result};
pub use formulation::{build_bomilp, compute_bounds, lad_fit, median_bias_bound, BoundsVector, BsspModel};
pub use frontier::{
    brute_force_frontier, classify_points, goal_programming_baseline, ideal_point, select_ideal, select_ideal_among,
    solve_frontier, weighted_sum_baseline, DistanceMetric, Frontier, FrontierPoint, FrontierStats, PointClass,
};
pub use milp::{solve_milp, MilpProblem, MilpSolution, MilpStatus};
pub use model::{generate_instance, Dataset, InstanceClass, TrueModel};

/// Settings shared by the frontier routines and the baselines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Branch-and-bound node budget per single-objective subproblem.
    pub node_limit: usize,
    /// Add `sum r_j >= 1` to the baselines' programs.
    pub exclude_trivial: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { node_limit: 100_000, exclude_trivial: true }
    }
}
