//! The bi-objective mixed binary program for best subset selection.
//!
//! Variables are laid out as `beta_1..beta_p, gamma_1..gamma_n, r_1..r_p`:
//!
//! ```text
//!   min { sum_i gamma_i , sum_j r_j }
//!   s.t.  r_j l_j <= beta_j <= r_j u_j                 j = 1..p
//!         y_i - x_i' beta <= gamma_i                   i = 1..n
//!         x_i' beta - y_i <= gamma_i                   i = 1..n
//!         r binary, gamma >= 0
//!         sum_j r_j >= 1                               (optional)
//! ```
//!
//! The two objectives are kept as separate vectors; the scalarized
//! subproblems are produced on demand.

mod bounds;
mod lad;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{LinearProgram, Relation, Sense, VarBounds};
use crate::milp::MilpProblem;
use crate::model::Dataset;

pub use bounds::{compute_bounds, median, median_bias_bound};
pub use lad::{lad_fit, LadFit};

/// Per-coefficient lower and upper bounds `l`, `u`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundsVector {
    #[serde(rename = "l")]
    pub lower: Vec<f64>,
    #[serde(rename = "u")]
    pub upper: Vec<f64>,
}

impl BoundsVector {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        let b = BoundsVector { lower, upper };
        b.validate(b.lower.len())?;
        Ok(b)
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    pub fn contains(&self, beta: &[f64], tol: f64) -> bool {
        beta.len() == self.len()
            && beta.iter().zip(self.lower.iter().zip(&self.upper)).all(|(b, (l, u))| *b >= l - tol && *b <= u + tol)
    }

    pub fn validate(&self, p: usize) -> Result<()> {
        if self.lower.len() != p || self.upper.len() != p {
            return Err(Error::Dimension(format!(
                "bounds have {}/{} entries for {p} predictors",
                self.lower.len(),
                self.upper.len()
            )));
        }
        for (j, (l, u)) in self.lower.iter().zip(&self.upper).enumerate() {
            if !l.is_finite() || !u.is_finite() || l > u {
                return Err(Error::InvalidArgument(format!("invalid bounds [{l}, {u}] for predictor {}", j + 1)));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let b: BoundsVector = serde_json::from_str(text)?;
        b.validate(b.lower.len())?;
        Ok(b)
    }
}

/// Values of the decision variables at one solution.
#[derive(Debug, Clone, PartialEq)]
pub struct BsspVariables {
    pub beta_hat: Vec<f64>,
    pub gamma: Vec<f64>,
    pub r: Vec<f64>,
}

/// The constraint system with both objective vectors.
#[derive(Debug, Clone)]
pub struct BsspModel {
    p: usize,
    n: usize,
    /// Constraint system with the total-bias objective installed.
    base: MilpProblem,
    /// Total absolute bias `sum gamma_i`.
    pub z1: Vec<f64>,
    /// Predictor count `sum r_j`.
    pub z2: Vec<f64>,
}

/// Builds the bi-objective program for `d` with coefficient bounds `b`.
/// With `exclude_trivial` the row `sum r_j >= 1` is appended.
pub fn build_bomilp(d: &Dataset, b: &BoundsVector, exclude_trivial: bool) -> Result<BsspModel> {
    let (p, n) = (d.p(), d.n());
    b.validate(p)?;
    let nv = 2 * p + n;
    let beta = |j: usize| j;
    let gamma = |i: usize| p + i;
    let ind = |j: usize| p + n + j;

    let mut z1 = vec![0.0; nv];
    let mut z2 = vec![0.0; nv];
    for i in 0..n {
        z1[gamma(i)] = 1.0;
    }
    for j in 0..p {
        z2[ind(j)] = 1.0;
    }

    let mut lp = LinearProgram::new(Sense::Minimize, z1.clone());
    for j in 0..p {
        let (l, u) = (b.lower[j], b.upper[j]);
        lp.set_bounds(beta(j), VarBounds::new(l.min(0.0), u.max(0.0)));
        lp.set_bounds(ind(j), VarBounds::BINARY);

        let mut upper_row = vec![0.0; nv];
        upper_row[beta(j)] = 1.0;
        upper_row[ind(j)] = -u;
        lp.add_constraint(upper_row, Relation::LessEq, 0.0);

        let mut lower_row = vec![0.0; nv];
        lower_row[beta(j)] = -1.0;
        lower_row[ind(j)] = l;
        lp.add_constraint(lower_row, Relation::LessEq, 0.0);
    }
    for (i, (row, &y)) in d.rows().zip(d.y()).enumerate() {
        let mut below = vec![0.0; nv];
        let mut above = vec![0.0; nv];
        for j in 0..p {
            below[beta(j)] = -row[j];
            above[beta(j)] = row[j];
        }
        below[gamma(i)] = -1.0;
        above[gamma(i)] = -1.0;
        lp.add_constraint(below, Relation::LessEq, -y);
        lp.add_constraint(above, Relation::LessEq, y);
    }
    if exclude_trivial {
        lp.add_constraint(z2.clone(), Relation::GreaterEq, 1.0);
    }

    let binaries = (0..p).map(ind).collect();
    Ok(BsspModel { p, n, base: MilpProblem::new(lp, binaries), z1, z2 })
}

impl BsspModel {
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_vars(&self) -> usize {
        2 * self.p + self.n
    }

    pub fn beta_var(&self, j: usize) -> usize {
        j
    }

    pub fn gamma_var(&self, i: usize) -> usize {
        self.p + i
    }

    pub fn indicator_var(&self, j: usize) -> usize {
        self.p + self.n + j
    }

    /// The constraint system with the given objective (minimized).
    pub fn with_objective(&self, objective: Vec<f64>) -> MilpProblem {
        let mut m = self.base.clone();
        m.lp.objective = objective;
        m
    }

    /// `min z1  s.t.  z2 <= k`.
    pub fn goal_program(&self, k: usize) -> MilpProblem {
        let mut m = self.with_objective(self.z1.clone());
        m.lp.add_constraint(self.z2.clone(), Relation::LessEq, k as f64);
        m
    }

    /// `min z2  s.t.  z1 <= z1_cap, z2 <= k`.
    pub fn lexicographic_stage(&self, k: usize, z1_cap: f64) -> MilpProblem {
        let mut m = self.with_objective(self.z2.clone());
        m.lp.add_constraint(self.z1.clone(), Relation::LessEq, z1_cap);
        m.lp.add_constraint(self.z2.clone(), Relation::LessEq, k as f64);
        m
    }

    /// `min z1 + lambda z2`.
    pub fn weighted_sum(&self, lambda: f64) -> MilpProblem {
        let objective = self.z1.iter().zip(&self.z2).map(|(a, b)| a + lambda * b).collect();
        self.with_objective(objective)
    }

    pub fn decode(&self, x: &[f64]) -> BsspVariables {
        let (p, n) = (self.p, self.n);
        BsspVariables { beta_hat: x[..p].to_vec(), gamma: x[p..p + n].to_vec(), r: x[p + n..2 * p + n].to_vec() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::{solve_lp, LpStatus};
    use crate::milp::solve_milp;

    fn toy() -> Dataset {
        Dataset::from_predictors(vec![vec![0.0], vec![1.0], vec![2.0]], vec![0.0, 1.0, 2.1]).unwrap()
    }

    #[test]
    fn dimension_bookkeeping() {
        let d = toy();
        let b = compute_bounds(&d).unwrap();
        let with_cut = build_bomilp(&d, &b, true).unwrap();
        let without = build_bomilp(&d, &b, false).unwrap();
        assert_eq!(with_cut.num_vars(), 7);
        assert_eq!(with_cut.with_objective(with_cut.z1.clone()).lp.constraints.len(), 2 * 2 + 2 * 3 + 1);
        assert_eq!(without.with_objective(without.z1.clone()).lp.constraints.len(), 2 * 2 + 2 * 3);
        assert_eq!(with_cut.with_objective(vec![0.0; 7]).binary_vars, vec![5, 6]);
    }

    #[test]
    fn inactive_indicator_pins_coefficient() {
        let d = toy();
        let b = compute_bounds(&d).unwrap();
        let model = build_bomilp(&d, &b, false).unwrap();
        for j in 0..2 {
            for sense in [Sense::Maximize, Sense::Minimize] {
                let mut m = model.with_objective(vec![0.0; 7]);
                m.lp.objective[model.beta_var(j)] = 1.0;
                m.lp.sense = sense;
                for jj in 0..2 {
                    m.lp.var_bounds[model.indicator_var(jj)] = VarBounds::fixed(0.0);
                }
                let sol = solve_lp(&m.lp).unwrap();
                assert_eq!(sol.status, LpStatus::Optimal);
                assert!(sol.objective_value.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn full_model_matches_lad() {
        let d = toy();
        let b = compute_bounds(&d).unwrap();
        let model = build_bomilp(&d, &b, true).unwrap();
        let mut m = model.with_objective(model.z1.clone());
        for j in 0..2 {
            m.lp.var_bounds[model.indicator_var(j)] = VarBounds::fixed(1.0);
        }
        let sol = solve_milp(&m, 10).unwrap();
        let fit = lad_fit(&d, &[0, 1]).unwrap();
        assert!((sol.objective_value - fit.z1).abs() < 1e-9);
        let vars = model.decode(&sol.x);
        for (i, g) in vars.gamma.iter().enumerate() {
            assert!((g - d.residuals(&vars.beta_hat)[i].abs()).abs() < 1e-6);
        }
    }

    #[test]
    fn bounds_json_schema() {
        let b = BoundsVector::new(vec![-1.0, 0.5], vec![2.0, 0.75]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&b.to_json().unwrap()).unwrap();
        assert_eq!(v["l"], serde_json::json!([-1.0, 0.5]));
        assert_eq!(v["u"], serde_json::json!([2.0, 0.75]));
        assert_eq!(BoundsVector::from_json(&b.to_json().unwrap()).unwrap(), b);
        assert!(BoundsVector::new(vec![1.0], vec![0.0]).is_err());
        assert!(BoundsVector::from_json(r#"{"l":[0.0],"u":[1.0,2.0]}"#).is_err());
    }
}
