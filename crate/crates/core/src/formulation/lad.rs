use crate::error::{Error, Result};
use crate::lp::{solve_lp, LinearProgram, LpStatus, Relation, Sense, VarBounds};
use crate::model::Dataset;

#[derive(Debug, Clone, PartialEq)]
pub struct LadFit {
    /// Full-length coefficients, zero outside the support.
    pub beta: Vec<f64>,
    /// Total absolute residual of `beta`.
    pub z1: f64,
}

/// Least-absolute-deviations fit restricted to the 0-based `support`.
pub fn lad_fit(d: &Dataset, support: &[usize]) -> Result<LadFit> {
    if support.is_empty() {
        return Err(Error::InvalidArgument("LAD support must be nonempty".into()));
    }
    if let Some(&j) = support.iter().find(|&&j| j >= d.p()) {
        return Err(Error::InvalidArgument(format!("support index {j} out of range for p = {}", d.p())));
    }
    let (s, n) = (support.len(), d.n());
    let mut objective = vec![0.0; s + n];
    for g in &mut objective[s..] {
        *g = 1.0;
    }
    let mut lp = LinearProgram::new(Sense::Minimize, objective);
    for k in 0..s {
        lp.set_bounds(k, VarBounds::FREE);
    }
    for (i, (row, &y)) in d.rows().zip(d.y()).enumerate() {
        let mut below = vec![0.0; s + n];
        let mut above = vec![0.0; s + n];
        for (k, &j) in support.iter().enumerate() {
            below[k] = -row[j];
            above[k] = row[j];
        }
        below[s + i] = -1.0;
        above[s + i] = -1.0;
        lp.add_constraint(below, Relation::LessEq, -y);
        lp.add_constraint(above, Relation::LessEq, y);
    }
    let sol = solve_lp(&lp)?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Infeasible(format!("LAD fit returned {:?}", sol.status)));
    }
    let mut beta = vec![0.0; d.p()];
    for (k, &j) in support.iter().enumerate() {
        beta[j] = sol.x[k];
    }
    let z1 = d.total_bias(&beta);
    Ok(LadFit { beta, z1 })
}
