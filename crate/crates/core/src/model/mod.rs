//! Regression data: the model matrix with its implicit intercept column,
//! the response, and the ground truth of generated instances.

mod csv_io;
mod generate;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use csv_io::{load_dataset, read_dataset, save_dataset, write_dataset};
pub use generate::{generate_instance, zero_count, X_RANGE};

/// `n` observations of `p` predictors, the first of which is the intercept.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    n: usize,
    p: usize,
    /// Row-major `n x p`.
    x: Vec<f64>,
    y: Vec<f64>,
}

impl Dataset {
    /// Builds a dataset from full model-matrix rows (intercept included).
    pub fn new(rows: Vec<Vec<f64>>, y: Vec<f64>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Dimension("dataset needs at least one observation".into()));
        }
        if y.len() != n {
            return Err(Error::Dimension(format!("{} response values for {n} rows", y.len())));
        }
        let p = rows[0].len();
        if p == 0 {
            return Err(Error::Dimension("model matrix has no columns".into()));
        }
        let mut x = Vec::with_capacity(n * p);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != p {
                return Err(Error::Dimension(format!("row {} has {} columns, expected {p}", i + 1, row.len())));
            }
            if row[0] != 1.0 {
                return Err(Error::Dimension(format!("row {} does not start with the intercept 1", i + 1)));
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::Dimension(format!("row {} has a non-finite entry", i + 1)));
            }
            x.extend(row);
        }
        if let Some(i) = y.iter().position(|v| !v.is_finite()) {
            return Err(Error::Dimension(format!("response {} is not finite", i + 1)));
        }
        Ok(Dataset { n, p, x, y })
    }

    /// Builds a dataset from predictor rows without the intercept column.
    pub fn from_predictors(predictors: Vec<Vec<f64>>, y: Vec<f64>) -> Result<Self> {
        let rows = predictors.into_iter().map(|r| std::iter::once(1.0).chain(r).collect()).collect();
        Dataset::new(rows, y)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn x(&self, i: usize, j: usize) -> f64 {
        self.x[i * self.p + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.x[i * self.p..(i + 1) * self.p]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.x.chunks_exact(self.p)
    }

    /// `y - X beta`.
    pub fn residuals(&self, beta: &[f64]) -> Vec<f64> {
        self.rows().zip(&self.y).map(|(row, y)| y - row.iter().zip(beta).map(|(a, b)| a * b).sum::<f64>()).collect()
    }

    /// Sum of absolute residuals of `beta`.
    pub fn total_bias(&self, beta: &[f64]) -> f64 {
        self.residuals(beta).iter().map(|r| r.abs()).sum()
    }
}

/// Ground-truth coefficients of a generated instance.
#[derive(Debug, Clone, PartialEq)]
pub struct TrueModel {
    pub beta: Vec<f64>,
    /// 0-based indices with nonzero coefficient.
    pub support: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct TrueModelFile {
    beta: Vec<f64>,
    support: Vec<usize>,
}

impl TrueModel {
    pub fn from_beta(beta: Vec<f64>) -> Self {
        let support = beta.iter().enumerate().filter(|(_, b)| **b != 0.0).map(|(j, _)| j).collect();
        TrueModel { beta, support }
    }

    /// JSON with 1-based support indices.
    pub fn to_json(&self) -> Result<String> {
        let file = TrueModelFile { beta: self.beta.clone(), support: self.support.iter().map(|j| j + 1).collect() };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: TrueModelFile = serde_json::from_str(text)?;
        if file.support.iter().any(|&j| j == 0 || j > file.beta.len()) {
            return Err(Error::Dimension("support index out of range".into()));
        }
        let model = TrueModel::from_beta(file.beta);
        let declared: Vec<usize> = file.support.iter().map(|j| j - 1).collect();
        if declared != model.support {
            return Err(Error::Dimension("support does not match the nonzero coefficients".into()));
        }
        Ok(model)
    }
}

/// Instance class `C(p, n)` plus the seed of one member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InstanceClass {
    pub p: usize,
    pub n: usize,
    pub seed: u64,
}

impl InstanceClass {
    pub fn new(p: usize, n: usize, seed: u64) -> Self {
        InstanceClass { p, n, seed }
    }

    pub fn label(&self) -> String {
        format!("C({},{})", self.p, self.n)
    }
}

impl fmt::Display for InstanceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} seed={}", self.label(), self.seed)
    }
}

/// Parses a class label such as `C(20,40)`; the seed is set to 0.
impl FromStr for InstanceClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("expected a class label like C(20,40), got {s:?}"));
        let inner = s.trim().strip_prefix("C(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let (p, n) = inner.split_once(',').ok_or_else(bad)?;
        let p = p.trim().parse().map_err(|_| bad())?;
        let n = n.trim().parse().map_err(|_| bad())?;
        Ok(InstanceClass { p, n, seed: 0 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_missing_intercept() {
        let err = Dataset::new(vec![vec![2.0, 1.0]], vec![0.0]).unwrap_err();
        assert!(matches!(err, Error::Dimension(_)));
        assert!(Dataset::new(vec![], vec![]).is_err());
        assert!(Dataset::from_predictors(vec![vec![f64::NAN]], vec![1.0]).is_err());
    }

    #[test]
    fn residuals_and_bias() {
        let d = Dataset::from_predictors(vec![vec![0.0], vec![1.0], vec![2.0]], vec![0.0, 1.0, 2.1]).unwrap();
        assert_eq!(d.p(), 2);
        let r = d.residuals(&[0.0, 1.0]);
        assert!((r[2] - 0.1).abs() < 1e-12);
        assert!((d.total_bias(&[0.0, 1.0]) - 0.1).abs() < 1e-12);
    }

    #[test]
    fn true_model_json_is_one_based() {
        let t = TrueModel::from_beta(vec![0.4, 0.0, 0.7]);
        assert_eq!(t.support, vec![0, 2]);
        let json = t.to_json().unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["support"], serde_json::json!([1, 3]));
        assert_eq!(TrueModel::from_json(&json).unwrap(), t);
    }

    #[test]
    fn class_label_parses() {
        let c: InstanceClass = "C(20, 40)".parse().unwrap();
        assert_eq!((c.p, c.n), (20, 40));
        assert_eq!(c.label(), "C(20,40)");
        assert!("D(1,2)".parse::<InstanceClass>().is_err());
    }
}
