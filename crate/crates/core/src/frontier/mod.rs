//! Nondominated frontier of (total absolute bias, predictor count).

mod baseline;
mod classify;
mod epsilon;
mod oracle;
mod select;

use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::Dataset;

pub use baseline::{goal_programming_baseline, weighted_sum_baseline};
pub use classify::classify_points;
pub use epsilon::solve_frontier;
pub use oracle::{brute_force_frontier, MAX_ORACLE_PREDICTORS};
pub use select::{ideal_point, select_ideal, select_ideal_among, DistanceMetric};

/// Two points whose total bias differs by no more than this are treated as
/// equal when filtering dominated points.
pub const DEDUP_TOL: f64 = 1e-6;
/// Coefficients at or below this magnitude count as inactive.
pub const ACTIVE_TOL: f64 = 1e-6;
/// Slack on the bias cap of the lexicographic second stage.
pub const LEX_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointClass {
    ExtremeSupported,
    NonExtremeSupported,
    Unsupported,
}

impl PointClass {
    pub fn is_supported(self) -> bool {
        self != PointClass::Unsupported
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PointClass::ExtremeSupported => "extreme_supported",
            PointClass::NonExtremeSupported => "non_extreme_supported",
            PointClass::Unsupported => "unsupported",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrontierPoint {
    /// Total absolute bias.
    pub z1: f64,
    /// Number of active predictors.
    pub z2: usize,
    pub beta: Vec<f64>,
    /// Activity indicators of the solution.
    pub active: Vec<bool>,
    /// Supportedness; `None` until classified.
    #[serde(default)]
    pub class: Option<PointClass>,
    /// The empty model `(sum |y_i|, 0)`.
    #[serde(default)]
    pub trivial: bool,
}

impl FrontierPoint {
    /// The empty model.
    pub fn trivial(d: &Dataset) -> Self {
        FrontierPoint {
            z1: d.y().iter().map(|y| y.abs()).sum(),
            z2: 0,
            beta: vec![0.0; d.p()],
            active: vec![false; d.p()],
            class: None,
            trivial: true,
        }
    }

    /// Builds a point from raw coefficients and indicator values. Inactive
    /// coefficients are zeroed and the bias is recomputed from the data.
    pub fn from_indicators(d: &Dataset, beta: &[f64], r: &[f64]) -> Self {
        let active: Vec<bool> = r.iter().map(|&v| v > 0.5).collect();
        let beta: Vec<f64> = beta.iter().zip(&active).map(|(&b, &a)| if a { b } else { 0.0 }).collect();
        let z2 = active.iter().filter(|&&a| a).count();
        FrontierPoint { z1: d.total_bias(&beta), z2, beta, active, class: None, trivial: z2 == 0 }
    }

    /// Builds a point whose activity pattern is read off the coefficients.
    pub fn from_coefficients(d: &Dataset, beta: Vec<f64>) -> Self {
        let active: Vec<bool> = beta.iter().map(|b| b.abs() > ACTIVE_TOL).collect();
        let z2 = active.iter().filter(|&&a| a).count();
        FrontierPoint { z1: d.total_bias(&beta), z2, beta, active, class: None, trivial: z2 == 0 }
    }

    pub fn support(&self) -> Vec<usize> {
        self.active.iter().enumerate().filter(|(_, a)| **a).map(|(j, _)| j).collect()
    }

    /// Weakly better in both objectives and strictly better in one.
    pub fn dominates(&self, other: &FrontierPoint) -> bool {
        (self.z1 <= other.z1 && self.z2 < other.z2) || (self.z1 < other.z1 - DEDUP_TOL && self.z2 <= other.z2)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct FrontierStats {
    /// Single-objective programs solved.
    pub subproblems: usize,
    pub total_nodes: usize,
    pub complete: bool,
    /// Informational only; not written to files so outputs stay reproducible.
    #[serde(skip)]
    pub wall_time: Duration,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Frontier {
    /// Sorted by ascending predictor count.
    pub points: Vec<FrontierPoint>,
    pub stats: FrontierStats,
}

impl Frontier {
    pub fn z_values(&self) -> Vec<(f64, usize)> {
        self.points.iter().map(|p| (p.z1, p.z2)).collect()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Checks ordering, pairwise nondominance and the `p + 1` size bound.
    pub fn check_invariants(&self, p: usize) -> std::result::Result<(), String> {
        if self.points.len() > p + 1 {
            return Err(format!("{} points exceed p + 1 = {}", self.points.len(), p + 1));
        }
        for w in self.points.windows(2) {
            if w[1].z2 <= w[0].z2 {
                return Err(format!("z2 not strictly increasing: {} then {}", w[0].z2, w[1].z2));
            }
            if w[1].z1 >= w[0].z1 {
                return Err(format!("z1 not strictly decreasing: {} then {}", w[0].z1, w[1].z1));
            }
        }
        for (a, pa) in self.points.iter().enumerate() {
            if pa.z1 < 0.0 || pa.z2 > p {
                return Err(format!("point {a} out of range"));
            }
            if pa.active.iter().filter(|&&x| x).count() != pa.z2 {
                return Err(format!("point {a} has z2 = {} but a different active count", pa.z2));
            }
            for (b, pb) in self.points.iter().enumerate() {
                if a != b && pb.dominates(pa) {
                    return Err(format!("point {b} dominates point {a}"));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let f: Frontier = serde_json::from_str(text)?;
        for pt in &f.points {
            if pt.beta.len() != pt.active.len() {
                return Err(Error::Dimension("point beta and active lengths differ".into()));
            }
        }
        Ok(f)
    }

    /// `z1,z2,class` rows for plotting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("z1,z2,class\n");
        for p in &self.points {
            let class = p.class.map_or("unclassified", PointClass::as_str);
            let _ = writeln!(out, "{},{},{}", p.z1, p.z2, class);
        }
        out
    }
}

/// Keeps the nondominated points of `candidates`, sorted by ascending z2.
/// Among candidates with the same z2 the lowest z1 is kept; a candidate
/// survives only if its z1 is more than `DEDUP_TOL` below every candidate
/// with fewer predictors.
pub fn nondominated(mut candidates: Vec<FrontierPoint>) -> Vec<FrontierPoint> {
    candidates.sort_by(|a, b| a.z2.cmp(&b.z2).then(a.z1.total_cmp(&b.z1)));
    let mut kept: Vec<FrontierPoint> = Vec::new();
    for c in candidates {
        if kept.last().is_none_or(|last| c.z1 < last.z1 - DEDUP_TOL) {
            kept.push(c);
        }
    }
    kept
}
