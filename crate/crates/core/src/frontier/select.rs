//! Ideal-point selection: pick the nondominated point closest to
//! `(T1, B2)`, where `T` is the minimum-bias end of the frontier and `B` the
//! minimum-count end.

use super::{Frontier, FrontierPoint};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DistanceMetric {
    /// Euclidean distance on raw `(z1, z2)`.
    #[default]
    Raw,
    /// Each objective divided by its range over the frontier first.
    Normalized,
}

/// `(T1, B2)` over all points of `f`, the empty model included.
pub fn ideal_point(f: &Frontier) -> Result<(f64, f64)> {
    if f.is_empty() {
        return Err(Error::InvalidArgument("cannot select from an empty frontier".into()));
    }
    let t1 = f.points.iter().map(|p| p.z1).fold(f64::INFINITY, f64::min);
    let b2 = f.points.iter().map(|p| p.z2).min().unwrap_or(0) as f64;
    Ok((t1, b2))
}

/// Closest non-trivial point to the ideal point; ties go to fewer predictors.
pub fn select_ideal(f: &Frontier, metric: DistanceMetric) -> Result<FrontierPoint> {
    select_ideal_among(f, metric, false)
}

/// As [`select_ideal`], optionally letting the empty model compete.
pub fn select_ideal_among(f: &Frontier, metric: DistanceMetric, include_trivial: bool) -> Result<FrontierPoint> {
    let (t1, b2) = ideal_point(f)?;
    let (s1, s2) = match metric {
        DistanceMetric::Raw => (1.0, 1.0),
        DistanceMetric::Normalized => {
            let span = |v: Vec<f64>| {
                let lo = v.iter().cloned().fold(f64::INFINITY, f64::min);
                let hi = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                if hi > lo {
                    hi - lo
                } else {
                    1.0
                }
            };
            (span(f.points.iter().map(|p| p.z1).collect()), span(f.points.iter().map(|p| p.z2 as f64).collect()))
        }
    };
    let mut best: Option<(f64, &FrontierPoint)> = None;
    for p in f.points.iter().filter(|p| include_trivial || !p.trivial) {
        let dist = ((p.z1 - t1) / s1).hypot((p.z2 as f64 - b2) / s2);
        let better = match best {
            None => true,
            Some((bd, bp)) => dist < bd || (dist == bd && p.z2 < bp.z2),
        };
        if better {
            best = Some((dist, p));
        }
    }
    best.map(|(_, p)| p.clone()).ok_or_else(|| Error::InvalidArgument("frontier has no non-trivial point".into()))
}
