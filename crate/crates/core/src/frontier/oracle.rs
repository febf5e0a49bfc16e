//! Exhaustive all-subsets frontier used to cross-check the MILP route.

use rayon::prelude::*;

use super::{nondominated, Frontier, FrontierPoint, FrontierStats};
use crate::error::{Error, Result};
use crate::formulation::lad_fit;
use crate::model::Dataset;

pub const MAX_ORACLE_PREDICTORS: usize = 12;

/// Fits every nonempty support, keeps the best fit per cardinality and
/// filters dominated levels. Needs `p <= 12`.
pub fn brute_force_frontier(d: &Dataset) -> Result<Frontier> {
    let p = d.p();
    if p > MAX_ORACLE_PREDICTORS {
        return Err(Error::Guard(format!("exhaustive frontier needs p <= {MAX_ORACLE_PREDICTORS}, got p = {p}")));
    }
    let fits: Vec<(usize, FrontierPoint)> = (1u32..(1u32 << p))
        .into_par_iter()
        .map(|mask| {
            let support: Vec<usize> = (0..p).filter(|j| mask & (1 << j) != 0).collect();
            let fit = lad_fit(d, &support)?;
            let active: Vec<bool> = (0..p).map(|j| mask & (1 << j) != 0).collect();
            let point =
                FrontierPoint { z1: fit.z1, z2: support.len(), beta: fit.beta, active, class: None, trivial: false };
            Ok((support.len(), point))
        })
        .collect::<Result<_>>()?;

    let mut best: Vec<Option<FrontierPoint>> = vec![None; p + 1];
    for (size, point) in fits {
        if best[size].as_ref().is_none_or(|b| point.z1 < b.z1) {
            best[size] = Some(point);
        }
    }
    let mut candidates: Vec<FrontierPoint> = best.into_iter().flatten().collect();
    candidates.push(FrontierPoint::trivial(d));
    let stats = FrontierStats { subproblems: (1usize << p) - 1, complete: true, ..FrontierStats::default() };
    Ok(Frontier { points: nondominated(candidates), stats })
}
