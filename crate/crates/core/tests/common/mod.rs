#![allow(dead_code)]

use std::path::Path;

use pareto_subset::lp::{solve_lp, LinearProgram, LpStatus, Relation, Sense, VarBounds};
use pareto_subset::{Frontier, FrontierPoint, FrontierStats, MilpProblem};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mixed program with `nb` binaries, `nc` boxed continuous variables and a
/// handful of random inequality and equality rows.
pub fn random_milp(rng: &mut impl Rng, nb: usize, nc: usize) -> MilpProblem {
    let nv = nb + nc;
    let sense = if rng.random_bool(0.5) { Sense::Minimize } else { Sense::Maximize };
    let objective = (0..nv).map(|_| rng.random_range(-10..=10) as f64).collect();
    let mut lp = LinearProgram::new(sense, objective);
    for j in 0..nb {
        lp.set_bounds(j, VarBounds::BINARY);
    }
    for j in nb..nv {
        let lo = rng.random_range(-5..=0) as f64;
        lp.set_bounds(j, VarBounds::new(lo, lo + rng.random_range(1..=8) as f64));
    }
    let rows = rng.random_range(1..=6);
    for _ in 0..rows {
        let coeffs: Vec<f64> =
            (0..nv).map(|_| if rng.random_bool(0.6) { rng.random_range(-6..=6) as f64 } else { 0.0 }).collect();
        let relation = match rng.random_range(0..10) {
            0 => Relation::Equal,
            1..=5 => Relation::LessEq,
            _ => Relation::GreaterEq,
        };
        let rhs = rng.random_range(-8..=8) as f64 + if rng.random_bool(0.3) { 0.5 } else { 0.0 };
        lp.add_constraint(coeffs, relation, rhs);
    }
    MilpProblem::new(lp, (0..nb).collect())
}

/// Best objective over all `2^k` binary assignments, `None` if none is
/// feasible. The sub-LPs only have continuous variables left.
pub fn enumerate_milp(m: &MilpProblem) -> Option<f64> {
    let k = m.binary_vars.len();
    let mut best: Option<f64> = None;
    for mask in 0u32..(1u32 << k) {
        let mut lp = m.lp.clone();
        for (bit, &v) in m.binary_vars.iter().enumerate() {
            lp.set_bounds(v, VarBounds::fixed(((mask >> bit) & 1) as f64));
        }
        let sol = solve_lp(&lp).expect("sub-LP solve");
        if sol.status != LpStatus::Optimal {
            continue;
        }
        let better = match (best, m.lp.sense) {
            (None, _) => true,
            (Some(b), Sense::Minimize) => sol.objective_value < b,
            (Some(b), Sense::Maximize) => sol.objective_value > b,
        };
        if better {
            best = Some(sol.objective_value);
        }
    }
    best
}

pub struct PublishedPoint {
    pub z1: f64,
    pub z2: usize,
    pub supported: Option<bool>,
}

pub fn load_published() -> Vec<PublishedPoint> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/published_frontier.csv");
    let mut reader = csv::Reader::from_path(path).expect("fixture");
    reader
        .records()
        .map(|r| {
            let r = r.expect("record");
            PublishedPoint {
                z2: r[0].parse().unwrap(),
                z1: r[1].parse().unwrap(),
                supported: match &r[2] {
                    "yes" => Some(true),
                    "no" => Some(false),
                    _ => None,
                },
            }
        })
        .collect()
}

/// Bare frontier from `(z1, z2)` pairs; `z2 = 0` marks the empty model.
pub fn frontier_from(z: &[(f64, usize)]) -> Frontier {
    let width = z.iter().map(|p| p.1).max().unwrap_or(0);
    let points = z
        .iter()
        .map(|&(z1, z2)| FrontierPoint {
            z1,
            z2,
            beta: vec![0.0; width],
            active: (0..width).map(|j| j < z2).collect(),
            class: None,
            trivial: z2 == 0,
        })
        .collect();
    Frontier { points, stats: FrontierStats::default() }
}

pub fn published_frontier() -> Frontier {
    let z: Vec<(f64, usize)> = load_published().iter().map(|p| (p.z1, p.z2)).collect();
    frontier_from(&z)
}

/// Strictly decreasing bias over `0..=len` predictors.
pub fn random_frontier(rng: &mut impl Rng, len: usize) -> Frontier {
    let mut z1 = rng.random_range(50.0..2000.0);
    let mut z = vec![(z1, 0)];
    for k in 1..=len {
        z1 *= rng.random_range(0.3..0.999);
        z.push((z1, k));
    }
    frontier_from(&z)
}
