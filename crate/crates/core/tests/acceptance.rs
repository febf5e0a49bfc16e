//! Acceptance suite. One line per criterion, nonzero exit on any failure.
//!
//! Run with `cargo test -p pareto-subset --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use pareto_subset::lp::audit;
use pareto_subset::{
    brute_force_frontier, classify_points, compute_bounds, generate_instance, goal_programming_baseline, lad_fit,
    median_bias_bound, select_ideal, solve_frontier, solve_milp, weighted_sum_baseline, BoundsVector, Dataset,
    DistanceMetric, Frontier, InstanceClass, MilpStatus, PointClass, SolveOptions,
};
use rand::Rng;
use rayon::prelude::*;

const Z1_TOL: f64 = 1e-6;
const MEDIAN_TOL: f64 = 1e-9;
const BOUND_TOL: f64 = 1e-7;
const MILP_TOL: f64 = 1e-6;
const PRIMAL_TOL: f64 = 1e-7;
const DUAL_GAP_TOL: f64 = 1e-6;
const SWEEP_LEN: usize = 50;

struct Solved {
    class: InstanceClass,
    data: Dataset,
    bounds: BoundsVector,
    frontier: Frontier,
    oracle: Frontier,
}

type Outcome = Result<String, String>;

fn solve_instance(class: InstanceClass) -> Solved {
    let (data, _) = generate_instance(&class).expect("generator");
    let bounds = compute_bounds(&data).expect("bounds");
    let frontier = classify_points(&solve_frontier(&data, &bounds, &SolveOptions::default()).expect("frontier"));
    let oracle = brute_force_frontier(&data).expect("oracle");
    Solved { class, data, bounds, frontier, oracle }
}

fn oracle_equivalence(set: &[Solved]) -> Outcome {
    for s in set {
        let (a, o) = (s.frontier.z_values(), s.oracle.z_values());
        let za: Vec<usize> = a.iter().map(|p| p.1).collect();
        let zo: Vec<usize> = o.iter().map(|p| p.1).collect();
        if za != zo {
            return Err(format!("{} seed {}: z2 {:?} vs oracle {:?}", s.class, s.class.seed, za, zo));
        }
        for (x, y) in a.iter().zip(&o) {
            if (x.0 - y.0).abs() > Z1_TOL {
                return Err(format!("{} seed {}: z1 {} vs oracle {} at z2 = {}", s.class, s.class.seed, x.0, y.0, x.1));
            }
        }
        if let Err(e) = s.frontier.check_invariants(s.data.p()) {
            return Err(format!("{}: {e}", s.class));
        }
    }
    Ok(format!("{} instances agree with exhaustive search", set.len()))
}

fn cardinality(sets: &[&[Solved]]) -> Outcome {
    let (mut total, mut full) = (0, 0);
    for s in sets.iter().flat_map(|s| s.iter()) {
        let p = s.data.p();
        if s.frontier.len() > p + 1 {
            return Err(format!("{}: {} points > p + 1", s.class, s.frontier.len()));
        }
        total += 1;
        if s.frontier.len() == p + 1 {
            full += 1;
        }
    }
    Ok(format!("all {total} frontiers have at most p + 1 points; {full}/{total} have exactly p + 1"))
}

fn median_bound(set: &[Solved]) -> Outcome {
    let mut worst_eq: f64 = 0.0;
    for s in set {
        let bound = median_bias_bound(&s.data);
        for pt in s.frontier.points.iter().filter(|p| !p.trivial) {
            if pt.z1 > bound + MEDIAN_TOL {
                return Err(format!("{}: z1 = {} above median bound {bound}", s.class, pt.z1));
            }
        }
        let fit = lad_fit(&s.data, &[0]).map_err(|e| e.to_string())?;
        worst_eq = worst_eq.max((fit.z1 - bound).abs());
        if worst_eq > MEDIAN_TOL {
            return Err(format!("{}: intercept-only fit {} vs median bound {bound}", s.class, fit.z1));
        }
    }
    Ok(format!("{} instances; intercept-only gap {worst_eq:.1e}", set.len()))
}

fn bound_validity(set: &[Solved]) -> Outcome {
    let mut checked = 0;
    for s in set {
        for pt in s.oracle.points.iter().filter(|p| !p.trivial) {
            if !s.bounds.contains(&pt.beta, BOUND_TOL) {
                return Err(format!("{}: efficient beta {:?} outside bounds", s.class, pt.beta));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} efficient coefficient vectors inside their bounds"))
}

fn lambda_grid(d: &Dataset) -> Vec<f64> {
    let hi = 10.0 * d.y().iter().map(|y| y.abs()).sum::<f64>();
    let lo: f64 = 1e-4;
    (0..SWEEP_LEN).map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (SWEEP_LEN - 1) as f64).exp()).collect()
}

fn weighted_sum_defect(set: &[Solved]) -> Outcome {
    let opts = SolveOptions { exclude_trivial: false, ..SolveOptions::default() };
    let mut instances = 0;
    let mut unsupported_total = 0;
    for s in set {
        let unsupported: Vec<(f64, usize)> = s
            .frontier
            .points
            .iter()
            .filter(|p| p.class == Some(PointClass::Unsupported))
            .map(|p| (p.z1, p.z2))
            .collect();
        if unsupported.is_empty() {
            continue;
        }
        instances += 1;
        unsupported_total += unsupported.len();
        let picks = lambda_grid(&s.data)
            .into_par_iter()
            .map(|lambda| weighted_sum_baseline(&s.data, &s.bounds, lambda, &opts).map(|p| (lambda, p)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        for (lambda, pt) in picks {
            if unsupported.iter().any(|u| u.1 == pt.z2 && (u.0 - pt.z1).abs() <= Z1_TOL) {
                return Err(format!("{}: lambda {lambda:.3e} returned unsupported ({}, {})", s.class, pt.z1, pt.z2));
            }
            let on_frontier = s.frontier.points.iter().any(|q| q.z2 == pt.z2 && (q.z1 - pt.z1).abs() <= Z1_TOL);
            if !on_frontier {
                return Err(format!("{}: lambda {lambda:.3e} returned off-frontier ({}, {})", s.class, pt.z1, pt.z2));
            }
        }
    }
    if instances == 0 {
        return Err("no instance had an unsupported point".into());
    }
    Ok(format!(
        "{instances} instances, {unsupported_total} unsupported points never returned by a {SWEEP_LEN}-value sweep"
    ))
}

fn goal_programming_defect() -> Outcome {
    let rows = vec![vec![3.0, 1.0], vec![-1.0, 4.0], vec![8.0, -2.0], vec![0.0, 5.0], vec![2.0, 2.0], vec![5.0, -1.0]];
    let d = Dataset::from_predictors(rows, vec![4.0; 6]).map_err(|e| e.to_string())?;
    let b = compute_bounds(&d).map_err(|e| e.to_string())?;
    let opts = SolveOptions::default();
    let lex = goal_programming_baseline(&d, &b, 2, true, &opts).map_err(|e| e.to_string())?;
    if lex.z2 != 1 || lex.z1.abs() > Z1_TOL {
        return Err(format!("lexicographic returned ({}, {})", lex.z1, lex.z2));
    }
    let plain = goal_programming_baseline(&d, &b, 2, false, &opts).map_err(|e| e.to_string())?;
    if plain.z1.abs() > Z1_TOL || !(1..=2).contains(&plain.z2) {
        return Err(format!("non-lexicographic returned ({}, {})", plain.z1, plain.z2));
    }
    let note = if plain.z2 == 2 { "weakly dominated z2 = 2 (flagged)" } else { "z2 = 1" };
    Ok(format!("lexicographic z2 = 1; non-lexicographic gave {note}"))
}

fn independent_argmin(f: &Frontier, normalized: bool) -> usize {
    let z: Vec<(f64, f64)> = f.points.iter().map(|p| (p.z1, p.z2 as f64)).collect();
    let ideal = (z.iter().map(|p| p.0).fold(f64::MAX, f64::min), z.iter().map(|p| p.1).fold(f64::MAX, f64::min));
    let (mut s1, mut s2) = (1.0, 1.0);
    if normalized {
        s1 = z.iter().map(|p| p.0).fold(f64::MIN, f64::max) - ideal.0;
        s2 = z.iter().map(|p| p.1).fold(f64::MIN, f64::max) - ideal.1;
    }
    let mut best = (f64::MAX, usize::MAX);
    for p in f.points.iter().filter(|p| p.z2 > 0) {
        let d = (((p.z1 - ideal.0) / s1).powi(2) + ((p.z2 as f64 - ideal.1) / s2).powi(2)).sqrt();
        if d < best.0 - 1e-12 {
            best = (d, p.z2);
        }
    }
    best.1
}

fn ideal_selection() -> Outcome {
    let published = common::published_frontier();
    let pick = select_ideal(&published, DistanceMetric::Raw).map_err(|e| e.to_string())?;
    if (pick.z1, pick.z2) != (27.2, 8) {
        return Err(format!("published frontier gave ({}, {})", pick.z1, pick.z2));
    }
    let mut rng = common::rng(2024);
    let trials = 500;
    for t in 0..trials {
        let len = rng.random_range(1..=40);
        let f = common::random_frontier(&mut rng, len);
        for (metric, normalized) in [(DistanceMetric::Raw, false), (DistanceMetric::Normalized, true)] {
            let got = select_ideal(&f, metric).map_err(|e| e.to_string())?.z2;
            let want = independent_argmin(&f, normalized);
            if got != want {
                return Err(format!("random frontier {t} ({metric:?}): picked z2 = {got}, argmin z2 = {want}"));
            }
        }
    }
    Ok(format!("published frontier -> (27.2, 8); {trials} random frontiers match the direct argmin"))
}

fn milp_correctness() -> Outcome {
    let mut rng = common::rng(77);
    let (mut optimal, mut infeasible) = (0, 0);
    for t in 0..100 {
        let nb = rng.random_range(1..=10);
        let nc = rng.random_range(0..=4);
        let m = common::random_milp(&mut rng, nb, nc);
        let sol = solve_milp(&m, 1_000_000).map_err(|e| format!("program {t}: {e}"))?;
        match (common::enumerate_milp(&m), sol.status) {
            (None, MilpStatus::Infeasible) => infeasible += 1,
            (Some(best), MilpStatus::Optimal) if (best - sol.objective_value).abs() <= MILP_TOL => optimal += 1,
            (want, _) => {
                return Err(format!("program {t}: got {:?} {}, enumeration {want:?}", sol.status, sol.objective_value))
            }
        }
    }
    Ok(format!("100 programs match enumeration ({optimal} optimal, {infeasible} infeasible)"))
}

fn lp_audit() -> Outcome {
    let s = audit::snapshot();
    if s.optimal_solves == 0 {
        return Err("no optimal LP solves recorded".into());
    }
    let detail = format!(
        "{} optimal solves, max violation {:.1e}, max relative dual gap {:.1e}",
        s.optimal_solves, s.max_primal_violation, s.max_relative_dual_gap
    );
    if s.max_primal_violation > PRIMAL_TOL || s.max_relative_dual_gap > DUAL_GAP_TOL || s.dual_infeasible > 0 {
        return Err(format!("{detail}, {} dual-infeasible price vectors", s.dual_infeasible));
    }
    Ok(detail)
}

fn report(name: &str, started: Instant, outcome: Outcome, failures: &mut usize) {
    let secs = started.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => println!("PASS  {name:<28} {detail} [{secs:.1}s]"),
        Err(reason) => {
            *failures += 1;
            println!("FAIL  {name:<28} {reason} [{secs:.1}s]");
        }
    }
}

fn main() -> ExitCode {
    audit::enable();
    let mut failures = 0;

    let t = Instant::now();
    let classes: Vec<InstanceClass> = [4, 6, 8, 10]
        .iter()
        .flat_map(|&p| (0..5).map(move |s| InstanceClass::new(p, 3 * p, 1000 + 10 * p as u64 + s)))
        .collect();
    let main_set: Vec<Solved> = classes.into_par_iter().map(solve_instance).collect();
    report("frontier-oracle-equivalence", t, oracle_equivalence(&main_set), &mut failures);

    let t = Instant::now();
    let prop_set: Vec<Solved> = (0..50u64)
        .into_par_iter()
        .map(|s| {
            let p = 2 + (s as usize % 6);
            solve_instance(InstanceClass::new(p, 3 * p + (s as usize % 4), 5000 + s))
        })
        .collect();
    report("median-bias-bound", t, median_bound(&prop_set), &mut failures);

    let t = Instant::now();
    report("frontier-cardinality", t, cardinality(&[&main_set, &prop_set]), &mut failures);

    let t = Instant::now();
    report("bound-validity", t, bound_validity(&main_set), &mut failures);

    let t = Instant::now();
    report("weighted-sum-defect", t, weighted_sum_defect(&main_set), &mut failures);

    let t = Instant::now();
    report("goal-programming-defect", t, goal_programming_defect(), &mut failures);

    let t = Instant::now();
    report("ideal-point-selection", t, ideal_selection(), &mut failures);

    let t = Instant::now();
    report("milp-correctness", t, milp_correctness(), &mut failures);

    let t = Instant::now();
    report("lp-certificates", t, lp_audit(), &mut failures);

    println!("9 criteria, {failures} failed");
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
