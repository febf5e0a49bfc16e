use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use log::info;
use pareto_subset::frontier::MAX_ORACLE_PREDICTORS;
use pareto_subset::model::{load_dataset, save_dataset};
use pareto_subset::{
    brute_force_frontier, build_bomilp, classify_points, compute_bounds, generate_instance, goal_programming_baseline,
    select_ideal_among, solve_frontier, weighted_sum_baseline, BoundsVector, Dataset, DistanceMetric, Error, Frontier,
    FrontierPoint, InstanceClass, SolveOptions,
};
use serde::Serialize;

use crate::exit::Failure;
use crate::{
    BaselineArgs, BenchArgs, BoundsArgs, ClassArgs, ClassifyArgs, DataArgs, ExportArgs, GenArgs, SelectArgs, SolveArgs,
};

fn resolve_class(a: &ClassArgs) -> Result<InstanceClass, Failure> {
    let mut cls = match (&a.class, a.p, a.n) {
        (Some(label), _, _) => label.parse::<InstanceClass>()?,
        (None, Some(p), Some(n)) => InstanceClass::new(p, n, 0),
        _ => return Err(Failure::usage("give either --class C(p,n) or both --p and --n")),
    };
    cls.seed = a.seed;
    Ok(cls)
}

fn load_inputs(a: &DataArgs) -> Result<(Dataset, BoundsVector), Failure> {
    let d = read_data(&a.input)?;
    let b = match &a.bounds {
        Some(path) => fs::read_to_string(path)
            .map_err(Error::from)
            .and_then(|text| BoundsVector::from_json(&text))
            .and_then(|b| b.validate(d.p()).map(|()| b))
            .map_err(|e| Failure::from(e).at(path))?,
        None => compute_bounds(&d)?,
    };
    Ok((d, b))
}

fn read_data(path: &Path) -> Result<Dataset, Failure> {
    load_dataset(path).map_err(|e| Failure::from(e).at(path))
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}{suffix}"))
}

fn write_frontier(f: &Frontier, json_path: &Path) -> Result<PathBuf, Failure> {
    fs::write(json_path, f.to_json()?)?;
    let csv_path = json_path.with_extension("csv");
    fs::write(&csv_path, f.to_csv())?;
    Ok(csv_path)
}

fn read_frontier(path: &Path) -> Result<Frontier, Failure> {
    fs::read_to_string(path)
        .map_err(Error::from)
        .and_then(|text| Frontier::from_json(&text))
        .map_err(|e| Failure::from(e).at(path))
}

fn emit_point(pt: &FrontierPoint, out: Option<&Path>) -> Result<(), Failure> {
    let json = serde_json::to_string(pt).map_err(Error::from)?;
    if let Some(path) = out {
        fs::write(path, serde_json::to_string_pretty(pt).map_err(Error::from)? + "\n")?;
    }
    println!("{json}");
    Ok(())
}

pub fn gen(a: &GenArgs) -> Result<(), Failure> {
    let cls = resolve_class(&a.class)?;
    let (d, truth) = generate_instance(&cls)?;
    save_dataset(&d, &a.out)?;
    let truth_path = with_suffix(&a.out, ".truth.json");
    fs::write(&truth_path, truth.to_json()? + "\n")?;
    println!("wrote {} ({} rows, p = {}) and {}", a.out.display(), d.n(), d.p(), truth_path.display());
    Ok(())
}

pub fn bounds(a: &BoundsArgs) -> Result<(), Failure> {
    let d = read_data(&a.input)?;
    let b = compute_bounds(&d)?;
    fs::write(&a.out, b.to_json()? + "\n")?;
    println!("wrote {}", a.out.display());
    Ok(())
}

pub fn solve(a: &SolveArgs) -> Result<(), Failure> {
    let (d, b) = load_inputs(&a.data)?;
    let opts = SolveOptions { node_limit: a.data.node_limit, ..SolveOptions::default() };
    match solve_frontier(&d, &b, &opts) {
        Ok(f) => {
            let csv = write_frontier(&f, &a.out)?;
            println!(
                "#NDPs {}  Time(Sec.) {:.3}  subproblems {}  nodes {}",
                f.len(),
                f.stats.wall_time.as_secs_f64(),
                f.stats.subproblems,
                f.stats.total_nodes
            );
            info!("wrote {} and {}", a.out.display(), csv.display());
            Ok(())
        }
        Err(Error::IncompleteFrontier { partial, source }) => {
            write_frontier(&partial, &a.out)?;
            Err(Error::IncompleteFrontier { partial, source }.into())
        }
        Err(e) => Err(e.into()),
    }
}

pub fn classify(a: &ClassifyArgs) -> Result<(), Failure> {
    let f = read_frontier(&a.input)?;
    if f.is_empty() {
        return Err(Failure::invalid("frontier has no points"));
    }
    let c = classify_points(&f);
    write_frontier(&c, &a.out)?;
    let unsupported = c.points.iter().filter(|p| p.class.is_some_and(|k| !k.is_supported())).count();
    println!("{} points, {} unsupported", c.len(), unsupported);
    Ok(())
}

pub fn select(a: &SelectArgs) -> Result<(), Failure> {
    let f = read_frontier(&a.input)?;
    let metric = if a.normalized { DistanceMetric::Normalized } else { DistanceMetric::Raw };
    let pt = select_ideal_among(&f, metric, a.include_trivial)?;
    emit_point(&pt, a.out.as_deref())
}

pub fn baseline(a: &BaselineArgs) -> Result<(), Failure> {
    let (d, b) = load_inputs(&a.data)?;
    let opts = SolveOptions { node_limit: a.data.node_limit, exclude_trivial: !a.include_trivial };
    let pt = match (a.lambda, a.k) {
        (Some(lambda), None) => weighted_sum_baseline(&d, &b, lambda, &opts)?,
        (None, Some(k)) => goal_programming_baseline(&d, &b, k, a.lexicographic, &opts)?,
        _ => return Err(Failure::usage("give exactly one of --lambda and --k")),
    };
    emit_point(&pt, a.out.as_deref())
}

#[derive(Serialize)]
struct BenchRow {
    instance: u64,
    seed: u64,
    time_sec: f64,
    ndps: usize,
    subproblems: usize,
    nodes: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_match: Option<bool>,
}

fn matches_oracle(f: &Frontier, oracle: &Frontier) -> bool {
    f.len() == oracle.len()
        && f.points.iter().zip(&oracle.points).all(|(a, b)| a.z2 == b.z2 && (a.z1 - b.z1).abs() <= 1e-6)
}

pub fn bench(a: &BenchArgs) -> Result<(), Failure> {
    let base = resolve_class(&a.class)?;
    if a.instances == 0 {
        return Err(Failure::invalid("--instances must be at least 1"));
    }
    if a.verify && base.p > MAX_ORACLE_PREDICTORS {
        return Err(Error::Guard(format!("--verify needs p <= {MAX_ORACLE_PREDICTORS}, got p = {}", base.p)).into());
    }
    let opts = SolveOptions { node_limit: a.node_limit, ..SolveOptions::default() };
    let mut rows = Vec::new();
    for i in 0..a.instances {
        let cls = InstanceClass { seed: base.seed + i, ..base };
        let (d, _) = generate_instance(&cls)?;
        let started = Instant::now();
        let b = compute_bounds(&d)?;
        let f = solve_frontier(&d, &b, &opts)?;
        let time_sec = started.elapsed().as_secs_f64();
        let oracle_match = if a.verify { Some(matches_oracle(&f, &brute_force_frontier(&d)?)) } else { None };
        rows.push(BenchRow {
            instance: i + 1,
            seed: cls.seed,
            time_sec,
            ndps: f.len(),
            subproblems: f.stats.subproblems,
            nodes: f.stats.total_nodes,
            oracle_match,
        });
    }

    println!(
        "{:<10} {:>8} {:>8} {:>11} {:>7} {:>12} {:>10} {:>7}",
        "Class", "Instance", "Seed", "Time(Sec.)", "#NDPs", "Subproblems", "Nodes", "Oracle"
    );
    let mark = |m: Option<bool>| match m {
        Some(true) => "ok",
        Some(false) => "MISMATCH",
        None => "-",
    };
    for r in &rows {
        println!(
            "{:<10} {:>8} {:>8} {:>11.3} {:>7} {:>12} {:>10} {:>7}",
            base.label(),
            r.instance,
            r.seed,
            r.time_sec,
            r.ndps,
            r.subproblems,
            r.nodes,
            mark(r.oracle_match)
        );
    }
    let count = rows.len() as f64;
    let avg = |g: &dyn Fn(&BenchRow) -> f64| rows.iter().map(g).sum::<f64>() / count;
    println!(
        "{:<10} {:>8} {:>8} {:>11.3} {:>7.1} {:>12.1} {:>10.1} {:>7}",
        "Avg.",
        "",
        "",
        avg(&|r| r.time_sec),
        avg(&|r| r.ndps as f64),
        avg(&|r| r.subproblems as f64),
        avg(&|r| r.nodes as f64),
        ""
    );
    if let Some(path) = &a.out {
        fs::write(path, serde_json::to_string_pretty(&rows).map_err(Error::from)? + "\n")?;
    }
    if rows.iter().any(|r| r.oracle_match == Some(false)) {
        return Err(Failure { code: 9, kind: "solver", message: "frontier differs from exhaustive search".into() });
    }
    Ok(())
}

pub fn export_lp(a: &ExportArgs) -> Result<(), Failure> {
    let (d, b) = load_inputs(&a.data)?;
    let model = build_bomilp(&d, &b, !a.include_trivial)?;
    let problem = match (a.k, a.z1_cap, a.lambda) {
        (Some(k), cap, None) => {
            if k == 0 || k > d.p() {
                return Err(Failure::invalid(format!("--k must be in 1..={}, got {k}", d.p())));
            }
            match cap {
                Some(cap) => model.lexicographic_stage(k, cap),
                None => model.goal_program(k),
            }
        }
        (None, None, Some(lambda)) => {
            if !(lambda.is_finite() && lambda > 0.0) {
                return Err(Failure::invalid(format!("--lambda must be positive, got {lambda}")));
            }
            model.weighted_sum(lambda)
        }
        _ => return Err(Failure::usage("give --k (optionally with --z1-cap) or --lambda")),
    };
    fs::write(&a.out, problem.to_lp_file())?;
    println!("wrote {}", a.out.display());
    Ok(())
}
