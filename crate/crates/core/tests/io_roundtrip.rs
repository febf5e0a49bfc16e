use std::fs;

use pareto_subset::model::{load_dataset, save_dataset};
use pareto_subset::{
    classify_points, compute_bounds, generate_instance, solve_frontier, BoundsVector, Error, Frontier, InstanceClass,
    SolveOptions, TrueModel,
};

#[test]
fn dataset_truth_bounds_and_frontier_survive_disk() {
    let dir = tempfile::tempdir().unwrap();
    let (d, truth) = generate_instance(&InstanceClass::new(4, 12, 3)).unwrap();

    let data = dir.path().join("inst.csv");
    save_dataset(&d, &data).unwrap();
    let back = load_dataset(&data).unwrap();
    assert_eq!(back, d);

    let truth_path = dir.path().join("inst.truth.json");
    fs::write(&truth_path, truth.to_json().unwrap()).unwrap();
    assert_eq!(TrueModel::from_json(&fs::read_to_string(&truth_path).unwrap()).unwrap(), truth);

    let b = compute_bounds(&back).unwrap();
    let bounds_path = dir.path().join("bounds.json");
    fs::write(&bounds_path, b.to_json().unwrap()).unwrap();
    assert_eq!(BoundsVector::from_json(&fs::read_to_string(&bounds_path).unwrap()).unwrap(), b);

    let f = classify_points(&solve_frontier(&back, &b, &SolveOptions::default()).unwrap());
    let fpath = dir.path().join("frontier.json");
    fs::write(&fpath, f.to_json().unwrap()).unwrap();
    let f2 = Frontier::from_json(&fs::read_to_string(&fpath).unwrap()).unwrap();
    assert_eq!(f2.points, f.points);
    assert_eq!(f2.to_json().unwrap(), f.to_json().unwrap());
}

#[test]
fn malformed_csv_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.csv");
    fs::write(&path, "y,x2,x3\n1,2,3\n1,oops,4\n").unwrap();
    match load_dataset(&path) {
        Err(Error::Parse { line, column, .. }) => {
            assert_eq!(line, 3);
            assert_eq!(column, "x2");
        }
        other => panic!("expected a parse error, got {other:?}"),
    }
}
