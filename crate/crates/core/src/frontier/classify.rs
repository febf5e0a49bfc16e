use super::{Frontier, PointClass};

/// Relative tolerance for collinearity in the hull tests.
const HULL_TOL: f64 = 1e-9;

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn scale(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let da = (a.0 - o.0).hypot(a.1 - o.1);
    let db = (b.0 - o.0).hypot(b.1 - o.1);
    da * db
}

/// Labels each point by its position relative to the lower-left convex
/// hull of the frontier in `(z1, z2)` space: hull vertices are extreme
/// supported, points on a hull edge are non-extreme supported, points above
/// it are unsupported. The empty-model point is classified like any other.
pub fn classify_points(f: &Frontier) -> Frontier {
    let mut out = f.clone();
    let pts: Vec<(f64, f64)> = f.points.iter().map(|p| (p.z1, p.z2 as f64)).collect();
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| pts[a].0.total_cmp(&pts[b].0).then(pts[a].1.total_cmp(&pts[b].1)));

    // Andrew's monotone chain, lower hull, collinear points dropped.
    let mut hull: Vec<usize> = Vec::new();
    for &i in &order {
        while hull.len() >= 2 {
            let (o, a) = (pts[hull[hull.len() - 2]], pts[hull[hull.len() - 1]]);
            if cross(o, a, pts[i]) <= HULL_TOL * scale(o, a, pts[i]) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(i);
    }

    for (i, point) in out.points.iter_mut().enumerate() {
        if hull.contains(&i) {
            point.class = Some(PointClass::ExtremeSupported);
            continue;
        }
        let z = pts[i];
        let edge = hull.windows(2).find(|w| pts[w[0]].0 <= z.0 && z.0 <= pts[w[1]].0);
        point.class = Some(match edge {
            Some(w) => {
                let (o, a) = (pts[w[0]], pts[w[1]]);
                if cross(o, a, z).abs() <= HULL_TOL * scale(o, a, z) {
                    PointClass::NonExtremeSupported
                } else {
                    PointClass::Unsupported
                }
            }
            None => PointClass::Unsupported,
        });
    }
    out
}
