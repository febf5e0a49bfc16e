use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Open01, StandardNormal};

use super::{Dataset, InstanceClass, TrueModel};
use crate::error::{Error, Result};

/// Inclusive range of the integer predictor values.
pub const X_RANGE: (i64, i64) = (-50, 50);

/// Number of zero coefficients in a generated model with `p` predictors:
/// two thirds rounded up, capped so the intercept stays nonzero.
pub fn zero_count(p: usize) -> usize {
    (2 * p).div_ceil(3).min(p.saturating_sub(1))
}

/// Draws one member of instance class `C(p, n)`.
///
/// Predictors are integers uniform on `[-50, 50]`; the coefficient vector has
/// `zero_count(p)` zeros at uniformly chosen non-intercept positions and
/// `Uniform(0, 1)` values elsewhere; the response is `X beta` plus standard
/// normal noise, rounded to one decimal place.
pub fn generate_instance(cls: &InstanceClass) -> Result<(Dataset, TrueModel)> {
    let (p, n) = (cls.p, cls.n);
    if p < 2 || n < 2 {
        return Err(Error::Dimension(format!("instance class {} needs p >= 2 and n >= 2", cls.label())));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cls.seed);

    let mut beta = vec![0.0; p];
    let mut is_zero = vec![false; p];
    for k in sample(&mut rng, p - 1, zero_count(p)) {
        is_zero[k + 1] = true;
    }
    for (b, z) in beta.iter_mut().zip(&is_zero) {
        if !z {
            *b = rng.sample(Open01);
        }
    }

    let mut rows = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    for _ in 0..n {
        let mut row = Vec::with_capacity(p);
        row.push(1.0);
        for _ in 1..p {
            row.push(rng.random_range(X_RANGE.0..=X_RANGE.1) as f64);
        }
        let noise: f64 = rng.sample(StandardNormal);
        let signal: f64 = row.iter().zip(&beta).map(|(a, b)| a * b).sum();
        y.push(((signal + noise) * 10.0).round() / 10.0);
        rows.push(row);
    }

    Ok((Dataset::new(rows, y)?, TrueModel::from_beta(beta)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_counts() {
        assert_eq!(zero_count(20), 14);
        assert_eq!(zero_count(40), 27);
        assert_eq!(zero_count(6), 4);
        assert_eq!(zero_count(2), 1);
        assert_eq!(zero_count(3), 2);
    }

    #[test]
    fn largest_benchmark_class() {
        let (d, truth) = generate_instance(&InstanceClass::new(20, 40, 11)).unwrap();
        assert_eq!((d.n(), d.p()), (40, 20));
        assert_eq!(truth.beta.iter().filter(|b| **b == 0.0).count(), 14);
        assert_eq!(truth.support.len(), 6);
        assert!(truth.beta[0] > 0.0);
        for row in d.rows() {
            assert_eq!(row[0], 1.0);
            for &v in &row[1..] {
                assert!(v.fract() == 0.0 && (-50.0..=50.0).contains(&v));
            }
        }
    }

    #[test]
    fn smallest_class() {
        let (d, _) = generate_instance(&InstanceClass::new(2, 2, 3)).unwrap();
        assert_eq!(d.row(0)[0], 1.0);
        assert_eq!(d.row(1)[0], 1.0);
        assert!((-50.0..=50.0).contains(&d.x(0, 1)));
    }

    #[test]
    fn responses_have_one_decimal() {
        let (d, _) = generate_instance(&InstanceClass::new(6, 12, 7)).unwrap();
        for &y in d.y() {
            assert!((y * 10.0 - (y * 10.0).round()).abs() < 1e-9, "{y}");
        }
    }

    #[test]
    fn seeded_determinism() {
        let a = generate_instance(&InstanceClass::new(5, 9, 42)).unwrap();
        let b = generate_instance(&InstanceClass::new(5, 9, 42)).unwrap();
        let c = generate_instance(&InstanceClass::new(5, 9, 43)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.0, c.0);
    }

    #[test]
    fn rejects_tiny_classes() {
        assert!(generate_instance(&InstanceClass::new(1, 5, 0)).is_err());
        assert!(generate_instance(&InstanceClass::new(3, 1, 0)).is_err());
    }
}
