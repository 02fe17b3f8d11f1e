//! Normalization and the two-dimensional hypervolume indicator.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pareto::{pareto_filter, ObjectivePoint};

/// Points mapped affinely into the unit square.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizedFront {
    pub points: Vec<ObjectivePoint>,
    pub ideal: ObjectivePoint,
    pub nadir: ObjectivePoint,
}

fn check_range(ideal: &ObjectivePoint, nadir: &ObjectivePoint) -> Result<()> {
    for c in 0..2 {
        if nadir.get(c).partial_cmp(&ideal.get(c)) != Some(std::cmp::Ordering::Greater) {
            return Err(Error::DegenerateRange {
                component: c,
                value: ideal.get(c),
            });
        }
    }
    Ok(())
}

/// Componentwise minimum and maximum.
pub fn ideal_and_nadir(points: &[ObjectivePoint]) -> Result<(ObjectivePoint, ObjectivePoint)> {
    let first = points.first().ok_or(Error::EmptyPointSet)?;
    let (ideal, nadir) = points.iter().fold((*first, *first), |(lo, hi), p| {
        (
            ObjectivePoint::new(lo.f1.min(p.f1), lo.f2.min(p.f2)),
            ObjectivePoint::new(hi.f1.max(p.f1), hi.f2.max(p.f2)),
        )
    });
    check_range(&ideal, &nadir)?;
    Ok((ideal, nadir))
}

/// Maps each coordinate by `(v - ideal) / (nadir - ideal)`.
pub fn normalize_front(points: &[ObjectivePoint], ideal: &ObjectivePoint, nadir: &ObjectivePoint) -> Result<NormalizedFront> {
    check_range(ideal, nadir)?;
    let d1 = nadir.f1 - ideal.f1;
    let d2 = nadir.f2 - ideal.f2;
    Ok(NormalizedFront {
        points: points
            .iter()
            .map(|p| ObjectivePoint::new((p.f1 - ideal.f1) / d1, (p.f2 - ideal.f2) / d2))
            .collect(),
        ideal: *ideal,
        nadir: *nadir,
    })
}

/// Area dominated by `points` and bounded by `reference`. Points not
/// strictly inside the reference box, or not finite, contribute nothing.
pub fn hypervolume_2d(points: &[ObjectivePoint], reference: &ObjectivePoint) -> f64 {
    let inside: Vec<ObjectivePoint> = points
        .iter()
        .filter(|p| p.is_finite() && p.f1 < reference.f1 && p.f2 < reference.f2)
        .copied()
        .collect();
    let mut front = pareto_filter(&inside);
    front.sort_by(|a, b| a.f1.total_cmp(&b.f1));
    // Along the front f1 rises and f2 falls; each point owns the strip up to the next f1.
    let mut area = 0.0;
    for (k, p) in front.iter().enumerate() {
        let right = front.get(k + 1).map_or(reference.f1, |q| q.f1);
        area += (right - p.f1) * (reference.f2 - p.f2);
    }
    area
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(a: f64, b: f64) -> ObjectivePoint {
        ObjectivePoint::new(a, b)
    }

    const UNIT: ObjectivePoint = ObjectivePoint::new(1.0, 1.0);

    #[test]
    fn ideal_nadir_cases() {
        let (lo, hi) = ideal_and_nadir(&[p(1.0, 3.0), p(2.0, 2.0), p(3.0, 1.0)]).unwrap();
        assert_eq!((lo, hi), (p(1.0, 1.0), p(3.0, 3.0)));
        assert!(matches!(ideal_and_nadir(&[]), Err(Error::EmptyPointSet)));
        assert!(matches!(
            ideal_and_nadir(&[p(2.0, 2.0), p(2.0, 2.0)]),
            Err(Error::DegenerateRange { component: 0, .. })
        ));
        assert!(matches!(
            ideal_and_nadir(&[p(1.0, 2.0), p(3.0, 2.0)]),
            Err(Error::DegenerateRange { component: 1, .. })
        ));
    }

    #[test]
    fn union_bounds_contain_member_bounds() {
        let a = [p(1.0, 5.0), p(2.0, 4.0)];
        let b = [p(0.5, 6.0), p(3.0, 1.0)];
        let union: Vec<_> = a.iter().chain(&b).copied().collect();
        let (ulo, uhi) = ideal_and_nadir(&union).unwrap();
        for part in [&a[..], &b[..]] {
            let (lo, hi) = ideal_and_nadir(part).unwrap();
            assert!(ulo.f1 <= lo.f1 && ulo.f2 <= lo.f2 && uhi.f1 >= hi.f1 && uhi.f2 >= hi.f2);
        }
    }

    #[test]
    fn normalization_endpoints() {
        let (lo, hi) = (p(1.0, 10.0), p(3.0, 30.0));
        let n = normalize_front(&[lo, hi, p(2.0, 20.0)], &lo, &hi).unwrap();
        assert_eq!(n.points, vec![p(0.0, 0.0), p(1.0, 1.0), p(0.5, 0.5)]);
        assert!(normalize_front(&[lo], &lo, &lo).is_err());
    }

    #[test]
    fn hypervolume_cases() {
        assert_eq!(hypervolume_2d(&[p(0.5, 0.5)], &UNIT), 0.25);
        assert_eq!(hypervolume_2d(&[p(0.25, 0.75), p(0.75, 0.25)], &UNIT), 0.3125);
        assert_eq!(hypervolume_2d(&[p(1.0, 1.0)], &UNIT), 0.0);
        assert_eq!(hypervolume_2d(&[], &UNIT), 0.0);
        assert_eq!(hypervolume_2d(&[p(1.5, 0.2), p(f64::NAN, 0.1)], &UNIT), 0.0);
        assert_eq!(hypervolume_2d(&[p(0.0, 0.0)], &UNIT), 1.0);
    }

    #[test]
    fn hypervolume_matches_monte_carlo() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let n = rng.gen_range(1..=20);
            let pts: Vec<_> = (0..n).map(|_| p(rng.gen(), rng.gen())).collect();
            let samples = 200_000;
            let hits = (0..samples)
                .filter(|_| {
                    let q = p(rng.gen(), rng.gen());
                    pts.iter().any(|a| a.f1 <= q.f1 && a.f2 <= q.f2)
                })
                .count();
            let est = hits as f64 / samples as f64;
            let se = (est * (1.0 - est) / samples as f64).sqrt().max(1e-9);
            assert!((hypervolume_2d(&pts, &UNIT) - est).abs() <= 4.0 * se);
        }
    }

    fn unit_points() -> impl Strategy<Value = Vec<ObjectivePoint>> {
        proptest::collection::vec((0.0..1.0f64, 0.0..1.0f64), 0..30)
            .prop_map(|v| v.into_iter().map(|(a, b)| p(a, b)).collect())
    }

    proptest! {
        #[test]
        fn filtering_does_not_change_volume(pts in unit_points()) {
            prop_assert_eq!(hypervolume_2d(&pts, &UNIT), hypervolume_2d(&pareto_filter(&pts), &UNIT));
        }

        #[test]
        fn adding_a_point_never_lowers_volume(pts in unit_points(), a in 0.0..1.0f64, b in 0.0..1.0f64) {
            let mut more = pts.clone();
            more.push(p(a, b));
            prop_assert!(hypervolume_2d(&more, &UNIT) >= hypervolume_2d(&pts, &UNIT) - 1e-15);
        }

        #[test]
        fn volume_is_within_unit_square(pts in unit_points()) {
            let v = hypervolume_2d(&pts, &UNIT);
            prop_assert!((0.0..=1.0).contains(&v));
        }

        #[test]
        fn normalization_keeps_dominance(raw in proptest::collection::vec((-50.0..50.0f64, 0.0..10.0f64), 2..30)) {
            let pts: Vec<_> = raw.iter().map(|&(a, b)| p(a, b)).collect();
            if let Ok((lo, hi)) = ideal_and_nadir(&pts) {
                let n = normalize_front(&pts, &lo, &hi).unwrap();
                for (i, a) in pts.iter().enumerate() {
                    let na = n.points[i];
                    prop_assert!((-1e-12..=1.0 + 1e-12).contains(&na.f1) && (-1e-12..=1.0 + 1e-12).contains(&na.f2));
                    for (j, b) in pts.iter().enumerate() {
                        prop_assert_eq!(crate::pareto::dominates(a, b), crate::pareto::dominates(&na, &n.points[j]));
                    }
                }
            }
        }
    }
}
