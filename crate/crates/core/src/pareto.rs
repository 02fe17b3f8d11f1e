//! Pareto dominance for two minimised objectives.

use serde::{Deserialize, Serialize};

/// An outcome (f1, f2); both objectives are minimised.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ObjectivePoint {
    pub f1: f64,
    pub f2: f64,
}

impl ObjectivePoint {
    pub const fn new(f1: f64, f2: f64) -> Self {
        Self { f1, f2 }
    }

    pub fn is_finite(&self) -> bool {
        self.f1.is_finite() && self.f2.is_finite()
    }

    pub fn get(&self, component: usize) -> f64 {
        match component {
            0 => self.f1,
            1 => self.f2,
            _ => panic!("objective index {component} out of range"),
        }
    }
}

/// `a` is no worse than `b` in both objectives and strictly better in one.
pub fn dominates(a: &ObjectivePoint, b: &ObjectivePoint) -> bool {
    a.f1 <= b.f1 && a.f2 <= b.f2 && (a.f1 < b.f1 || a.f2 < b.f2)
}

/// Indices of the nondominated points, in input order, with exact duplicates
/// collapsed onto their first occurrence.
pub fn nondominated_indices(points: &[ObjectivePoint]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    // Stable sort: ties in (f1, f2) keep input order, so duplicates resolve to
    // the earliest index.
    order.sort_by(|&a, &b| {
        let (p, q) = (&points[a], &points[b]);
        p.f1.total_cmp(&q.f1).then(p.f2.total_cmp(&q.f2))
    });
    let mut best_f2 = f64::INFINITY;
    let mut keep = Vec::new();
    for idx in order {
        // Everything already seen has f1 <= this f1, so any seen f2 <= this f2
        // means weak domination (or a duplicate).
        if points[idx].f2 < best_f2 {
            best_f2 = points[idx].f2;
            keep.push(idx);
        }
    }
    keep.sort_unstable();
    keep
}

/// The points not dominated by any other input point.
pub fn pareto_filter(points: &[ObjectivePoint]) -> Vec<ObjectivePoint> {
    nondominated_indices(points).into_iter().map(|i| points[i]).collect()
}
