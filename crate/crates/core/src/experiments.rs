//! Parameter sweeps, representative solutions and the three-method
//! comparison.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::io::parameter_provenance;
use crate::metrics::{hypervolume_2d, ideal_and_nadir, normalize_front};
use crate::model::{ControlValue, ModelParameters};
use crate::par::map_slice;
use crate::pareto::ObjectivePoint;
use crate::scalarize::{
    epsilon_ladder, estimate_ideal, weight_grid, weighted_front, FrontPoint, Method, ReferencePoint, SolverSettings,
    TradeoffFront,
};
use crate::sim::ControlSchedule;

/// Feasibility slack when picking representatives.
pub const REPRESENTATIVE_TOL: f64 = 1e-6;

/// Default effort levels for representative solutions.
pub const REPRESENTATIVE_LEVELS: [f64; 5] = [0.0, 2.5, 5.0, 7.5, 10.0];

/// Constant control used to start every weighted solve.
pub const WEIGHTED_START: f64 = 0.5;

/// Swept quantity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    #[serde(rename = "beta")]
    Beta,
    #[serde(rename = "N")]
    Population,
    #[serde(rename = "eps1")]
    Eps1,
    #[serde(rename = "eps2")]
    Eps2,
    #[serde(rename = "method")]
    Method,
}

impl Axis {
    pub const ALL: [Axis; 5] = [Axis::Beta, Axis::Population, Axis::Eps1, Axis::Eps2, Axis::Method];

    pub fn name(self) -> &'static str {
        match self {
            Axis::Beta => "beta",
            Axis::Population => "N",
            Axis::Eps1 => "eps1",
            Axis::Eps2 => "eps2",
            Axis::Method => "method",
        }
    }

    /// Parameters with this axis set to `value`. Not meaningful for [`Axis::Method`].
    pub fn apply(self, base: &ModelParameters, value: f64) -> ModelParameters {
        let mut p = *base;
        match self {
            Axis::Beta => p.beta = value,
            Axis::Population => p.population = value,
            Axis::Eps1 => p.eps1 = value,
            Axis::Eps2 => p.eps2 = value,
            Axis::Method => {}
        }
        p
    }
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Axis {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Axis::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| invalid("axis", format!("unknown axis `{s}`")))
    }
}

/// A value taken by the swept axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepValue {
    Scalar(f64),
    Method(Method),
}

impl std::fmt::Display for SweepValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SweepValue::Scalar(v) => write!(f, "{v}"),
            SweepValue::Method(m) => write!(f, "{m}"),
        }
    }
}

/// One sweep: a front per axis value, everything else held at `base`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub axis: Axis,
    pub values: Vec<SweepValue>,
    pub base: ModelParameters,
    pub levels: usize,
    /// Weight vectors per weighted front (method axis only).
    pub weights: usize,
    pub settings: SolverSettings,
    /// Carried into provenance; no solver step is random.
    pub seed: u64,
}

impl SweepSpec {
    pub fn new(axis: Axis, values: Vec<SweepValue>, base: ModelParameters) -> Self {
        Self {
            axis,
            values,
            base,
            levels: 100,
            weights: 100,
            settings: SolverSettings::default(),
            seed: 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.is_empty() {
            return Err(invalid("values", "sweep needs at least one value"));
        }
        self.base.validate()?;
        for v in &self.values {
            match (self.axis, v) {
                (Axis::Method, SweepValue::Method(_)) => {}
                (Axis::Method, SweepValue::Scalar(_)) | (_, SweepValue::Method(_)) => {
                    return Err(invalid("values", format!("value `{v}` does not fit axis `{}`", self.axis)));
                }
                (axis, SweepValue::Scalar(x)) => axis.apply(&self.base, *x).validate()?,
            }
        }
        Ok(())
    }
}

/// Provenance lines shared by every generated front.
pub fn run_provenance(settings: &SolverSettings, seed: u64) -> Vec<(String, String)> {
    vec![
        ("budget".into(), settings.budget.to_string()),
        ("substeps".into(), settings.substeps.to_string()),
        ("constraint_tol".into(), settings.constraint_tol.to_string()),
        ("stationarity_tol".into(), settings.stationarity_tol.to_string()),
        ("seed".into(), seed.to_string()),
    ]
}

/// Front for one method under the given parameters.
pub fn method_front(
    params: &ModelParameters,
    method: Method,
    levels: usize,
    weights: usize,
    settings: &SolverSettings,
) -> Result<TradeoffFront> {
    let mut front = match method {
        Method::EpsilonConstraint => {
            let mut f = epsilon_ladder(params, levels, settings)?;
            f.provenance.push(("levels".into(), levels.to_string()));
            f
        }
        _ => {
            let z = estimate_ideal(params, settings.substeps)?;
            let x0 = ControlSchedule::constant(ControlValue::new(WEIGHTED_START, WEIGHTED_START), params.horizon)?;
            let mut f = weighted_front(params, method, &weight_grid(weights)?, &z, &x0, settings)?;
            f.provenance.extend([
                ("weights".into(), weights.to_string()),
                ("zstar".into(), format!("{} {}", z.z1, z.z2)),
                ("x0".into(), WEIGHTED_START.to_string()),
            ]);
            f
        }
    };
    front.provenance.extend(run_provenance(settings, 0));
    Ok(front)
}

/// Runs one front per axis value. Values are processed concurrently; a
/// value whose front cannot be built at all yields an `Err` in its slot.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<Result<TradeoffFront>>> {
    spec.validate()?;
    Ok(map_slice(&spec.values, spec.settings.execution, |v| {
        let (params, method) = match *v {
            SweepValue::Scalar(x) => (spec.axis.apply(&spec.base, x), Method::EpsilonConstraint),
            SweepValue::Method(m) => (spec.base, m),
        };
        let mut front = method_front(&params, method, spec.levels, spec.weights, &spec.settings)?;
        front.provenance.retain(|(k, _)| k != "seed");
        front.provenance.extend([
            ("axis".into(), spec.axis.to_string()),
            ("value".into(), v.to_string()),
            ("seed".into(), spec.seed.to_string()),
        ]);
        Ok(front)
    }))
}

/// For each level, the lowest-f1 usable point with f2 <= level + 1e-6, or
/// the lowest-f2 point when none qualifies.
pub fn representative_solutions(front: &TradeoffFront, levels: &[f64]) -> Result<Vec<FrontPoint>> {
    let usable: Vec<&FrontPoint> = front.points.iter().filter(|p| p.is_usable()).collect();
    if usable.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let lowest_f2 = usable
        .iter()
        .min_by(|a, b| a.objectives.f2.total_cmp(&b.objectives.f2).then(a.objectives.f1.total_cmp(&b.objectives.f1)))
        .expect("nonempty");
    Ok(levels
        .iter()
        .map(|&level| {
            let best = usable
                .iter()
                .filter(|p| p.objectives.f2 <= level + REPRESENTATIVE_TOL)
                .min_by(|a, b| a.objectives.f1.total_cmp(&b.objectives.f1));
            (*best.unwrap_or(lowest_f2)).clone()
        })
        .collect())
}

/// Hypervolume scores of several methods on a shared normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonReport {
    pub fronts: Vec<TradeoffFront>,
    pub ideal: ObjectivePoint,
    pub nadir: ObjectivePoint,
    /// Normalized hypervolume per front, in the order of `fronts`.
    pub hypervolumes: Vec<f64>,
    /// Methods that produced no usable point.
    pub flagged: Vec<Method>,
}

impl ComparisonReport {
    pub fn hypervolume(&self, method: Method) -> Option<f64> {
        self.fronts.iter().position(|f| f.method == method).map(|k| self.hypervolumes[k])
    }

    /// Plain-text table with one row per method.
    pub fn table(&self) -> String {
        let mut s = format!("{:<22}{}\n", "Method", "Hypervolume");
        for (f, hv) in self.fronts.iter().zip(&self.hypervolumes) {
            let label = match f.method {
                Method::EpsilonConstraint => "epsilon-constraint",
                Method::GoalAttainment => "goal attainment",
                Method::Chebyshev => "Chebyshev",
            };
            s.push_str(&format!("{label:<22}{hv:.5}\n"));
        }
        s
    }
}

/// Scores already-computed fronts against the ideal and nadir of their union.
pub fn score_fronts(fronts: Vec<TradeoffFront>) -> Result<ComparisonReport> {
    let union: Vec<ObjectivePoint> = fronts.iter().flat_map(|f| f.objectives()).collect();
    let (ideal, nadir) = ideal_and_nadir(&union)?;
    let reference = ObjectivePoint::new(1.0, 1.0);
    let mut hypervolumes = Vec::with_capacity(fronts.len());
    let mut flagged = Vec::new();
    for f in &fronts {
        let objs = f.objectives();
        if objs.is_empty() {
            flagged.push(f.method);
            hypervolumes.push(0.0);
            continue;
        }
        let n = normalize_front(&objs, &ideal, &nadir)?;
        hypervolumes.push(hypervolume_2d(&n.points, &reference));
    }
    Ok(ComparisonReport {
        fronts,
        ideal,
        nadir,
        hypervolumes,
        flagged,
    })
}

/// Runs the epsilon ladder and both weighted methods on `base` and scores them.
pub fn compare_methods(
    base: &ModelParameters,
    weights: usize,
    levels: usize,
    settings: &SolverSettings,
    seed: u64,
) -> Result<ComparisonReport> {
    base.validate()?;
    let fronts = map_slice(&Method::ALL, settings.execution, |&m| {
        method_front(base, m, levels, weights, settings).map(|mut f| {
            f.provenance.retain(|(k, _)| k != "seed");
            f.provenance.push(("seed".into(), seed.to_string()));
            f
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    score_fronts(fronts)
}

/// Parameter lines plus run settings, for output headers.
pub fn describe(params: &ModelParameters, settings: &SolverSettings, seed: u64) -> Vec<(String, String)> {
    let mut v = parameter_provenance(params);
    v.extend(run_provenance(settings, seed));
    v
}

/// Reference point used by the weighted methods for `params`.
pub fn reference_point(params: &ModelParameters, settings: &SolverSettings) -> Result<ReferencePoint> {
    estimate_ideal(params, settings.substeps)
}
