//! Scalarizations of the burden/effort trade-off and the trade-off fronts
//! they generate.
//!
//! Three single-objective reformulations are provided, all solved with
//! [`crate::nlp`] over the 120 interval controls:
//!
//! * epsilon-constraint: minimise f1 subject to f2 <= eps;
//! * goal attainment: minimise alpha >= 0 subject to w_i (f_i - z_i) <= alpha;
//! * augmented Chebyshev: minimise t + rho * sum_i w_i (f_i - z_i) subject
//!   to w_i (f_i - z_i) <= t, with rho = 1e-4.
//!
//! The two weighted forms divide both constraint rows by a common positive
//! constant taken at the starting point, which leaves the minimiser unchanged.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::model::{ControlValue, ModelParameters};
use crate::nlp::{self, fd_step, NlpOptions, NlpProblem, SolveReport, SolveStatus};
use crate::par::{map_indexed, map_slice, Execution};
use crate::pareto::{nondominated_indices, ObjectivePoint};
use crate::sim::{
    burden_for_controls, burden_integral, effort_for_controls, eval_f2, BurdenCheckpoints, ControlSchedule,
    CONTROL_INTERVALS, DEFAULT_SUBSTEPS,
};

/// Augmentation coefficient of the Chebyshev scalarization.
pub const CHEBYSHEV_RHO: f64 = 1e-4;

/// Nonnegative weights summing to one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightVector {
    pub w1: f64,
    pub w2: f64,
}

impl WeightVector {
    pub fn new(w1: f64, w2: f64) -> Result<Self> {
        if !(w1 >= 0.0 && w2 >= 0.0) || (w1 + w2 - 1.0).abs() > 1e-12 {
            return Err(invalid("weights", format!("need w1, w2 >= 0 with w1 + w2 = 1, got ({w1}, {w2})")));
        }
        Ok(Self { w1, w2 })
    }
}

/// `count` evenly spaced weight vectors from (0, 1) to (1, 0).
pub fn weight_grid(count: usize) -> Result<Vec<WeightVector>> {
    if count < 2 {
        return Err(invalid("count", format!("weight grid needs at least 2 vectors, got {count}")));
    }
    Ok((0..count)
        .map(|k| {
            let w1 = k as f64 / (count - 1) as f64;
            WeightVector { w1, w2: 1.0 - w1 }
        })
        .collect())
}

/// Reference point z* of the weighted scalarizations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReferencePoint {
    pub z1: f64,
    pub z2: f64,
}

/// Scalarization method.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    EpsilonConstraint,
    GoalAttainment,
    Chebyshev,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::EpsilonConstraint, Method::GoalAttainment, Method::Chebyshev];

    pub fn name(self) -> &'static str {
        match self {
            Method::EpsilonConstraint => "epsilon-constraint",
            Method::GoalAttainment => "goal-attainment",
            Method::Chebyshev => "chebyshev",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| invalid("method", format!("unknown method `{s}`")))
    }
}

/// Solver settings shared by all scalarized solves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings {
    /// Evaluation budget per solve.
    pub budget: usize,
    /// RK4 steps per control interval.
    pub substeps: usize,
    pub constraint_tol: f64,
    pub stationarity_tol: f64,
    pub execution: Execution,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self {
            budget: 20_000,
            substeps: DEFAULT_SUBSTEPS,
            constraint_tol: 1e-6,
            stationarity_tol: 1e-6,
            execution: Execution::Auto,
        }
    }
}

impl SolverSettings {
    fn nlp_options(&self, multipliers: Option<&[f64]>) -> NlpOptions {
        NlpOptions {
            budget: self.budget,
            constraint_tol: self.constraint_tol,
            stationarity_tol: self.stationarity_tol,
            initial_multipliers: multipliers.map(<[f64]>::to_vec),
            execution: self.execution,
            ..NlpOptions::default()
        }
    }
}

/// A vector objective (f1, f2) over a box-constrained decision vector.
pub trait BiObjective: Sync {
    fn dim(&self) -> usize;

    fn bounds(&self, _i: usize) -> (f64, f64) {
        (0.0, 1.0)
    }

    /// Objective pair; non-finite values flag an unusable point.
    fn evaluate(&self, x: &[f64]) -> (f64, f64);

    /// Objectives at `x` and at every single-coordinate replacement
    /// `x[i] <- new_values[i]`, plus the evaluations spent.
    fn perturbed(&self, x: &[f64], new_values: &[f64], exec: Execution) -> ((f64, f64), Vec<(f64, f64)>, usize) {
        let base = self.evaluate(x);
        let vals = map_indexed(x.len(), exec, |i| {
            let mut xp = x.to_vec();
            xp[i] = new_values[i];
            self.evaluate(&xp)
        });
        (base, vals, x.len() + 1)
    }
}

/// Wraps a closure `x -> (f1, f2)` over the unit box.
pub struct FnBiObjective<F> {
    pub f: F,
    pub dim: usize,
}

impl<F: Fn(&[f64]) -> (f64, f64) + Sync> BiObjective for FnBiObjective<F> {
    fn dim(&self) -> usize {
        self.dim
    }
    fn evaluate(&self, x: &[f64]) -> (f64, f64) {
        (self.f)(x)
    }
}

/// (f1, f2) of the tuberculosis model as a function of the decision vector
/// `[u1_0 .. u1_59, u2_0 .. u2_59]`.
#[derive(Debug, Clone, Copy)]
pub struct TbObjectives {
    pub params: ModelParameters,
    pub substeps: usize,
}

impl TbObjectives {
    pub fn new(params: &ModelParameters, substeps: usize) -> Self {
        Self {
            params: *params,
            substeps,
        }
    }

    fn controls(x: &[f64]) -> Vec<ControlValue> {
        let (u1, u2) = x.split_at(CONTROL_INTERVALS);
        u1.iter().zip(u2).map(|(&a, &b)| ControlValue::new(a, b)).collect()
    }
}

impl BiObjective for TbObjectives {
    fn dim(&self) -> usize {
        2 * CONTROL_INTERVALS
    }

    fn evaluate(&self, x: &[f64]) -> (f64, f64) {
        let c = Self::controls(x);
        let f1 = burden_for_controls(&self.params, &c, self.params.horizon, self.substeps).unwrap_or(f64::INFINITY);
        (f1, effort_for_controls(&c, self.params.horizon))
    }

    /// A change on interval k leaves the trajectory before k untouched, so
    /// each perturbed run restarts from the checkpoint at k.
    fn perturbed(&self, x: &[f64], new_values: &[f64], exec: Execution) -> ((f64, f64), Vec<(f64, f64)>, usize) {
        let base_controls = Self::controls(x);
        let t = self.params.horizon;
        let n = x.len();
        let Ok(cp) = BurdenCheckpoints::new(&self.params, &base_controls, t, self.substeps) else {
            return ((f64::INFINITY, f64::INFINITY), vec![(f64::INFINITY, f64::INFINITY); n], n + 1);
        };
        let base = (cp.value(), effort_for_controls(&base_controls, t));
        let vals = map_indexed(n, exec, |i| {
            let mut c = base_controls.clone();
            let k = i % CONTROL_INTERVALS;
            if i < CONTROL_INTERVALS {
                c[k].u1 = new_values[i];
            } else {
                c[k].u2 = new_values[i];
            }
            let f1 = cp.value_from(&self.params, &c, k).unwrap_or(f64::INFINITY);
            (f1, effort_for_controls(&c, t))
        });
        (base, vals, n + 1)
    }
}

#[derive(Debug, Clone, Copy)]
enum Scalarization {
    Epsilon { eps: f64 },
    Goal { w: WeightVector, z: ReferencePoint, scale: f64 },
    Chebyshev { w: WeightVector, z: ReferencePoint, scale: f64 },
}

impl Scalarization {
    fn has_aux(&self) -> bool {
        !matches!(self, Scalarization::Epsilon { .. })
    }

    fn num_constraints(&self) -> usize {
        if self.has_aux() {
            2
        } else {
            1
        }
    }

    /// Scaled weighted deviations w_i (f_i - z_i) / scale.
    fn deviations(w: &WeightVector, z: &ReferencePoint, scale: f64, f1: f64, f2: f64) -> [f64; 2] {
        [w.w1 * (f1 - z.z1) / scale, w.w2 * (f2 - z.z2) / scale]
    }

    fn apply(&self, f1: f64, f2: f64, aux: f64, out: &mut [f64]) -> f64 {
        if !(f1.is_finite() && f2.is_finite()) {
            return f64::INFINITY;
        }
        match *self {
            Scalarization::Epsilon { eps } => {
                out[0] = f2 - eps;
                f1
            }
            Scalarization::Goal { w, z, scale } => {
                let d = Self::deviations(&w, &z, scale, f1, f2);
                out[0] = d[0] - aux;
                out[1] = d[1] - aux;
                aux
            }
            Scalarization::Chebyshev { w, z, scale } => {
                let d = Self::deviations(&w, &z, scale, f1, f2);
                out[0] = d[0] - aux;
                out[1] = d[1] - aux;
                aux + CHEBYSHEV_RHO * (d[0] + d[1])
            }
        }
    }
}

struct ScalarizedProblem<'a, B: ?Sized> {
    objectives: &'a B,
    kind: Scalarization,
}

impl<B: BiObjective + ?Sized> NlpProblem for ScalarizedProblem<'_, B> {
    fn dim(&self) -> usize {
        self.objectives.dim() + usize::from(self.kind.has_aux())
    }

    fn num_constraints(&self) -> usize {
        self.kind.num_constraints()
    }

    fn bounds(&self, i: usize) -> (f64, f64) {
        if i < self.objectives.dim() {
            self.objectives.bounds(i)
        } else if matches!(self.kind, Scalarization::Goal { .. }) {
            (0.0, f64::INFINITY)
        } else {
            (f64::NEG_INFINITY, f64::INFINITY)
        }
    }

    fn evaluate(&self, x: &[f64], constraints: &mut [f64]) -> f64 {
        let nd = self.objectives.dim();
        let (f1, f2) = self.objectives.evaluate(&x[..nd]);
        let aux = x.get(nd).copied().unwrap_or(0.0);
        self.kind.apply(f1, f2, aux, constraints)
    }

    fn gradient(&self, x: &[f64], value: f64, constraints: &[f64], exec: Execution, grad: &mut [f64], jac: &mut [f64]) -> usize {
        let n = x.len();
        let nd = self.objectives.dim();
        let m = constraints.len();
        let new_values: Vec<f64> = (0..nd).map(|i| x[i] + fd_step(x[i], self.bounds(i))).collect();
        let (base, perturbed, mut used) = self.objectives.perturbed(&x[..nd], &new_values, exec);
        let aux = x.get(nd).copied().unwrap_or(0.0);
        let mut c = vec![0.0; m];
        for (i, &(f1, f2)) in perturbed.iter().enumerate() {
            let h = new_values[i] - x[i];
            let v = self.kind.apply(f1, f2, aux, &mut c);
            grad[i] = (v - value) / h;
            for j in 0..m {
                jac[j * n + i] = (c[j] - constraints[j]) / h;
            }
        }
        if self.kind.has_aux() {
            let ax = aux + fd_step(aux, self.bounds(nd));
            let h = ax - aux;
            let v = self.kind.apply(base.0, base.1, ax, &mut c);
            grad[nd] = (v - value) / h;
            for j in 0..m {
                jac[j * n + nd] = (c[j] - constraints[j]) / h;
            }
            used += 1;
        }
        used
    }
}

/// Result of a generic scalarized solve.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarSolve {
    pub report: SolveReport,
    /// Objective pair at the returned decision (auxiliary variable stripped).
    pub objectives: ObjectivePoint,
}

fn finish<B: BiObjective + ?Sized>(objectives: &B, report: SolveReport) -> ScalarSolve {
    let nd = objectives.dim();
    let (f1, f2) = objectives.evaluate(&report.decision[..nd]);
    ScalarSolve {
        report,
        objectives: ObjectivePoint::new(f1, f2),
    }
}

/// Minimises f1 subject to f2 <= eps.
pub fn epsilon_constraint_with<B: BiObjective + ?Sized>(
    objectives: &B,
    eps: f64,
    x0: &[f64],
    multipliers: Option<&[f64]>,
    settings: &SolverSettings,
) -> Result<ScalarSolve> {
    let problem = ScalarizedProblem {
        objectives,
        kind: Scalarization::Epsilon { eps },
    };
    let report = nlp::solve(&problem, x0, &settings.nlp_options(multipliers))?;
    Ok(finish(objectives, report))
}

fn weighted_with<B: BiObjective + ?Sized>(
    objectives: &B,
    w: &WeightVector,
    z: &ReferencePoint,
    x0: &[f64],
    goal: bool,
    settings: &SolverSettings,
) -> Result<ScalarSolve> {
    if !(z.z1.is_finite() && z.z2.is_finite()) {
        return Err(invalid("zstar", "reference point must be finite"));
    }
    let (f1, f2) = objectives.evaluate(x0);
    if !(f1.is_finite() && f2.is_finite()) {
        return Err(Error::InvalidSolverInput("objectives are not finite at x0".into()));
    }
    let raw = Scalarization::deviations(w, z, 1.0, f1, f2);
    let scale = raw[0].abs().max(raw[1].abs()).max(1.0);
    let kind = if goal {
        Scalarization::Goal { w: *w, z: *z, scale }
    } else {
        Scalarization::Chebyshev { w: *w, z: *z, scale }
    };
    // Start on the boundary of the epigraph, which is feasible.
    let mut aux0 = (raw[0].max(raw[1])) / scale;
    if goal {
        aux0 = aux0.max(0.0);
    }
    let mut start = x0.to_vec();
    start.push(aux0);
    let problem = ScalarizedProblem { objectives, kind };
    let report = nlp::solve(&problem, &start, &settings.nlp_options(None))?;
    Ok(finish(objectives, report))
}

/// Goal attainment: minimise alpha >= 0 subject to w_i (f_i - z_i) <= alpha.
pub fn goal_attainment_with<B: BiObjective + ?Sized>(
    objectives: &B,
    w: &WeightVector,
    z: &ReferencePoint,
    x0: &[f64],
    settings: &SolverSettings,
) -> Result<ScalarSolve> {
    weighted_with(objectives, w, z, x0, true, settings)
}

/// Augmented Chebyshev: minimise max_i w_i (f_i - z_i) + rho sum_i w_i (f_i - z_i).
pub fn chebyshev_with<B: BiObjective + ?Sized>(
    objectives: &B,
    w: &WeightVector,
    z: &ReferencePoint,
    x0: &[f64],
    settings: &SolverSettings,
) -> Result<ScalarSolve> {
    weighted_with(objectives, w, z, x0, false, settings)
}

/// One solved point of a trade-off front.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontPoint {
    /// Scalarization parameter: eps for the epsilon-constraint method, w1 otherwise.
    pub parameter: f64,
    pub objectives: ObjectivePoint,
    pub schedule: ControlSchedule,
    pub solve: SolveReport,
}

impl FrontPoint {
    pub fn is_usable(&self) -> bool {
        self.solve.status != SolveStatus::Infeasible && self.objectives.is_finite()
    }
}

/// A solve that failed outright (as opposed to finishing with a non-converged status).
#[derive(Debug, Clone, PartialEq)]
pub struct SolveFailure {
    pub index: usize,
    pub parameter: f64,
    pub message: String,
}

/// An ordered collection of solved points for one parameter set and method.
#[derive(Debug, Clone, PartialEq)]
pub struct TradeoffFront {
    pub method: Method,
    pub params: ModelParameters,
    pub points: Vec<FrontPoint>,
    pub failures: Vec<SolveFailure>,
    /// Free-form key/value pairs recorded in output headers.
    pub provenance: Vec<(String, String)>,
}

impl TradeoffFront {
    /// Objectives of every usable point, in order.
    pub fn objectives(&self) -> Vec<ObjectivePoint> {
        self.points.iter().filter(|p| p.is_usable()).map(|p| p.objectives).collect()
    }

    /// Usable points not dominated by any other usable point.
    pub fn pareto_view(&self) -> Vec<&FrontPoint> {
        let usable: Vec<&FrontPoint> = self.points.iter().filter(|p| p.is_usable()).collect();
        let objs: Vec<ObjectivePoint> = usable.iter().map(|p| p.objectives).collect();
        nondominated_indices(&objs).into_iter().map(|i| usable[i]).collect()
    }

    pub fn successes(&self) -> usize {
        self.points.iter().filter(|p| p.is_usable()).count()
    }
}

/// Builds a front point from a TB solve, re-evaluating the objectives from the schedule.
fn tb_point(params: &ModelParameters, parameter: f64, solve: SolveReport, substeps: usize) -> Result<FrontPoint> {
    let schedule = ControlSchedule::from_decision(&solve.decision[..2 * CONTROL_INTERVALS], params.horizon)?;
    let f1 = burden_integral(params, &schedule, substeps)?;
    let f2 = eval_f2(&schedule);
    Ok(FrontPoint {
        parameter,
        objectives: ObjectivePoint::new(f1, f2),
        schedule,
        solve,
    })
}

/// Epsilon-constraint solve for the TB model.
pub fn solve_epsilon_constraint(
    params: &ModelParameters,
    eps: f64,
    x0: &ControlSchedule,
    settings: &SolverSettings,
) -> Result<FrontPoint> {
    solve_epsilon_constraint_warm(params, eps, x0, None, settings)
}

/// As [`solve_epsilon_constraint`], optionally warm-starting the multiplier.
pub fn solve_epsilon_constraint_warm(
    params: &ModelParameters,
    eps: f64,
    x0: &ControlSchedule,
    multipliers: Option<&[f64]>,
    settings: &SolverSettings,
) -> Result<FrontPoint> {
    if !(eps.is_finite() && eps >= 0.0) {
        return Err(invalid("eps", format!("effort bound must be >= 0, got {eps}")));
    }
    if eps == 0.0 {
        // f2 is a sum of squares, so u = 0 is the only feasible schedule.
        let schedule = ControlSchedule::zero(params.horizon);
        let f1 = burden_integral(params, &schedule, settings.substeps)?;
        let report = SolveReport {
            decision: schedule.to_decision(),
            objective: f1,
            constraint_violation: 0.0,
            evaluations: 1,
            status: SolveStatus::Converged,
            multipliers: vec![0.0],
            stationarity: 0.0,
            outer_iterations: 0,
        };
        return Ok(FrontPoint {
            parameter: 0.0,
            objectives: ObjectivePoint::new(f1, 0.0),
            schedule,
            solve: report,
        });
    }
    let objectives = TbObjectives::new(params, settings.substeps);
    let mut solve = epsilon_constraint_with(&objectives, eps, &x0.to_decision(), multipliers, settings)?.report;
    // Pull a slightly infeasible result back onto f2 = eps; f2 is quadratic in u.
    let f2 = {
        let s = ControlSchedule::from_decision(&solve.decision, params.horizon)?;
        eval_f2(&s)
    };
    if f2 > eps {
        let k = (eps / f2).sqrt();
        for v in &mut solve.decision {
            *v *= k;
        }
        let s = ControlSchedule::from_decision(&solve.decision, params.horizon)?;
        let f2n = eval_f2(&s);
        solve.objective = burden_integral(params, &s, settings.substeps)?;
        solve.constraint_violation = (f2n - eps).max(0.0);
        if solve.status == SolveStatus::Infeasible && solve.constraint_violation <= settings.constraint_tol {
            solve.status = SolveStatus::BudgetExhausted;
        }
    }
    tb_point(params, eps, solve, settings.substeps)
}

/// Goal-attainment solve for the TB model.
pub fn solve_goal_attainment(
    params: &ModelParameters,
    w: &WeightVector,
    zstar: &ReferencePoint,
    x0: &ControlSchedule,
    settings: &SolverSettings,
) -> Result<FrontPoint> {
    let objectives = TbObjectives::new(params, settings.substeps);
    let s = goal_attainment_with(&objectives, w, zstar, &x0.to_decision(), settings)?;
    tb_point(params, w.w1, s.report, settings.substeps)
}

/// Augmented Chebyshev solve for the TB model.
pub fn solve_chebyshev(
    params: &ModelParameters,
    w: &WeightVector,
    zstar: &ReferencePoint,
    x0: &ControlSchedule,
    settings: &SolverSettings,
) -> Result<FrontPoint> {
    let objectives = TbObjectives::new(params, settings.substeps);
    let s = chebyshev_with(&objectives, w, zstar, &x0.to_decision(), settings)?;
    tb_point(params, w.w1, s.report, settings.substeps)
}

/// Maximum control effort, attained by u1 = u2 = 1 throughout.
pub fn max_effort(params: &ModelParameters) -> f64 {
    eval_f2(&ControlSchedule::constant(ControlValue::FULL, params.horizon).expect("full control is admissible"))
}

/// Effort bounds `f2_max * k / (levels - 1)`, k = 0..levels.
pub fn epsilon_levels(params: &ModelParameters, levels: usize) -> Result<Vec<f64>> {
    if levels < 2 {
        return Err(invalid("levels", format!("need at least 2 levels, got {levels}")));
    }
    let top = max_effort(params);
    Ok((0..levels).map(|k| top * k as f64 / (levels - 1) as f64).collect())
}

/// Epsilon-constraint ladder over evenly spaced effort bounds, each level
/// warm-started from the previous solution and multiplier.
pub fn epsilon_ladder(params: &ModelParameters, levels: usize, settings: &SolverSettings) -> Result<TradeoffFront> {
    let eps_values = epsilon_levels(params, levels)?;
    let mut points = Vec::with_capacity(levels);
    let mut failures = Vec::new();
    let mut start = ControlSchedule::zero(params.horizon);
    let mut multipliers: Option<Vec<f64>> = None;
    for (k, &eps) in eps_values.iter().enumerate() {
        match solve_epsilon_constraint_warm(params, eps, &start, multipliers.as_deref(), settings) {
            Ok(p) => {
                if p.is_usable() {
                    start = p.schedule.clone();
                    multipliers = Some(p.solve.multipliers.clone());
                }
                points.push(p);
            }
            Err(e) => failures.push(SolveFailure {
                index: k,
                parameter: eps,
                message: e.to_string(),
            }),
        }
    }
    Ok(TradeoffFront {
        method: Method::EpsilonConstraint,
        params: *params,
        points,
        failures,
        provenance: Vec::new(),
    })
}

/// Ideal point estimate: f1 under full control and zero effort.
pub fn estimate_ideal(params: &ModelParameters, substeps: usize) -> Result<ReferencePoint> {
    let full = ControlSchedule::constant(ControlValue::FULL, params.horizon)?;
    Ok(ReferencePoint {
        z1: burden_integral(params, &full, substeps)?,
        z2: 0.0,
    })
}

/// Independent weighted solves over `weights`, run as a batch.
pub fn weighted_front(
    params: &ModelParameters,
    method: Method,
    weights: &[WeightVector],
    zstar: &ReferencePoint,
    x0: &ControlSchedule,
    settings: &SolverSettings,
) -> Result<TradeoffFront> {
    let solve = match method {
        Method::GoalAttainment => solve_goal_attainment,
        Method::Chebyshev => solve_chebyshev,
        Method::EpsilonConstraint => {
            return Err(invalid("method", "epsilon-constraint fronts come from epsilon_ladder"));
        }
    };
    let results = map_slice(weights, settings.execution, |w| solve(params, w, zstar, x0, settings));
    let mut points = Vec::new();
    let mut failures = Vec::new();
    for (k, (r, w)) in results.into_iter().zip(weights).enumerate() {
        match r {
            Ok(p) => points.push(p),
            Err(e) => failures.push(SolveFailure {
                index: k,
                parameter: w.w1,
                message: e.to_string(),
            }),
        }
    }
    Ok(TradeoffFront {
        method,
        params: *params,
        points,
        failures,
        provenance: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::default_parameters;
    use crate::sim::{eval_f1, simulate};

    fn toy() -> FnBiObjective<impl Fn(&[f64]) -> (f64, f64)> {
        FnBiObjective {
            f: |x: &[f64]| (x[0] * x[0], (1.0 - x[0]) * (1.0 - x[0])),
            dim: 1,
        }
    }

    /// max_i w_i f_i(x) minimised on a uniform grid of step 1e-4.
    fn grid_minimiser(w: &WeightVector) -> (f64, f64) {
        (0..=10_000)
            .map(|k| {
                let x = k as f64 * 1e-4;
                (x, (w.w1 * x * x).max(w.w2 * (1.0 - x) * (1.0 - x)))
            })
            .fold((0.0, f64::INFINITY), |best, c| if c.1 < best.1 { c } else { best })
    }

    #[test]
    fn weight_grid_cases() {
        let g = weight_grid(3).unwrap();
        assert_eq!(g, vec![WeightVector { w1: 0.0, w2: 1.0 }, WeightVector { w1: 0.5, w2: 0.5 }, WeightVector { w1: 1.0, w2: 0.0 }]);
        for count in [2, 7, 100, 1000] {
            let g = weight_grid(count).unwrap();
            assert_eq!(g.len(), count);
            assert!(g.iter().all(|w| w.w1 + w.w2 == 1.0 && w.w1 >= 0.0 && w.w2 >= 0.0));
        }
        assert!(weight_grid(1).is_err());
        assert!(WeightVector::new(0.3, 0.6).is_err());
    }

    #[test]
    fn toy_goal_attainment_and_chebyshev_hit_grid_optimum() {
        let w = WeightVector::new(0.5, 0.5).unwrap();
        let z = ReferencePoint { z1: 0.0, z2: 0.0 };
        let (x_grid, v_grid) = grid_minimiser(&w);
        assert!((x_grid - 0.5).abs() < 1e-9 && (v_grid - 0.125).abs() < 1e-9);
        let s = SolverSettings::default();
        let ga = goal_attainment_with(&toy(), &w, &z, &[0.9], &s).unwrap();
        let ch = chebyshev_with(&toy(), &w, &z, &[0.9], &s).unwrap();
        assert!((ga.report.decision[0] - x_grid).abs() < 1e-3, "{:?}", ga.report);
        assert!((ga.report.objective - v_grid).abs() < 1e-4);
        assert!((ch.report.decision[0] - x_grid).abs() < 1e-3, "{:?}", ch.report);
        assert!((ga.report.decision[0] - ch.report.decision[0]).abs() < 1e-4);
    }

    #[test]
    fn toy_degenerate_weights() {
        let z = ReferencePoint { z1: 0.0, z2: 0.0 };
        let s = SolverSettings::default();
        let ga = goal_attainment_with(&toy(), &WeightVector::new(1.0, 0.0).unwrap(), &z, &[0.7], &s).unwrap();
        assert!(ga.report.decision[0] < 1e-3, "{:?}", ga.report);
        let ch = chebyshev_with(&toy(), &WeightVector::new(0.0, 1.0).unwrap(), &z, &[0.2], &s).unwrap();
        assert!(ch.report.decision[0] > 1.0 - 1e-3, "{:?}", ch.report);
    }

    #[test]
    fn toy_epsilon_constraint() {
        // min x^2 s.t. (1-x)^2 <= 0.09  ->  x = 0.7
        let s = SolverSettings::default();
        let r = epsilon_constraint_with(&toy(), 0.09, &[1.0], None, &s).unwrap();
        assert!((r.report.decision[0] - 0.7).abs() < 1e-5, "{:?}", r.report);
        assert!(r.objectives.f2 <= 0.09 + 1e-6);
    }

    #[test]
    fn zero_budget_level_is_uncontrolled() {
        let p = default_parameters(100.0, 30_000.0, 0.5, 0.5).unwrap();
        let s = SolverSettings::default();
        let fp = solve_epsilon_constraint(&p, 0.0, &ControlSchedule::zero(5.0), &s).unwrap();
        assert_eq!(fp.schedule, ControlSchedule::zero(5.0));
        assert_eq!(fp.objectives.f1, eval_f1(&simulate(&p, &ControlSchedule::zero(5.0), 4).unwrap()));
        assert!(solve_epsilon_constraint(&p, -1.0, &ControlSchedule::zero(5.0), &s).is_err());
    }

    #[test]
    fn epsilon_solve_is_feasible_and_consistent() {
        let p = default_parameters(100.0, 30_000.0, 0.5, 0.5).unwrap();
        let s = SolverSettings { budget: 4_000, ..SolverSettings::default() };
        let fp = solve_epsilon_constraint(&p, 2.5, &ControlSchedule::zero(5.0), &s).unwrap();
        assert!(fp.objectives.f2 <= 2.5 + 1e-6);
        assert!(fp.solve.evaluations <= 4_000);
        let traj = simulate(&p, &fp.schedule, 4).unwrap();
        let f1 = eval_f1(&traj);
        assert!((f1 - fp.objectives.f1).abs() <= 1e-9 * f1);
        let uncontrolled = eval_f1(&simulate(&p, &ControlSchedule::zero(5.0), 4).unwrap());
        assert!(fp.objectives.f1 < uncontrolled);
    }

    #[test]
    fn structured_gradient_matches_plain_differences() {
        let p = default_parameters(150.0, 30_000.0, 0.5, 0.75).unwrap();
        let obj = TbObjectives::new(&p, 4);
        let x: Vec<f64> = (0..120).map(|i| ((i * 7) % 11) as f64 / 10.0).collect();
        let new_values: Vec<f64> = x.iter().map(|&v| v + fd_step(v, (0.0, 1.0))).collect();
        let (base, fast, used) = obj.perturbed(&x, &new_values, Execution::Auto);
        assert_eq!(used, 121);
        assert_eq!(base, obj.evaluate(&x));
        for i in (0..120).step_by(13) {
            let mut xp = x.clone();
            xp[i] = new_values[i];
            assert_eq!(fast[i], obj.evaluate(&xp));
        }
    }

    #[test]
    fn parallel_and_sequential_solves_agree() {
        let p = default_parameters(100.0, 30_000.0, 0.5, 0.5).unwrap();
        let par = SolverSettings { budget: 1_500, ..SolverSettings::default() };
        let seq = SolverSettings { execution: Execution::Sequential, ..par };
        let a = solve_epsilon_constraint(&p, 4.0, &ControlSchedule::zero(5.0), &par).unwrap();
        let b = solve_epsilon_constraint(&p, 4.0, &ControlSchedule::zero(5.0), &seq).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("nsga".parse::<Method>().is_err());
    }
}
