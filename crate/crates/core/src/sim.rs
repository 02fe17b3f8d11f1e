//! Fixed-step RK4 integration under a zero-order-hold control schedule, and
//! the objective functionals evaluated on the resulting trajectories.

use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::model::{initial_state, rhs, ControlValue, ModelParameters, StateVector};

/// Number of equal-width control intervals over the horizon.
pub const CONTROL_INTERVALS: usize = 60;

/// Default RK4 steps per control interval (h = T/240).
pub const DEFAULT_SUBSTEPS: usize = 4;

/// Piecewise-constant controls on [`CONTROL_INTERVALS`] equal intervals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControlSchedule {
    values: Vec<ControlValue>,
    horizon: f64,
}

impl ControlSchedule {
    pub fn new(values: Vec<ControlValue>, horizon: f64) -> Result<Self> {
        if values.len() != CONTROL_INTERVALS {
            return Err(Error::InvalidSchedule(format!(
                "expected {CONTROL_INTERVALS} intervals, got {}",
                values.len()
            )));
        }
        if !(horizon.is_finite() && horizon > 0.0) {
            return Err(Error::InvalidSchedule(format!("horizon must be > 0, got {horizon}")));
        }
        if let Some(k) = values.iter().position(|v| !v.is_admissible()) {
            return Err(Error::InvalidSchedule(format!(
                "interval {k} holds {:?}, outside [0,1]^2",
                values[k]
            )));
        }
        Ok(Self { values, horizon })
    }

    pub fn constant(value: ControlValue, horizon: f64) -> Result<Self> {
        Self::new(vec![value; CONTROL_INTERVALS], horizon)
    }

    pub fn zero(horizon: f64) -> Self {
        Self::constant(ControlValue::ZERO, horizon).expect("zero schedule is admissible")
    }

    /// Builds a schedule from a flat decision vector laid out as all u1
    /// values followed by all u2 values.
    pub fn from_decision(x: &[f64], horizon: f64) -> Result<Self> {
        if x.len() != 2 * CONTROL_INTERVALS {
            return Err(Error::InvalidSchedule(format!(
                "decision vector must have {} entries, got {}",
                2 * CONTROL_INTERVALS,
                x.len()
            )));
        }
        let (u1, u2) = x.split_at(CONTROL_INTERVALS);
        let values = u1.iter().zip(u2).map(|(&a, &b)| ControlValue::new(a, b)).collect();
        Self::new(values, horizon)
    }

    pub fn to_decision(&self) -> Vec<f64> {
        let mut x: Vec<f64> = self.values.iter().map(|v| v.u1).collect();
        x.extend(self.values.iter().map(|v| v.u2));
        x
    }

    pub fn values(&self) -> &[ControlValue] {
        &self.values
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn interval_width(&self) -> f64 {
        self.horizon / CONTROL_INTERVALS as f64
    }

    /// Control in force on interval `k`.
    pub fn at_interval(&self, k: usize) -> ControlValue {
        self.values[k.min(CONTROL_INTERVALS - 1)]
    }
}

/// States on the RK4 node grid together with the schedule that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<StateVector>,
    pub schedule: ControlSchedule,
    pub substeps: usize,
}

impl Trajectory {
    /// Uniform spacing of the node grid.
    pub fn step(&self) -> f64 {
        self.schedule.horizon() / (CONTROL_INTERVALS * self.substeps) as f64
    }

    /// Control held at node `j`; a breakpoint node takes the interval it opens,
    /// the final node keeps the last interval's value.
    pub fn control_at_node(&self, j: usize) -> ControlValue {
        self.schedule.at_interval(j / self.substeps)
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

/// Nonnegative weights of the scalar cost with control penalties.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct WeightedCostConfig {
    pub w1: f64,
    pub w2: f64,
}

/// One classical RK4 step for an autonomous right-hand side.
#[inline]
pub fn rk4_step_with<S, F>(y: S, h: f64, f: F) -> S
where
    S: Copy + Add<Output = S> + Mul<f64, Output = S>,
    F: Fn(&S) -> S,
{
    let half = 0.5 * h;
    let k1 = f(&y);
    let k2 = f(&(y + k1 * half));
    let k3 = f(&(y + k2 * half));
    let k4 = f(&(y + k3 * h));
    y + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0)
}

/// RK4 step of the model with the control frozen over the step.
#[inline]
pub fn rk4_step(state: StateVector, control: ControlValue, params: &ModelParameters, h: f64) -> StateVector {
    rk4_step_with(state, h, |x| rhs(x, &control, params))
}

fn check_substeps(substeps: usize) -> Result<()> {
    if substeps == 0 {
        return Err(invalid("substeps", "must be at least 1"));
    }
    Ok(())
}

/// Integrates from the initial state over the full horizon.
pub fn simulate(params: &ModelParameters, schedule: &ControlSchedule, substeps: usize) -> Result<Trajectory> {
    check_substeps(substeps)?;
    let nodes = CONTROL_INTERVALS * substeps + 1;
    let h = schedule.horizon() / (nodes - 1) as f64;
    let mut x = initial_state(params.population)?;
    let mut times = Vec::with_capacity(nodes);
    let mut states = Vec::with_capacity(nodes);
    times.push(0.0);
    states.push(x);
    for (k, &u) in schedule.values().iter().enumerate() {
        for s in 0..substeps {
            x = rk4_step(x, u, params, h);
            let node = k * substeps + s + 1;
            if !x.is_finite() {
                return Err(Error::NumericalBlowup { node, time: node as f64 * h });
            }
            times.push(node as f64 * h);
            states.push(x);
        }
    }
    Ok(Trajectory {
        times,
        states,
        schedule: schedule.clone(),
        substeps,
    })
}

/// Composite trapezoid rule on a uniform grid.
pub fn trapezoid(samples: &[f64], h: f64) -> Result<f64> {
    let n = samples.len();
    if n < 2 {
        return Err(Error::TooFewSamples(n));
    }
    let mut acc = 0.0;
    for (j, &v) in samples.iter().enumerate() {
        acc += if j == 0 || j == n - 1 { 0.5 * v } else { v };
    }
    Ok(h * acc)
}

/// Integral of I + L2 over the horizon (individual-years).
pub fn eval_f1(trajectory: &Trajectory) -> f64 {
    let burden: Vec<f64> = trajectory.states.iter().map(StateVector::burden).collect();
    trapezoid(&burden, trajectory.step()).unwrap_or(0.0)
}

/// Per-control effort integrals (int u1^2, int u2^2), exact for a zero-order hold.
pub fn control_effort(schedule: &ControlSchedule) -> (f64, f64) {
    let (s1, s2) = schedule
        .values()
        .iter()
        .fold((0.0, 0.0), |(a, b), v| (a + v.u1 * v.u1, b + v.u2 * v.u2));
    let t = schedule.horizon();
    let n = CONTROL_INTERVALS as f64;
    (t * s1 / n, t * s2 / n)
}

/// Integral of u1^2 + u2^2 over the horizon.
pub fn eval_f2(schedule: &ControlSchedule) -> f64 {
    effort_for_controls(schedule.values(), schedule.horizon())
}

/// Scalar cost int [I + L2 + W1 u1^2 + W2 u2^2] dt.
pub fn eval_weighted_cost(trajectory: &Trajectory, cfg: &WeightedCostConfig) -> Result<f64> {
    for (name, w) in [("W1", cfg.w1), ("W2", cfg.w2)] {
        if !(w.is_finite() && w >= 0.0) {
            return Err(invalid(name, format!("weight must be >= 0, got {w}")));
        }
    }
    let (e1, e2) = control_effort(&trajectory.schedule);
    Ok(eval_f1(trajectory) + cfg.w1 * e1 + cfg.w2 * e2)
}

/// Allocation-free evaluation of f1 that also keeps interval checkpoints, so
/// a perturbation of the control on interval `k` only re-integrates from the
/// start of `k`. Results are bit-identical to `eval_f1(&simulate(..))`.
#[derive(Debug, Clone)]
pub struct BurdenCheckpoints {
    /// State at the start of each control interval.
    starts: Vec<StateVector>,
    /// Trapezoid accumulator before the first node of each interval.
    partial: Vec<f64>,
    h: f64,
    substeps: usize,
    value: f64,
}

impl BurdenCheckpoints {
    pub fn new(params: &ModelParameters, controls: &[ControlValue], horizon: f64, substeps: usize) -> Result<Self> {
        check_substeps(substeps)?;
        check_len(controls)?;
        let h = horizon / (CONTROL_INTERVALS * substeps) as f64;
        let mut starts = Vec::with_capacity(CONTROL_INTERVALS);
        let mut partial = Vec::with_capacity(CONTROL_INTERVALS);
        let x0 = initial_state(params.population)?;
        let value = integrate_from(params, controls, 0, x0, 0.0, h, substeps, |x, acc| {
            starts.push(x);
            partial.push(acc);
        })?;
        Ok(Self {
            starts,
            partial,
            h,
            substeps,
            value,
        })
    }

    /// f1 of the schedule the checkpoints were built from.
    pub fn value(&self) -> f64 {
        self.value
    }

    /// f1 of `controls`, which must agree with the checkpointed schedule on
    /// every interval before `first_changed`.
    pub fn value_from(&self, params: &ModelParameters, controls: &[ControlValue], first_changed: usize) -> Result<f64> {
        let k = first_changed.min(CONTROL_INTERVALS - 1);
        integrate_from(params, controls, k, self.starts[k], self.partial[k], self.h, self.substeps, |_, _| {})
    }
}

/// f1 without materialising the trajectory.
pub fn burden_integral(params: &ModelParameters, schedule: &ControlSchedule, substeps: usize) -> Result<f64> {
    burden_for_controls(params, schedule.values(), schedule.horizon(), substeps)
}

/// f1 for raw per-interval controls (not checked against the [0,1] box).
pub fn burden_for_controls(params: &ModelParameters, controls: &[ControlValue], horizon: f64, substeps: usize) -> Result<f64> {
    check_substeps(substeps)?;
    check_len(controls)?;
    let h = horizon / (CONTROL_INTERVALS * substeps) as f64;
    let x0 = initial_state(params.population)?;
    integrate_from(params, controls, 0, x0, 0.0, h, substeps, |_, _| {})
}

/// f2 for raw per-interval controls.
pub fn effort_for_controls(controls: &[ControlValue], horizon: f64) -> f64 {
    let sum: f64 = controls.iter().map(|v| v.u1 * v.u1 + v.u2 * v.u2).sum();
    horizon * sum / controls.len() as f64
}

fn check_len(controls: &[ControlValue]) -> Result<()> {
    if controls.len() != CONTROL_INTERVALS {
        return Err(Error::InvalidSchedule(format!(
            "expected {CONTROL_INTERVALS} intervals, got {}",
            controls.len()
        )));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
#[inline]
fn integrate_from(
    params: &ModelParameters,
    controls: &[ControlValue],
    first: usize,
    mut x: StateVector,
    mut acc: f64,
    h: f64,
    substeps: usize,
    mut on_interval: impl FnMut(StateVector, f64),
) -> Result<f64> {
    let last = CONTROL_INTERVALS * substeps;
    for (k, &u) in controls.iter().enumerate().skip(first) {
        on_interval(x, acc);
        for s in 0..substeps {
            let node = k * substeps + s;
            let b = x.burden();
            acc += if node == 0 { 0.5 * b } else { b };
            x = rk4_step(x, u, params, h);
            if !x.is_finite() {
                return Err(Error::NumericalBlowup {
                    node: node + 1,
                    time: (node + 1) as f64 * h,
                });
            }
        }
    }
    debug_assert!(last > 0);
    acc += 0.5 * x.burden();
    Ok(h * acc)
}
