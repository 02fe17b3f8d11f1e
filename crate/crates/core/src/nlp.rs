//! Bound-constrained nonlinear programming with inequality constraints.
//!
//! The solver is an augmented-Lagrangian (Powell-Hestenes-Rockafellar) outer
//! loop around a projected L-BFGS inner loop. Gradients are forward finite
//! differences with step `1e-7 (1 + |x_i|)`, switching to a backward step at
//! an upper bound. Every call of [`NlpProblem::evaluate`] counts against the
//! evaluation budget, including those spent on finite differences.
//!
//! The objective is divided by `max(|f(x0)|, 1)` before solving, so two
//! problems whose objectives differ by a positive factor follow the same
//! iterates.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::{map_indexed, Execution};

/// A minimisation problem `min f(x)` s.t. `c_j(x) <= 0`, `lo <= x <= hi`.
pub trait NlpProblem: Sync {
    fn dim(&self) -> usize;

    fn num_constraints(&self) -> usize;

    /// Bounds of coordinate `i`; either side may be infinite.
    fn bounds(&self, i: usize) -> (f64, f64);

    /// Objective value; constraint values go to `constraints`. A non-finite
    /// return marks the point as unusable.
    fn evaluate(&self, x: &[f64], constraints: &mut [f64]) -> f64;

    /// Fills `grad` (length n) and `jac` (m rows of length n, row-major) at
    /// `x`, given the values there. Returns the evaluations spent.
    fn gradient(&self, x: &[f64], value: f64, constraints: &[f64], exec: Execution, grad: &mut [f64], jac: &mut [f64]) -> usize {
        forward_difference(
            x,
            |i| self.bounds(i),
            value,
            constraints,
            exec,
            |i, xi, out| {
                let mut xp = x.to_vec();
                xp[i] = xi;
                self.evaluate(&xp, out)
            },
            grad,
            jac,
        );
        x.len()
    }
}

/// Finite-difference step for coordinate value `xi` with bounds `(lo, hi)`.
pub fn fd_step(xi: f64, (lo, hi): (f64, f64)) -> f64 {
    let h = 1e-7 * (1.0 + xi.abs());
    if xi + h > hi && xi - h >= lo {
        -h
    } else {
        h
    }
}

/// Forward differences of the objective and every constraint.
/// `eval_at(i, xi, out)` evaluates the point `x` with coordinate `i` replaced by `xi`.
#[allow(clippy::too_many_arguments)]
pub fn forward_difference<B, E>(
    x: &[f64],
    bounds: B,
    value: f64,
    constraints: &[f64],
    exec: Execution,
    eval_at: E,
    grad: &mut [f64],
    jac: &mut [f64],
) where
    B: Fn(usize) -> (f64, f64) + Sync,
    E: Fn(usize, f64, &mut [f64]) -> f64 + Sync + Send,
{
    let n = x.len();
    let m = constraints.len();
    let columns = map_indexed(n, exec, |i| {
        let h = fd_step(x[i], bounds(i));
        // Use the representable step actually taken.
        let xi = x[i] + h;
        let h = xi - x[i];
        let mut c = vec![0.0; m];
        let f = eval_at(i, xi, &mut c);
        let df = (f - value) / h;
        let dc: Vec<f64> = c.iter().zip(constraints).map(|(a, b)| (a - b) / h).collect();
        (df, dc)
    });
    for (i, (df, dc)) in columns.into_iter().enumerate() {
        grad[i] = df;
        for (j, d) in dc.into_iter().enumerate() {
            jac[j * n + i] = d;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    Converged,
    BudgetExhausted,
    Infeasible,
}

impl SolveStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SolveStatus::Converged => "converged",
            SolveStatus::BudgetExhausted => "budget-exhausted",
            SolveStatus::Infeasible => "infeasible",
        }
    }
}

impl std::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for SolveStatus {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "converged" => Ok(SolveStatus::Converged),
            "budget-exhausted" => Ok(SolveStatus::BudgetExhausted),
            "infeasible" => Ok(SolveStatus::Infeasible),
            other => Err(format!("unknown solve status `{other}`")),
        }
    }
}

/// Outcome of one solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub decision: Vec<f64>,
    pub objective: f64,
    /// Largest positive constraint value at `decision` (0 when all hold).
    pub constraint_violation: f64,
    pub evaluations: usize,
    pub status: SolveStatus,
    /// Multiplier estimates, one per constraint.
    pub multipliers: Vec<f64>,
    /// Infinity norm of the projected Lagrangian gradient (scaled objective).
    pub stationarity: f64,
    pub outer_iterations: usize,
}

#[derive(Debug, Clone)]
pub struct NlpOptions {
    pub budget: usize,
    /// Absolute tolerance on `max_j c_j`.
    pub constraint_tol: f64,
    /// Tolerance on the projected gradient norm of the scaled Lagrangian.
    pub stationarity_tol: f64,
    pub initial_penalty: f64,
    pub max_penalty: f64,
    pub max_outer: usize,
    /// L-BFGS memory length.
    pub memory: usize,
    /// Warm-start multipliers; zeros when absent.
    pub initial_multipliers: Option<Vec<f64>>,
    pub execution: Execution,
}

impl Default for NlpOptions {
    fn default() -> Self {
        Self {
            budget: 20_000,
            constraint_tol: 1e-6,
            stationarity_tol: 1e-6,
            initial_penalty: 10.0,
            max_penalty: 1e10,
            max_outer: 40,
            memory: 12,
            initial_multipliers: None,
            execution: Execution::Auto,
        }
    }
}

/// A constraint function `g(x) <= 0`.
pub type ConstraintFn<'a> = &'a (dyn Fn(&[f64]) -> f64 + Sync);

struct Closures<'a, F> {
    objective: &'a F,
    constraints: &'a [ConstraintFn<'a>],
    n: usize,
}

impl<F: Fn(&[f64]) -> f64 + Sync> NlpProblem for Closures<'_, F> {
    fn dim(&self) -> usize {
        self.n
    }
    fn num_constraints(&self) -> usize {
        self.constraints.len()
    }
    fn bounds(&self, _: usize) -> (f64, f64) {
        (0.0, 1.0)
    }
    fn evaluate(&self, x: &[f64], out: &mut [f64]) -> f64 {
        for (o, c) in out.iter_mut().zip(self.constraints) {
            *o = c(x);
        }
        (self.objective)(x)
    }
}

/// Minimises `objective` over the unit box subject to `constraints[j](x) <= 0`.
pub fn solve_nlp<F>(
    objective: &F,
    constraints: &[ConstraintFn<'_>],
    x0: &[f64],
    budget: usize,
) -> Result<SolveReport>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let problem = Closures {
        objective,
        constraints,
        n: x0.len(),
    };
    let opts = NlpOptions {
        budget,
        ..NlpOptions::default()
    };
    solve(&problem, x0, &opts)
}

/// Values and derivatives at one point.
#[derive(Clone)]
struct Point {
    x: Vec<f64>,
    f: f64,
    c: Vec<f64>,
    grad: Vec<f64>,
    jac: Vec<f64>,
}

struct Solver<'a, P: NlpProblem + ?Sized> {
    problem: &'a P,
    opts: &'a NlpOptions,
    n: usize,
    m: usize,
    lo: Vec<f64>,
    hi: Vec<f64>,
    scale: f64,
    evals: usize,
    best_feasible: Option<(Vec<f64>, f64, Vec<f64>)>,
}

impl<'a, P: NlpProblem + ?Sized> Solver<'a, P> {
    fn remaining(&self) -> usize {
        self.opts.budget.saturating_sub(self.evals)
    }

    fn violation(c: &[f64]) -> f64 {
        c.iter().fold(0.0, |v, &cj| v.max(cj))
    }

    /// Scaled objective and constraints at `x`; one evaluation.
    fn eval(&mut self, x: &[f64]) -> (f64, Vec<f64>) {
        let mut c = vec![0.0; self.m];
        let f = self.problem.evaluate(x, &mut c) / self.scale;
        self.evals += 1;
        let ok = f.is_finite() && c.iter().all(|v| v.is_finite());
        if !ok {
            return (f64::INFINITY, c);
        }
        if Self::violation(&c) <= self.opts.constraint_tol
            && self.best_feasible.as_ref().is_none_or(|(_, bf, _)| f < *bf)
        {
            self.best_feasible = Some((x.to_vec(), f, c.clone()));
        }
        (f, c)
    }

    fn differentiate(&mut self, x: Vec<f64>, f: f64, c: Vec<f64>) -> Point {
        let mut grad = vec![0.0; self.n];
        let mut jac = vec![0.0; self.n * self.m];
        let raw_c = c.clone();
        let used = self
            .problem
            .gradient(&x, f * self.scale, &raw_c, self.opts.execution, &mut grad, &mut jac);
        self.evals += used;
        for g in &mut grad {
            *g /= self.scale;
        }
        Point { x, f, c, grad, jac }
    }

    fn project(&self, x: &mut [f64]) {
        for ((v, &l), &h) in x.iter_mut().zip(&self.lo).zip(&self.hi) {
            *v = v.clamp(l, h);
        }
    }

    /// Augmented Lagrangian value.
    fn merit(&self, f: f64, c: &[f64], lambda: &[f64], rho: f64) -> f64 {
        let pen: f64 = c
            .iter()
            .zip(lambda)
            .map(|(&cj, &lj)| {
                let t = (lj + rho * cj).max(0.0);
                (t * t - lj * lj) / (2.0 * rho)
            })
            .sum();
        f + pen
    }

    /// Gradient of the augmented Lagrangian, i.e. of the Lagrangian with
    /// multipliers `max(0, lambda + rho c)`.
    fn merit_grad(&self, p: &Point, lambda: &[f64], rho: f64) -> Vec<f64> {
        let mut g = p.grad.clone();
        for j in 0..self.m {
            let w = (lambda[j] + rho * p.c[j]).max(0.0);
            if w != 0.0 {
                let row = &p.jac[j * self.n..(j + 1) * self.n];
                for (gi, &r) in g.iter_mut().zip(row) {
                    *gi += w * r;
                }
            }
        }
        g
    }

    /// Infinity norm of `P(x - g) - x`.
    fn projected_norm(&self, x: &[f64], g: &[f64]) -> f64 {
        (0..self.n).fold(0.0, |m, i| {
            let t = (x[i] - g[i]).clamp(self.lo[i], self.hi[i]);
            m.max((t - x[i]).abs())
        })
    }

    /// Minimises the augmented Lagrangian from `p` until the projected
    /// gradient falls below `tol`, progress stalls, or the budget runs out.
    fn inner(&mut self, mut p: Point, lambda: &[f64], rho: f64, tol: f64) -> (Point, bool) {
        let n = self.n;
        let mut mem: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::new();
        let mut phi = self.merit(p.f, &p.c, lambda, rho);
        let mut g = self.merit_grad(&p, lambda, rho);
        let mut stalls = 0;
        loop {
            let pg = self.projected_norm(&p.x, &g);
            if pg <= tol {
                return (p, true);
            }
            // Coordinates pinned at a bound by the gradient.
            let eps_b = pg.min(1e-8);
            let free: Vec<bool> = (0..n)
                .map(|i| !((p.x[i] <= self.lo[i] + eps_b && g[i] > 0.0) || (p.x[i] >= self.hi[i] - eps_b && g[i] < 0.0)))
                .collect();

            let mut accepted = None;
            loop {
                let steepest_try = mem.is_empty();
                let d = if steepest_try {
                    steepest(&g, &free)
                } else {
                    let d = lbfgs_direction(&g, &free, &mem);
                    let slope: f64 = d.iter().zip(&g).map(|(a, b)| a * b).sum();
                    if slope < 0.0 {
                        d
                    } else {
                        mem.clear();
                        continue;
                    }
                };
                let dmax = d.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
                if dmax == 0.0 {
                    break;
                }
                // Without curvature information, cap the first trial step.
                let mut alpha = if steepest_try { (0.1 / dmax).min(1.0) } else { 1.0 };
                for _ in 0..40 {
                    if self.remaining() == 0 {
                        break;
                    }
                    let mut xt: Vec<f64> = p.x.iter().zip(&d).map(|(a, b)| a + alpha * b).collect();
                    self.project(&mut xt);
                    let step: Vec<f64> = xt.iter().zip(&p.x).map(|(a, b)| a - b).collect();
                    if step.iter().all(|&s| s == 0.0) {
                        break;
                    }
                    let decrease: f64 = step.iter().zip(&g).map(|(a, b)| a * b).sum();
                    let (ft, ct) = self.eval(&xt);
                    let phit = self.merit(ft, &ct, lambda, rho);
                    if phit.is_finite() && phit <= phi + 1e-4 * decrease {
                        accepted = Some((xt, ft, ct, phit));
                        break;
                    }
                    alpha *= 0.5;
                }
                if accepted.is_some() || steepest_try || self.remaining() == 0 {
                    break;
                }
                mem.clear();
            }

            let Some((xt, ft, ct, phit)) = accepted else {
                return (p, false);
            };
            if self.remaining() < self.n {
                // Not enough budget for another gradient: keep the better point
                // without derivatives refreshed.
                if phit < phi {
                    p.x = xt;
                    p.f = ft;
                    p.c = ct;
                }
                return (p, false);
            }
            let np = self.differentiate(xt, ft, ct);
            let ng = self.merit_grad(&np, lambda, rho);
            let s: Vec<f64> = np.x.iter().zip(&p.x).map(|(a, b)| a - b).collect();
            let y: Vec<f64> = ng.iter().zip(&g).map(|(a, b)| a - b).collect();
            let sy: f64 = s.iter().zip(&y).map(|(a, b)| a * b).sum();
            let yy: f64 = y.iter().map(|v| v * v).sum();
            if sy > 1e-12 * yy.sqrt() * s.iter().map(|v| v * v).sum::<f64>().sqrt() && sy > 0.0 {
                if mem.len() == self.opts.memory {
                    mem.pop_front();
                }
                mem.push_back((s, y, 1.0 / sy));
            }
            if phi - phit <= 1e-15 * (1.0 + phi.abs()) {
                stalls += 1;
                if stalls >= 3 {
                    return (np, false);
                }
            } else {
                stalls = 0;
            }
            p = np;
            g = ng;
            phi = phit;
        }
    }
}

fn steepest(g: &[f64], free: &[bool]) -> Vec<f64> {
    g.iter().zip(free).map(|(&gi, &f)| if f { -gi } else { 0.0 }).collect()
}

/// Two-loop recursion restricted to the free coordinates.
fn lbfgs_direction(g: &[f64], free: &[bool], mem: &VecDeque<(Vec<f64>, Vec<f64>, f64)>) -> Vec<f64> {
    let dot = |a: &[f64], b: &[f64]| -> f64 {
        a.iter().zip(b).zip(free).filter(|(_, &f)| f).map(|((x, y), _)| x * y).sum()
    };
    let mut q: Vec<f64> = g.iter().zip(free).map(|(&v, &f)| if f { v } else { 0.0 }).collect();
    let mut alphas = Vec::with_capacity(mem.len());
    for (s, y, rho) in mem.iter().rev() {
        let a = rho * dot(s, &q);
        for (qi, yi) in q.iter_mut().zip(y) {
            *qi -= a * yi;
        }
        alphas.push(a);
    }
    let (s, y, _) = mem.back().expect("memory is not empty");
    let yy = dot(y, y);
    let gamma = if yy > 0.0 { (dot(s, y) / yy).max(1e-12) } else { 1.0 };
    for qi in &mut q {
        *qi *= gamma;
    }
    for ((s, y, rho), a) in mem.iter().zip(alphas.into_iter().rev()) {
        let b = rho * dot(y, &q);
        for (qi, si) in q.iter_mut().zip(s) {
            *qi += (a - b) * si;
        }
    }
    q.iter().zip(free).map(|(&v, &f)| if f { -v } else { 0.0 }).collect()
}

/// Solves `problem` from `x0`.
pub fn solve<P: NlpProblem + ?Sized>(problem: &P, x0: &[f64], opts: &NlpOptions) -> Result<SolveReport> {
    let n = problem.dim();
    let m = problem.num_constraints();
    if x0.len() != n {
        return Err(Error::InvalidSolverInput(format!("x0 has {} entries, problem has {n}", x0.len())));
    }
    if opts.budget == 0 {
        return Err(Error::InvalidSolverInput("budget must be at least 1".into()));
    }
    let (lo, hi): (Vec<f64>, Vec<f64>) = (0..n).map(|i| problem.bounds(i)).unzip();
    for i in 0..n {
        if !(lo[i] <= x0[i] && x0[i] <= hi[i]) {
            return Err(Error::InvalidSolverInput(format!(
                "x0[{i}] = {} outside [{}, {}]",
                x0[i], lo[i], hi[i]
            )));
        }
    }
    let mut lambda = match &opts.initial_multipliers {
        Some(l) if l.len() == m => l.iter().map(|v| v.max(0.0)).collect(),
        Some(l) => {
            return Err(Error::InvalidSolverInput(format!(
                "{} initial multipliers for {m} constraints",
                l.len()
            )))
        }
        None => vec![0.0; m],
    };

    let mut c0 = vec![0.0; m];
    let f0 = problem.evaluate(x0, &mut c0);
    if !f0.is_finite() {
        return Err(Error::InvalidSolverInput("objective is not finite at x0".into()));
    }
    let mut solver = Solver {
        problem,
        opts,
        n,
        m,
        lo,
        hi,
        scale: f0.abs().max(1.0),
        evals: 1,
        best_feasible: None,
    };
    let f0s = f0 / solver.scale;
    if Solver::<P>::violation(&c0) <= opts.constraint_tol {
        solver.best_feasible = Some((x0.to_vec(), f0s, c0.clone()));
    }

    let finish = |solver: &Solver<P>, p: &Point, lambda: Vec<f64>, status: SolveStatus, stationarity: f64, outer: usize| {
        let (x, f, c, status) = match status {
            SolveStatus::Converged => (p.x.clone(), p.f, p.c.clone(), status),
            _ if Solver::<P>::violation(&p.c) <= opts.constraint_tol && p.f.is_finite() => {
                // Prefer the final iterate unless an earlier feasible one was better.
                match &solver.best_feasible {
                    Some((bx, bf, bc)) if *bf < p.f => (bx.clone(), *bf, bc.clone(), SolveStatus::BudgetExhausted),
                    _ => (p.x.clone(), p.f, p.c.clone(), SolveStatus::BudgetExhausted),
                }
            }
            _ => match &solver.best_feasible {
                Some((bx, bf, bc)) => (bx.clone(), *bf, bc.clone(), SolveStatus::BudgetExhausted),
                None => (p.x.clone(), p.f, p.c.clone(), SolveStatus::Infeasible),
            },
        };
        SolveReport {
            decision: x,
            objective: f * solver.scale,
            constraint_violation: Solver::<P>::violation(&c),
            evaluations: solver.evals,
            status,
            multipliers: lambda,
            stationarity,
            outer_iterations: outer,
        }
    };

    let start = Point {
        x: x0.to_vec(),
        f: f0s,
        c: c0.clone(),
        grad: vec![0.0; n],
        jac: vec![0.0; n * m],
    };
    if solver.remaining() < n {
        return Ok(finish(&solver, &start, lambda, SolveStatus::BudgetExhausted, f64::INFINITY, 0));
    }
    let mut p = solver.differentiate(x0.to_vec(), f0s, c0);

    let mut rho = opts.initial_penalty;
    let mut inner_tol = 1e-3_f64.max(opts.stationarity_tol);
    let mut prev_violation = f64::INFINITY;
    let mut stationarity = f64::INFINITY;
    for outer in 1..=opts.max_outer {
        let (np, _inner_ok) = solver.inner(p, &lambda, rho, inner_tol);
        p = np;
        let violation = Solver::<P>::violation(&p.c);
        // First-order multiplier update.
        for j in 0..m {
            lambda[j] = (lambda[j] + rho * p.c[j]).max(0.0);
        }
        let complementarity = (0..m).fold(0.0_f64, |v, j| v.max((p.c[j].min(0.0) * lambda[j]).abs()));
        let lag = {
            let mut g = p.grad.clone();
            for j in 0..m {
                if lambda[j] != 0.0 {
                    for i in 0..n {
                        g[i] += lambda[j] * p.jac[j * n + i];
                    }
                }
            }
            g
        };
        stationarity = solver.projected_norm(&p.x, &lag);
        let feasible = violation <= opts.constraint_tol;
        if feasible && complementarity <= opts.constraint_tol && stationarity <= opts.stationarity_tol {
            return Ok(finish(&solver, &p, lambda, SolveStatus::Converged, stationarity, outer));
        }
        if solver.remaining() < n + 1 {
            return Ok(finish(&solver, &p, lambda, SolveStatus::BudgetExhausted, stationarity, outer));
        }
        if violation > opts.constraint_tol && violation > 0.25 * prev_violation {
            rho = (rho * 10.0).min(opts.max_penalty);
        }
        prev_violation = violation;
        inner_tol = (inner_tol * 0.1).max(opts.stationarity_tol);
    }
    let outer = opts.max_outer;
    Ok(finish(&solver, &p, lambda, SolveStatus::BudgetExhausted, stationarity, outer))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interior_quadratic() {
        let f = |x: &[f64]| (x[0] - 0.3).powi(2);
        let r = solve_nlp(&f, &[], &[0.9], 20_000).unwrap();
        assert_eq!(r.status, SolveStatus::Converged);
        assert!((r.decision[0] - 0.3).abs() < 1e-6, "{:?}", r);
        assert!(r.objective.abs() < 1e-6);
    }

    #[test]
    fn active_constraint() {
        let f = |x: &[f64]| (x[0] - 0.3).powi(2);
        let c = |x: &[f64]| 0.5 - x[0];
        let r = solve_nlp(&f, &[&c], &[0.9], 20_000).unwrap();
        assert!((r.decision[0] - 0.5).abs() < 1e-5, "{:?}", r);
        assert!(r.constraint_violation <= 1e-6);
        assert!(r.multipliers[0] > 0.0);
    }

    #[test]
    fn separable_in_120_dimensions() {
        let f = |x: &[f64]| x.iter().map(|v| (v - 0.7).powi(2)).sum::<f64>();
        let r = solve_nlp(&f, &[], &vec![0.0; 120], 20_000).unwrap();
        assert!(r.evaluations <= 20_000);
        for v in &r.decision {
            assert!((v - 0.7).abs() < 1e-5, "{v}");
        }
    }

    #[test]
    fn bound_active_solution() {
        // Unconstrained minimum at 1.4, clipped to the upper bound.
        let f = |x: &[f64]| (x[0] - 1.4).powi(2) + (x[1] + 0.2).powi(2);
        let r = solve_nlp(&f, &[], &[0.5, 0.5], 5_000).unwrap();
        assert_eq!(r.decision, vec![1.0, 0.0]);
    }

    #[test]
    fn infeasible_problem_is_flagged() {
        let f = |x: &[f64]| x[0];
        let c = |x: &[f64]| 2.0 - x[0];
        let r = solve_nlp(&f, &[&c], &[0.5], 3_000).unwrap();
        assert_eq!(r.status, SolveStatus::Infeasible);
        assert!(r.evaluations <= 3_000);
    }

    #[test]
    fn budget_is_respected() {
        let f = |x: &[f64]| x.iter().enumerate().map(|(i, v)| (i as f64 + 1.0) * (v - 0.5).powi(2)).sum::<f64>();
        for budget in [1, 5, 50, 121, 400] {
            let r = solve_nlp(&f, &[], &vec![0.0; 30], budget).unwrap();
            assert!(r.evaluations <= budget, "{} > {budget}", r.evaluations);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let f = |x: &[f64]| x[0];
        assert!(solve_nlp(&f, &[], &[1.5], 100).is_err());
        assert!(solve_nlp(&f, &[], &[0.5], 0).is_err());
    }

    #[test]
    fn objective_scaling_does_not_change_iterates() {
        let f = |x: &[f64]| 3.0 * (x[0] - 0.2).powi(2) + (x[1] - x[0]).powi(2) + 5.0;
        let g = |x: &[f64]| 2.0 * f(x);
        let c = |x: &[f64]| x[0] + x[1] - 0.3;
        let a = solve_nlp(&f, &[&c], &[0.9, 0.9], 5_000).unwrap();
        let b = solve_nlp(&g, &[&c], &[0.9, 0.9], 5_000).unwrap();
        assert_eq!(a.decision, b.decision);
        assert_eq!(a.evaluations, b.evaluations);
    }
}
