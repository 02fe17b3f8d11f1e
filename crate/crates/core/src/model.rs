//! Five-compartment tuberculosis model with reinfection and two treatment
//! controls.
//!
//! Compartments are stored as absolute head counts. The population is closed
//! (births balance deaths, no disease mortality), so the five derivatives
//! always sum to zero.

use std::ops::{Add, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Epidemiological constants, treatment efficacies and the time horizon.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelParameters {
    /// Transmission coefficient (1/yr).
    pub beta: f64,
    /// Birth and death rate (1/yr).
    pub mu: f64,
    /// Rate of leaving early latency L1 (1/yr).
    pub delta: f64,
    /// Proportion of L1 exits that progress to active disease.
    pub phi: f64,
    /// Endogenous reactivation rate of persistent latents L2 (1/yr).
    pub omega: f64,
    /// Endogenous reactivation rate of the recovered (1/yr).
    pub omega_r: f64,
    /// Reinfection factor for L2.
    pub sigma: f64,
    /// Reinfection factor for R.
    pub sigma_r: f64,
    /// Treatment recovery rate of I (1/yr).
    pub tau0: f64,
    /// Treatment recovery rate of L1 (1/yr).
    pub tau1: f64,
    /// Treatment recovery rate of L2 (1/yr).
    pub tau2: f64,
    /// Total population.
    #[serde(rename = "N")]
    pub population: f64,
    /// Efficacy of the active-case control u1.
    pub eps1: f64,
    /// Efficacy of the latent-case control u2.
    pub eps2: f64,
    /// Time horizon T (yr).
    pub horizon: f64,
}

impl ModelParameters {
    /// Checks the value ranges every other module relies on.
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("beta", self.beta),
            ("mu", self.mu),
            ("delta", self.delta),
            ("omega", self.omega),
            ("omega_r", self.omega_r),
            ("tau0", self.tau0),
            ("tau1", self.tau1),
            ("tau2", self.tau2),
            ("N", self.population),
            ("horizon", self.horizon),
        ];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(invalid(name, format!("must be finite and > 0, got {v}")));
            }
        }
        for (name, v) in [("phi", self.phi), ("sigma", self.sigma), ("sigma_r", self.sigma_r)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(invalid(name, format!("must lie in [0, 1], got {v}")));
            }
        }
        for (name, v) in [("eps1", self.eps1), ("eps2", self.eps2)] {
            if !(v > 0.0 && v < 1.0) {
                return Err(invalid(name, format!("must lie in (0, 1), got {v}")));
            }
        }
        Ok(())
    }

    /// Force of infection per susceptible, beta * I / N.
    #[inline]
    fn infection_rate(&self, infectious: f64) -> f64 {
        self.beta / self.population * infectious
    }
}

impl Default for ModelParameters {
    /// Base configuration: beta = 100, N = 30000, eps1 = eps2 = 0.5.
    fn default() -> Self {
        default_parameters(100.0, 30_000.0, 0.5, 0.5).expect("base configuration is valid")
    }
}

/// Tabulated constants with the four experiment knobs supplied by the caller.
pub fn default_parameters(beta: f64, population: f64, eps1: f64, eps2: f64) -> Result<ModelParameters> {
    let params = ModelParameters {
        beta,
        mu: 1.0 / 70.0,
        delta: 12.0,
        phi: 0.05,
        omega: 0.0002,
        omega_r: 0.00002,
        sigma: 0.25,
        sigma_r: 0.25,
        tau0: 2.0,
        tau1: 2.0,
        tau2: 1.0,
        population,
        eps1,
        eps2,
        horizon: 5.0,
    };
    params.validate()?;
    Ok(params)
}

/// Compartment sizes at one instant (or their time derivatives).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct StateVector {
    pub s: f64,
    pub l1: f64,
    pub i: f64,
    pub l2: f64,
    pub r: f64,
}

impl StateVector {
    pub const fn new(s: f64, l1: f64, i: f64, l2: f64, r: f64) -> Self {
        Self { s, l1, i, l2, r }
    }

    pub fn to_array(self) -> [f64; 5] {
        [self.s, self.l1, self.i, self.l2, self.r]
    }

    pub fn total(&self) -> f64 {
        self.s + self.l1 + self.i + self.l2 + self.r
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }

    /// Active infectious plus persistent latent, the burden being minimised.
    #[inline]
    pub fn burden(&self) -> f64 {
        self.i + self.l2
    }
}

impl Add for StateVector {
    type Output = Self;
    #[inline]
    fn add(self, o: Self) -> Self {
        Self::new(self.s + o.s, self.l1 + o.l1, self.i + o.i, self.l2 + o.l2, self.r + o.r)
    }
}

impl Mul<f64> for StateVector {
    type Output = Self;
    #[inline]
    fn mul(self, k: f64) -> Self {
        Self::new(self.s * k, self.l1 * k, self.i * k, self.l2 * k, self.r * k)
    }
}

/// Instantaneous control intensities, each in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct ControlValue {
    pub u1: f64,
    pub u2: f64,
}

impl ControlValue {
    pub const ZERO: Self = Self { u1: 0.0, u2: 0.0 };
    pub const FULL: Self = Self { u1: 1.0, u2: 1.0 };

    pub const fn new(u1: f64, u2: f64) -> Self {
        Self { u1, u2 }
    }

    pub fn is_admissible(&self) -> bool {
        (0.0..=1.0).contains(&self.u1) && (0.0..=1.0).contains(&self.u2)
    }
}

/// Initial compartments as fixed fractions (76, 37, 4, 2, 1)/120 of N.
pub fn initial_state(population: f64) -> Result<StateVector> {
    if !(population.is_finite() && population > 0.0) {
        return Err(invalid("N", format!("must be finite and > 0, got {population}")));
    }
    let frac = |k: f64| k * population / 120.0;
    Ok(StateVector::new(frac(76.0), frac(37.0), frac(4.0), frac(2.0), frac(1.0)))
}

/// Right-hand side of the controlled model.
#[inline]
pub fn rhs(x: &StateVector, u: &ControlValue, p: &ModelParameters) -> StateVector {
    let lambda = p.infection_rate(x.i);
    let treat_i = p.tau0 + p.eps1 * u.u1;
    let treat_l2 = p.tau2 + p.eps2 * u.u2;

    let infect_s = lambda * x.s;
    let reinfect_l2 = p.sigma * lambda * x.l2;
    let reinfect_r = p.sigma_r * lambda * x.r;

    let ds = p.mu * p.population - infect_s - p.mu * x.s;
    let dl1 = infect_s + reinfect_l2 + reinfect_r - (p.delta + p.tau1 + p.mu) * x.l1;
    let di = p.phi * p.delta * x.l1 + p.omega * x.l2 + p.omega_r * x.r - (treat_i + p.mu) * x.i;
    let dl2 = (1.0 - p.phi) * p.delta * x.l1 - reinfect_l2 - (p.omega + treat_l2 + p.mu) * x.l2;
    let dr = treat_i * x.i + p.tau1 * x.l1 + treat_l2 * x.l2 - reinfect_r - (p.omega_r + p.mu) * x.r;

    StateVector::new(ds, dl1, di, dl2, dr)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> ModelParameters {
        default_parameters(100.0, 30_000.0, 0.5, 0.5).unwrap()
    }

    #[test]
    fn tabulated_constants() {
        let p = base();
        assert_eq!(p.mu, 1.0 / 70.0);
        assert_eq!(p.delta, 12.0);
        assert_eq!(p.tau2, 1.0);
        assert_eq!(p.horizon, 5.0);
        assert_eq!((p.omega, p.omega_r), (0.0002, 0.00002));
        assert!(default_parameters(75.0, 30_000.0, 0.25, 0.25).is_ok());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(default_parameters(100.0, 30_000.0, 1.5, 0.5).is_err());
        assert!(default_parameters(100.0, 30_000.0, 0.5, 0.0).is_err());
        assert!(default_parameters(0.0, 30_000.0, 0.5, 0.5).is_err());
        assert!(default_parameters(100.0, -1.0, 0.5, 0.5).is_err());
    }

    #[test]
    fn initial_fractions() {
        assert_eq!(initial_state(30_000.0).unwrap(), StateVector::new(19_000.0, 9_250.0, 1_000.0, 500.0, 250.0));
        assert_eq!(initial_state(120.0).unwrap(), StateVector::new(76.0, 37.0, 4.0, 2.0, 1.0));
        assert_eq!(initial_state(40_000.0).unwrap().total(), 40_000.0);
        assert!(initial_state(0.0).is_err());
    }

    #[test]
    fn disease_free_fixed_point() {
        let p = base();
        let d = rhs(&StateVector::new(p.population, 0.0, 0.0, 0.0, 0.0), &ControlValue::ZERO, &p);
        assert_eq!(d, StateVector::default());
    }

    #[test]
    fn susceptible_derivative_by_hand() {
        let p = default_parameters(100.0, 120.0, 0.5, 0.5).unwrap();
        let d = rhs(&StateVector::new(76.0, 37.0, 4.0, 2.0, 1.0), &ControlValue::ZERO, &p);
        // 120/70 - (100/120)*4*76 - 76/70
        assert!((d.s - (-252.704_761_904_761_9)).abs() < 1e-9, "{}", d.s);
        assert!(d.total().abs() < 1e-12 * 300.0);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn state() -> impl Strategy<Value = [f64; 5]> {
            proptest::array::uniform5(0.0..1.0e5f64)
        }

        proptest! {
            #[test]
            fn derivatives_sum_to_zero(x in state(), u1 in 0.0..=1.0f64, u2 in 0.0..=1.0f64,
                                      beta in prop::sample::select(vec![75.0, 100.0, 150.0, 175.0])) {
                let mut p = default_parameters(beta, 30_000.0, 0.5, 0.5).unwrap();
                p.population = x.iter().sum::<f64>().max(1.0);
                let s = StateVector::new(x[0], x[1], x[2], x[3], x[4]);
                let d = rhs(&s, &ControlValue::new(u1, u2), &p);
                let scale = d.to_array().iter().fold(p.population * p.mu, |m, v| m.max(v.abs()));
                prop_assert!(d.total().abs() <= 1e-12 * scale.max(1.0) * 10.0);
            }

            #[test]
            fn scale_equivariant(x in state(), k in 0.1..10.0f64, u1 in 0.0..=1.0f64, u2 in 0.0..=1.0f64) {
                let p = base();
                let s = StateVector::new(x[0], x[1], x[2], x[3], x[4]);
                let mut pk = p;
                pk.population *= k;
                let u = ControlValue::new(u1, u2);
                let lhs = rhs(&(s * k), &u, &pk);
                let rhs_ = rhs(&s, &u, &p) * k;
                // Roundoff is relative to the largest term, not to the (possibly cancelled) sum.
                let xmax = x.iter().cloned().fold(1.0, f64::max);
                let term_scale = k * (p.beta / p.population * xmax * xmax + 20.0 * xmax);
                for (a, b) in lhs.to_array().iter().zip(rhs_.to_array()) {
                    prop_assert!((a - b).abs() <= 1e-12 * term_scale);
                }
            }
        }
    }
}
