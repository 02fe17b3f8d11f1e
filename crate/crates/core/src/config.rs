//! Run configuration read from TOML.
//!
//! ```toml
//! [model]
//! beta = 150.0
//! N = 60000.0
//!
//! [solver]
//! budget = 20000
//! levels = 100
//!
//! [output]
//! dir = "runs/beta150"
//! ```
//!
//! Every key is optional; unknown keys are rejected.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::ModelParameters;
use crate::par::Execution;
use crate::scalarize::SolverSettings;

/// Solver and experiment settings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    /// Evaluation budget per scalarized solve.
    pub budget: usize,
    /// Number of epsilon levels in a ladder.
    pub levels: usize,
    /// Number of weight vectors for the weighted methods.
    pub weights: usize,
    /// RK4 steps per control interval.
    pub substeps: usize,
    pub constraint_tol: f64,
    pub stationarity_tol: f64,
    /// Recorded in output headers. The solvers are deterministic and do not draw from it.
    pub seed: u64,
    /// Run batches on one thread.
    pub sequential: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        let s = SolverSettings::default();
        Self {
            budget: s.budget,
            levels: 100,
            weights: 100,
            substeps: s.substeps,
            constraint_tol: s.constraint_tol,
            stationarity_tol: s.stationarity_tol,
            seed: 0,
            sequential: false,
        }
    }
}

impl SolverConfig {
    pub fn settings(&self) -> SolverSettings {
        SolverSettings {
            budget: self.budget,
            substeps: self.substeps,
            constraint_tol: self.constraint_tol,
            stationarity_tol: self.stationarity_tol,
            execution: if self.sequential {
                Execution::Sequential
            } else {
                Execution::Auto
            },
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
}

/// Complete configuration of a run.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub model: ModelParameters,
    pub solver: SolverConfig,
    pub output: OutputConfig,
}

impl RunConfig {
    /// Checks every field, reporting the offending key as `section.key`.
    pub fn validate(&self) -> Result<()> {
        self.model.validate().map_err(|e| match e {
            Error::InvalidParameter { name, reason } => Error::Config {
                path: format!("model.{name}"),
                message: reason,
            },
            other => other,
        })?;
        let s = &self.solver;
        let checks = [
            ("budget", s.budget >= 1, "must be >= 1"),
            ("levels", s.levels >= 2, "must be >= 2"),
            ("weights", s.weights >= 2, "must be >= 2"),
            ("substeps", s.substeps >= 1, "must be >= 1"),
            ("constraint_tol", s.constraint_tol > 0.0 && s.constraint_tol.is_finite(), "must be finite and > 0"),
            ("stationarity_tol", s.stationarity_tol > 0.0 && s.stationarity_tol.is_finite(), "must be finite and > 0"),
            ("seed", i64::try_from(s.seed).is_ok(), "must fit in a signed 64-bit integer"),
        ];
        for (key, ok, message) in checks {
            if !ok {
                return Err(Error::Config {
                    path: format!("solver.{key}"),
                    message: message.into(),
                });
            }
        }
        Ok(())
    }

    /// Serializes a validated configuration.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("validated configurations are representable")
    }
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let de = toml::Deserializer::new(text);
    let cfg: RunConfig = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::Config {
            path,
            message: e.into_inner().message().trim().to_string(),
        }
    })?;
    cfg.validate()?;
    Ok(cfg)
}

/// Reads and parses a configuration file.
pub fn load_config(path: &std::path::Path) -> Result<RunConfig> {
    parse_config(&std::fs::read_to_string(path)?)
}
