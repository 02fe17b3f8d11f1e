//! Multiobjective optimal control of a five-compartment tuberculosis model.
//!
//! The crate simulates the controlled model with fixed-step RK4 under
//! piecewise-constant controls, builds trade-off fronts between disease
//! burden and control effort with three scalarizations (epsilon-constraint,
//! goal attainment, augmented Chebyshev), and scores fronts with the 2-D
//! hypervolume.

pub mod config;
pub mod error;
pub mod experiments;
pub mod io;
pub mod metrics;
pub mod model;
pub mod nlp;
pub mod par;
pub mod pareto;
pub mod scalarize;
pub mod sim;

pub use error::{Error, Result};
