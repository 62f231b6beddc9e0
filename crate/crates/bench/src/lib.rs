//! Experiment harness for the wall-Chebyshev projector and its
//! competitors: scenario sweeps to CSV, threshold-order tables, scaling
//! fits and plot data.

pub mod config;
pub mod error;
pub mod plots;
pub mod runner;
pub mod scaling;
pub mod scenario;
pub mod system;
pub mod thresholds;

pub use error::{BenchError, Result};
