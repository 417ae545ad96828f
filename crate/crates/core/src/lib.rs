//! Sliding mode control with a PID sliding surface and a power-rate exponential
//! reaching law, simulated on nonlinear benchmark plants and tuned offline by a
//! particle swarm with scheduled coefficients.
//!
//! The crate is organised bottom-up:
//!
//! - [`dynamics`]: plant models, disturbances, RK4 integration and the closed loop.
//! - [`smc`]: sliding surfaces, reaching laws and controllers.
//! - [`mpso`]: the swarm optimizer and the ISE tuning objective.
//! - [`metrics`]: rise/settling time, ISE, chattering and Lyapunov audits.
//! - [`harness`]: scenario files, experiments, tuning runs and output files.

pub mod dynamics;
pub mod error;
pub mod harness;
pub mod metrics;
pub mod mpso;
pub mod smc;

pub use dynamics::{simulate, Plant, Scenario, Trajectory};
pub use error::{Error, Result};
pub use metrics::MetricReport;
pub use smc::Controller;

/// Toolkit version embedded in every output file.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
