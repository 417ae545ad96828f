//! Sliding surfaces, reaching laws, switching functions and the assembled
//! controllers (proposed PID-SMC, equivalent-control PID-SMC, classical SMC, PID).

mod controller;
mod laws;
mod reaching;
mod surface;
mod switching;

pub use controller::{ControlOutput, Controller, Direction, TunableParam, DEFAULT_LAMBDA};
pub use laws::{
    classical_smc, equivalent_control, first_order_smc_control, pid_control, proposed_control,
    proposed_control_pi, reaching_law_control, switching_control, SurfaceDynamics,
    SINGULARITY_FLOOR,
};
pub use reaching::{reaching_rate, ReachingLaw, ReachingParams, DEFAULT_ALPHA, DEFAULT_DELTA};
pub use surface::{surface, ErrorFrame, SurfaceGains};
pub use switching::{sat_fn, sign_fn, SwitchingFn};
