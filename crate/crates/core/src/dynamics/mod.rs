//! Plant models, disturbance signals, fixed-step integration and the
//! closed-loop simulation loop.

mod disturbance;
mod integrator;
pub mod pendulum;
mod plant;
mod reference;
mod simulate;
pub mod tank;
mod trajectory;
pub mod vdp;

pub use disturbance::{eval_disturbance, DisturbanceSpec};
pub use integrator::{rk4_step, PlantState};
pub use pendulum::{pendulum_f_g, PendulumParams};
pub use plant::{ConicalTank, ControlAffine, Forcing, InvertedPendulum, Plant, PlantModel, VanDerPol};
pub use reference::{Reference, ReferenceSample};
pub use simulate::{simulate, Scenario};
pub use tank::{tank_rate, TankParams, TankRate, LPH_TO_CM3_PER_S, TANK_LEVEL_FLOOR};
pub use trajectory::Trajectory;
pub(crate) use trajectory::write_columns;
pub use vdp::vdp_rate;
