use serde::{Deserialize, Serialize};

use super::disturbance::{eval_disturbance, DisturbanceSpec};
use super::integrator::{rk4_step, PlantState};
use super::plant::{Forcing, Plant, PlantModel};
use super::reference::Reference;
use super::trajectory::{Sample, Trajectory};
use crate::error::{Error, Result};
use crate::smc::{Controller, ErrorFrame};

/// Everything needed for one closed-loop rollout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub seed: u64,
    /// Simulated duration T (s).
    pub horizon: f64,
    /// Sampling step; the control is held constant over each step.
    pub dt: f64,
    pub initial_state: Vec<f64>,
    pub plant: Plant,
    pub controller: Controller,
    #[serde(default)]
    pub reference: Reference,
    #[serde(default)]
    pub disturbance: DisturbanceSpec,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return Err(Error::InvalidParameter(format!("horizon must be > 0, got {}", self.horizon)));
        }
        if !(self.dt > 0.0 && self.dt <= self.horizon) {
            return Err(Error::InvalidParameter(format!(
                "dt must be in (0, horizon], got {}",
                self.dt
            )));
        }
        let order = self.plant.order();
        if self.initial_state.len() != self.plant.state_names().len() {
            return Err(Error::InvalidParameter(format!(
                "{} expects {} initial state values, got {}",
                self.plant.name(),
                self.plant.state_names().len(),
                self.initial_state.len()
            )));
        }
        if self.initial_state.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("initial state must be finite".into()));
        }
        self.plant.validate()?;
        self.controller.validate(order)?;
        self.disturbance.validate()?;
        if let Plant::Tank(t) = &self.plant {
            let h0 = self.initial_state[0];
            if !(0.0..=t.params.max_height).contains(&h0) {
                return Err(Error::InvalidParameter(format!(
                    "initial level {h0} outside [0, {}]",
                    t.params.max_height
                )));
            }
        }
        if matches!(self.disturbance, DisturbanceSpec::Leak { .. })
            && !matches!(self.plant, Plant::Tank(_))
        {
            return Err(Error::Config("leak disturbances only apply to the tank".into()));
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        (self.horizon / self.dt).round() as usize
    }

    pub fn with_controller(&self, controller: Controller) -> Scenario {
        Scenario {
            controller,
            ..self.clone()
        }
    }

    pub fn simulate(&self) -> Result<Trajectory> {
        simulate(self)
    }
}

/// Closed-loop rollout on the grid `t_n = n·dt`, `n = 0..=round(T/dt)`.
///
/// At each sample: error channels from the state (∫e by the trapezoidal rule), the
/// controller's command clamped to the actuator range, the disturbance sampled and
/// held, then one RK4 step.
pub fn simulate(scenario: &Scenario) -> Result<Trajectory> {
    scenario.validate()?;
    let plant = &scenario.plant;
    let controller = &scenario.controller;
    let order = plant.order();
    let dt = scenario.dt;
    let steps = scenario.steps();

    let mut traj = Trajectory::new(plant.state_names(), steps + 1);
    let mut state = PlantState::new(scenario.initial_state.clone(), 0.0);
    let mut eint = 0.0;
    let mut prev_e: Option<f64> = None;

    for n in 0..=steps {
        let t = n as f64 * dt;
        state.t = t;
        let r = scenario.reference.sample(t);
        let e = r.value - plant.output(&state.x);
        if let Some(pe) = prev_e {
            eint += 0.5 * dt * (pe + e);
        }
        prev_e = Some(e);

        let edot_state = if order == 2 { r.rate - state.x[1] } else { 0.0 };
        let frame = ErrorFrame {
            e,
            edot: edot_state,
            eint,
            ref_rate: r.rate,
            ref_accel: r.accel,
        };
        let affine = plant.affine(&state.x).map_err(|err| err.at_time(t))?;
        let out = controller
            .control(order, affine.drift, affine.input_gain, &frame)
            .map_err(|err| err.at_time(t))?;
        if !out.u.is_finite() {
            return Err(Error::SimulationDiverged { time: t });
        }
        let u = match plant.input_limits() {
            Some((lo, hi)) => out.u.clamp(lo, hi),
            None => out.u,
        };
        let forcing = Forcing {
            u,
            d: eval_disturbance(&scenario.disturbance, t, dt),
            leak: scenario.disturbance.leak_coefficient(t),
        };
        let edot = if order == 2 {
            edot_state
        } else {
            r.rate - plant.derivative(&state.x, forcing)?[0]
        };

        traj.push(Sample {
            t,
            x: &state.x,
            reference: r.value,
            e,
            edot,
            eint,
            s: out.s,
            u,
            d: forcing.d,
        });

        if n == steps {
            break;
        }
        let mut next = rk4_step(
            |_, x, u| plant.derivative(x, Forcing { u, ..forcing }),
            &state,
            dt,
            u,
        )?;
        plant.project(&mut next.x);
        state = next;
    }
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::plant::{ConicalTank, InvertedPendulum};
    use crate::dynamics::tank::TankParams;
    use crate::smc::{Controller, SurfaceGains};

    fn pendulum_scenario(theta0: f64) -> Scenario {
        Scenario {
            name: "test".into(),
            seed: 0,
            horizon: 1.0,
            dt: 0.01,
            initial_state: vec![theta0, 0.0],
            plant: Plant::Pendulum(InvertedPendulum::default()),
            controller: Controller::proposed(105.0, 4.0, 0.8, 35.0, 1.5),
            reference: Reference::Constant { value: 0.0 },
            disturbance: DisturbanceSpec::None,
        }
    }

    #[test]
    fn equilibrium_start_stays_at_zero_error() {
        let tr = simulate(&pendulum_scenario(0.0)).unwrap();
        assert_eq!(tr.len(), 101);
        assert!(tr.e.iter().all(|&e| e == 0.0));
        assert!(tr.u.iter().all(|&u| u == 0.0));
    }

    #[test]
    fn grid_is_uniform() {
        let tr = simulate(&pendulum_scenario(0.3)).unwrap();
        for (n, t) in tr.t.iter().enumerate() {
            assert_eq!(*t, n as f64 * 0.01);
        }
    }

    #[test]
    fn integral_channel_is_trapezoidal() {
        let tr = simulate(&pendulum_scenario(0.3)).unwrap();
        let mut acc = 0.0;
        for n in 1..tr.len() {
            acc += 0.5 * 0.01 * (tr.e[n - 1] + tr.e[n]);
            assert_eq!(tr.eint[n], acc);
        }
    }

    #[test]
    fn singular_input_gain_aborts_with_time() {
        // θ = π/2 makes g_in vanish
        let sc = pendulum_scenario(std::f64::consts::FRAC_PI_2);
        let err = simulate(&sc).unwrap_err();
        assert!(matches!(err, Error::ControlSingularity { time: Some(t), .. } if t == 0.0));
    }

    #[test]
    fn derivative_surface_rejected_for_tank() {
        let sc = Scenario {
            initial_state: vec![30.0],
            plant: Plant::Tank(ConicalTank {
                params: TankParams::reference_rig(),
            }),
            controller: Controller::Pid {
                gains: SurfaceGains::new(1.0, 1.0, 0.5),
                direction: Default::default(),
            },
            ..pendulum_scenario(0.0)
        };
        assert!(matches!(simulate(&sc), Err(Error::Config(_))));
    }

    #[test]
    fn wrong_state_dimension_rejected() {
        let mut sc = pendulum_scenario(0.1);
        sc.initial_state = vec![0.1];
        assert!(simulate(&sc).is_err());
    }

    #[test]
    fn tank_command_is_clamped() {
        let sc = Scenario {
            horizon: 2.0,
            initial_state: vec![10.0],
            plant: Plant::Tank(ConicalTank {
                params: TankParams::reference_rig(),
            }),
            controller: Controller::Constant { u: 1e6 },
            ..pendulum_scenario(0.0)
        };
        let tr = simulate(&sc).unwrap();
        let fmax = TankParams::reference_rig().max_inflow;
        assert!(tr.u.iter().all(|&u| u == fmax));
    }
}
