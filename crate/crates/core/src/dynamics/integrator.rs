use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct PlantState {
    pub x: Vec<f64>,
    pub t: f64,
}

impl PlantState {
    pub fn new(x: Vec<f64>, t: f64) -> Self {
        Self { x, t }
    }
}

/// One classical fourth-order Runge–Kutta step with the input `u` held constant
/// over `[t, t + dt]`.
///
/// `deriv(t, x, u)` returns the state derivative. A non-finite derivative or
/// result aborts with [`Error::SimulationDiverged`] stamped with the step's start time.
pub fn rk4_step<F>(deriv: F, state: &PlantState, dt: f64, u: f64) -> Result<PlantState>
where
    F: Fn(f64, &[f64], f64) -> Result<Vec<f64>>,
{
    let t = state.t;
    let x = &state.x;
    let diverged = || Error::SimulationDiverged { time: t };
    let checked = |v: Vec<f64>| {
        if v.iter().all(|c| c.is_finite()) {
            Ok(v)
        } else {
            Err(diverged())
        }
    };
    let offset = |k: &[f64], h: f64| -> Vec<f64> {
        x.iter().zip(k).map(|(xi, ki)| xi + h * ki).collect()
    };

    let half = 0.5 * dt;
    let k1 = checked(deriv(t, x, u)?)?;
    let k2 = checked(deriv(t + half, &offset(&k1, half), u)?)?;
    let k3 = checked(deriv(t + half, &offset(&k2, half), u)?)?;
    let k4 = checked(deriv(t + dt, &offset(&k3, dt), u)?)?;

    let next: Vec<f64> = x
        .iter()
        .enumerate()
        .map(|(i, xi)| xi + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect();
    let next = checked(next)?;
    Ok(PlantState::new(next, t + dt))
}
