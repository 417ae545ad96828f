//! Particle swarm optimization with the time-varying inertia and acceleration
//! schedules used for offline controller tuning.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dynamics::Scenario;
use crate::error::{Error, Result};
use crate::metrics::ise;
use crate::smc::TunableParam;

/// Inertia weight and acceleration coefficients for one iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients {
    pub w: f64,
    pub c1: f64,
    pub c2: f64,
}

/// Modified schedule: `w = 2 − (1 + 1/(2·k_max))^i`, `C1 = e^(−0.05 i)`,
/// `C2 = e^(0.05 i) / (1 + 0.05·e^(0.05 i))`.
pub fn coefficients(i: usize, k_max: usize) -> Coefficients {
    let i = i as f64;
    let grow = (0.05 * i).exp();
    Coefficients {
        w: 2.0 - (1.0 + 1.0 / (2.0 * k_max as f64)).powf(i),
        c1: (-0.05 * i).exp(),
        c2: grow / (1.0 + 0.05 * grow),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Variant {
    /// Constant coefficients.
    Standard { w: f64, c1: f64, c2: f64 },
    /// Iteration-scheduled coefficients from [`coefficients`].
    Modified,
}

impl Default for Variant {
    fn default() -> Self {
        Variant::Modified
    }
}

impl Variant {
    pub fn coefficients(&self, i: usize, k_max: usize) -> Coefficients {
        match *self {
            Variant::Standard { w, c1, c2 } => Coefficients { w, c1, c2 },
            Variant::Modified => coefficients(i, k_max),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SwarmConfig {
    pub particles: usize,
    pub subpopulations: usize,
    pub max_iter: usize,
    /// Per-dimension `(lo, hi)`. `lo == hi` pins a dimension.
    pub bounds: Vec<(f64, f64)>,
    pub seed: u64,
    #[serde(default)]
    pub variant: Variant,
    /// Draw `r1, r2 ~ U(0,1)` per dimension; when off both are 1.
    #[serde(default = "yes")]
    pub stochastic: bool,
}

fn yes() -> bool {
    true
}

impl SwarmConfig {
    /// 50 particles in 5 sub-populations for 90 iterations.
    pub fn new(bounds: Vec<(f64, f64)>, seed: u64) -> Self {
        SwarmConfig {
            particles: 50,
            subpopulations: 5,
            max_iter: 90,
            bounds,
            seed,
            variant: Variant::Modified,
            stochastic: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.particles == 0 || self.max_iter == 0 {
            return bad("particle count and iteration limit must be positive".into());
        }
        if self.subpopulations == 0 || self.particles % self.subpopulations != 0 {
            return bad(format!(
                "{} sub-populations do not divide {} particles",
                self.subpopulations, self.particles
            ));
        }
        if self.bounds.is_empty() {
            return bad("search box has no dimensions".into());
        }
        for (d, &(lo, hi)) in self.bounds.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return bad(format!("bounds for dimension {d} are not an interval: [{lo}, {hi}]"));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.bounds.len()
    }
}

/// One particle's position, velocity and personal best.
#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub x: Vec<f64>,
    pub v: Vec<f64>,
    pub best_x: Vec<f64>,
    pub best_f: f64,
}

/// `V ← w·V + C1·r1·(Pb − X) + C2·r2·(Gb − X)`, `X ← X + V`, then clamp to the box
/// and zero the velocity on clamped dimensions. `rng = None` fixes `r1 = r2 = 1`.
pub fn update_particle<R: Rng>(
    p: &mut Particle,
    gbest: &[f64],
    c: Coefficients,
    bounds: &[(f64, f64)],
    mut rng: Option<&mut R>,
) {
    for d in 0..p.x.len() {
        let (r1, r2) = match rng.as_deref_mut() {
            Some(r) => (r.random::<f64>(), r.random::<f64>()),
            None => (1.0, 1.0),
        };
        let x = p.x[d];
        let v = c.w * p.v[d] + c.c1 * r1 * (p.best_x[d] - x) + c.c2 * r2 * (gbest[d] - x);
        let (lo, hi) = bounds[d];
        let moved = x + v;
        if moved > hi {
            p.x[d] = hi;
            p.v[d] = 0.0;
        } else if moved < lo {
            p.x[d] = lo;
            p.v[d] = 0.0;
        } else {
            p.x[d] = moved;
            p.v[d] = v;
        }
    }
}

/// One independent sub-population with its own global best.
#[derive(Debug, Clone)]
pub struct Swarm {
    pub particles: Vec<Particle>,
    pub best_x: Vec<f64>,
    pub best_f: f64,
}

impl Swarm {
    fn absorb(&mut self, fitness: &[f64]) {
        for (p, &f) in self.particles.iter_mut().zip(fitness) {
            if f < p.best_f {
                p.best_f = f;
                p.best_x.clone_from(&p.x);
            }
            if f < self.best_f {
                self.best_f = f;
                self.best_x.clone_from(&p.x);
            }
        }
    }
}

/// One convergence trace row; `iter = 0` is the initial population.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub iter: usize,
    pub best_fitness: f64,
    /// Mean over finite fitness values of the current positions.
    pub mean_fitness: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizeResult {
    pub best_position: Vec<f64>,
    pub best_fitness: f64,
    pub trace: Vec<TraceRow>,
}

fn evaluate<F>(objective: &F, swarms: &[Swarm]) -> Vec<f64>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    let positions: Vec<&[f64]> = swarms
        .iter()
        .flat_map(|s| s.particles.iter().map(|p| p.x.as_slice()))
        .collect();
    positions
        .par_iter()
        .map(|x| {
            let f = objective(x);
            if f.is_finite() {
                f
            } else {
                log::debug!("non-finite fitness at {x:?}");
                f64::INFINITY
            }
        })
        .collect()
}

fn trace_row(iter: usize, swarms: &[Swarm], fitness: &[f64]) -> TraceRow {
    let best = swarms.iter().map(|s| s.best_f).fold(f64::INFINITY, f64::min);
    let finite: Vec<f64> = fitness.iter().copied().filter(|f| f.is_finite()).collect();
    let mean = if finite.is_empty() {
        f64::INFINITY
    } else {
        finite.iter().sum::<f64>() / finite.len() as f64
    };
    TraceRow {
        iter,
        best_fitness: best,
        mean_fitness: mean,
    }
}

/// Minimizes `objective` over the box. Sub-populations evolve independently; the
/// best result across them is returned. Evaluations run in parallel but are reduced
/// in particle order, so a seed fixes the whole run.
pub fn optimize<F>(objective: &F, config: &SwarmConfig) -> Result<OptimizeResult>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let per_swarm = config.particles / config.subpopulations;
    let dim = config.dim();

    let mut swarms: Vec<Swarm> = (0..config.subpopulations)
        .map(|_| Swarm {
            particles: (0..per_swarm)
                .map(|_| {
                    let x: Vec<f64> = config
                        .bounds
                        .iter()
                        .map(|&(lo, hi)| lo + (hi - lo) * rng.random::<f64>())
                        .collect();
                    Particle {
                        best_x: x.clone(),
                        x,
                        v: vec![0.0; dim],
                        best_f: f64::INFINITY,
                    }
                })
                .collect(),
            best_x: vec![0.0; dim],
            best_f: f64::INFINITY,
        })
        .collect();

    let mut trace = Vec::with_capacity(config.max_iter + 1);
    let fitness = evaluate(objective, &swarms);
    for (s, chunk) in swarms.iter_mut().zip(fitness.chunks(per_swarm)) {
        s.best_x = s.particles[0].x.clone();
        s.absorb(chunk);
    }
    trace.push(trace_row(0, &swarms, &fitness));

    for i in 1..=config.max_iter {
        let c = config.variant.coefficients(i, config.max_iter);
        for s in swarms.iter_mut() {
            let gbest = s.best_x.clone();
            for p in s.particles.iter_mut() {
                let r = config.stochastic.then_some(&mut rng);
                update_particle(p, &gbest, c, &config.bounds, r);
            }
        }
        let fitness = evaluate(objective, &swarms);
        for (s, chunk) in swarms.iter_mut().zip(fitness.chunks(per_swarm)) {
            s.absorb(chunk);
        }
        trace.push(trace_row(i, &swarms, &fitness));
    }

    let best = swarms
        .iter()
        .min_by(|a, b| a.best_f.total_cmp(&b.best_f))
        .expect("at least one sub-population");
    Ok(OptimizeResult {
        best_position: best.best_x.clone(),
        best_fitness: best.best_f,
        trace,
    })
}

/// Scenario with `candidate` written into the controller's `params`, in order.
pub fn apply_params(template: &Scenario, params: &[TunableParam], candidate: &[f64]) -> Result<Scenario> {
    if params.len() != candidate.len() {
        return Err(Error::InvalidParameter(format!(
            "{} parameters but {} values",
            params.len(),
            candidate.len()
        )));
    }
    let mut controller = template.controller.clone();
    for (&p, &v) in params.iter().zip(candidate) {
        controller = controller.with_param(p, v)?;
    }
    Ok(template.with_controller(controller))
}

/// Integral of squared tracking error over the scenario horizon; `+∞` when the
/// candidate is invalid or the simulation fails.
pub fn ise_objective(template: &Scenario, params: &[TunableParam], candidate: &[f64]) -> f64 {
    let run = apply_params(template, params, candidate).and_then(|sc| sc.simulate());
    match run {
        Ok(traj) => ise(&traj.t, &traj.e),
        Err(err) => {
            log::debug!("candidate {candidate:?} rejected: {err}");
            f64::INFINITY
        }
    }
}
