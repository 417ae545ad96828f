use pidsmc::dynamics::{DisturbanceSpec, Forcing, Plant, PlantModel};
use pidsmc::harness::load_scenario;
use pidsmc::metrics::lyapunov_audit;
use pidsmc::smc::{
    equivalent_control, reaching_rate, surface, Controller, ErrorFrame, ReachingParams,
    SurfaceGains,
};
use proptest::prelude::*;

fn gains() -> impl Strategy<Value = SurfaceGains> {
    (0.5f64..200.0, 0.5f64..50.0, 0.1f64..5.0).prop_map(|(kp, ki, kd)| SurfaceGains::new(kp, ki, kd))
}

fn frame() -> impl Strategy<Value = ErrorFrame> {
    (-1.0f64..1.0, -3.0f64..3.0, -1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0).prop_map(
        |(e, edot, eint, ref_rate, ref_accel)| ErrorFrame {
            e,
            edot,
            eint,
            ref_rate,
            ref_accel,
        },
    )
}

/// `ṡ` of the PID surface through the pendulum's own derivative, with `d = 0`.
fn pendulum_s_dot(g: &SurfaceGains, f: &ErrorFrame, x: &[f64], u: f64) -> f64 {
    let plant = Plant::Pendulum(Default::default());
    let acc = plant.derivative(x, Forcing { u, d: 0.0, leak: 0.0 }).unwrap()[1];
    g.kp * f.edot + g.ki * f.e + g.kd * (f.ref_accel - acc)
}

proptest! {
    #[test]
    fn equivalent_control_holds_the_surface(g in gains(), mut f in frame(), theta in -1.2f64..1.2) {
        let x = [theta, f.ref_rate - f.edot];
        f.e = -theta;
        let plant = Plant::Pendulum(Default::default());
        let a = plant.affine(&x).unwrap();
        let u = equivalent_control(&g, &f, a.drift, a.input_gain).unwrap();
        let s = surface(&g, &f);
        let s_dot = pendulum_s_dot(&g, &f, &x, u);
        prop_assert!(s_dot.abs() <= 1e-10 * (s.abs() + 1.0), "s_dot = {s_dot}");
    }

    #[test]
    fn surface_is_linear_in_each_channel(g in gains(), a in frame(), b in frame(), c in -3.0f64..3.0) {
        let tol = 1e-9 * (g.kp + g.ki + g.kd);
        let base = surface(&g, &a);
        let shifted = ErrorFrame { e: a.e + c * b.e, ..a };
        prop_assert!((surface(&g, &shifted) - base - c * g.kp * b.e).abs() <= tol);
        let shifted = ErrorFrame { edot: a.edot + c * b.edot, ..a };
        prop_assert!((surface(&g, &shifted) - base - c * g.kd * b.edot).abs() <= tol);
        let shifted = ErrorFrame { eint: a.eint + c * b.eint, ..a };
        prop_assert!((surface(&g, &shifted) - base - c * g.ki * b.eint).abs() <= tol);
    }
}

/// Integrates `ṡ = reaching_rate(s)` with small Euler steps; returns the time at
/// which `|s|` first enters the boundary layer.
fn entry_time(p: &ReachingParams, s0: f64) -> f64 {
    let dt = 1e-5;
    let (mut s, mut t) = (s0, 0.0);
    while s.abs() > p.delta {
        let next = s + dt * reaching_rate(p, s);
        assert!(next.abs() < s.abs(), "|s| grew at t = {t}");
        s = next;
        t += dt;
        assert!(t < 100.0, "never reached the layer");
    }
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reaching_is_monotone_and_faster_with_larger_gain(
        k in 0.5f64..40.0,
        k_sc in 0.5f64..10.0,
        alpha in 0.1f64..1.9,
        s0 in prop_oneof![-20.0f64..-0.5, 0.5f64..20.0],
    ) {
        let slow = ReachingParams::proposed(k, k_sc, alpha, 0.05);
        let fast = ReachingParams::proposed(k, 2.0 * k_sc, alpha, 0.05);
        prop_assert!(entry_time(&fast, s0) < entry_time(&slow, s0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    // With the switching gain above the disturbance bound as seen by the surface
    // (K_d·d_max), V = s²/2 decreases at every sample outside the boundary layer.
    // The step is refined to 1 ms: with u held over 10 ms the stiffer gains make
    // the sampled loop flip the sign of s every step.
    #[test]
    fn lyapunov_decrease_when_switching_dominates(
        amplitude in 0.0f64..10.0,
        theta0 in -0.6f64..0.6,
        margin in 1.5f64..3.0,
    ) {
        let mut sc = load_scenario("preset:pendulum").unwrap();
        sc.horizon = 2.0;
        sc.dt = 0.001;
        sc.initial_state = vec![theta0, 0.0];
        sc.disturbance = DisturbanceSpec::Sinusoid { amplitude, angular_freq: 1.0 };
        let Controller::PidSmcProposed { gains, reaching } = sc.controller.clone() else { unreachable!() };
        let surface_bound = gains.kd * amplitude;
        let layer_edge = reaching.delta.powf(reaching.alpha);
        let k_sc = ((margin * surface_bound - reaching.k * reaching.delta) / layer_edge).max(reaching.k_sc);
        let sc = sc.with_controller(Controller::PidSmcProposed {
            gains,
            reaching: ReachingParams { k_sc, ..reaching },
        });
        let tr = sc.simulate().unwrap();
        let audit = lyapunov_audit(&tr.t, &tr.s, reaching.delta);
        prop_assert_eq!(audit.violations, 0, "k_sc = {}, worst {:?}", k_sc, audit.worst_margin);
    }
}
