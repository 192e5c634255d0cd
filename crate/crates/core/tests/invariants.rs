use num_complex::Complex64;
use proptest::prelude::*;
use vpfp::evolution::{
    energy_dissipation_rows, fit_exponential_rate, multiplier_eval, multiplier_transport_derivative, phi, EnergyParams,
    SimParams, Simulator,
};
use vpfp::experiments::{ExperimentConfig, ExperimentKind, Verdict};
use vpfp::penrose::penrose_eval;
use vpfp::spectral::{build_field, FourierPair, ModeSet, XiGrid};
use vpfp::wave::{apply_inverse_wave, apply_wave, WaveOperatorHandle};

fn gaussian_row(grid: &XiGrid, width: f64, shift: f64, phase: f64) -> Vec<Complex64> {
    grid.nodes()
        .iter()
        .map(|&x| Complex64::from_polar((-(x - shift) * (x - shift) / (2.0 * width * width)).exp(), phase * x))
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplier_stays_between_one_and_two(k in -16i64..=16, xi in -1e3f64..1e3, log_nu in -6.0f64..-1.0) {
        let m = multiplier_eval(k, xi, 10f64.powf(log_nu));
        prop_assert!((1.0..=2.0).contains(&m));
    }

    #[test]
    fn dissipation_gain_beats_the_enhanced_rate(k in 1i64..=16, xi in -1e3f64..1e3, log_nu in -6.0f64..-1.0, sign in prop::bool::ANY) {
        let nu = 10f64.powf(log_nu);
        let k = if sign { k } else { -k };
        let gain = nu * xi * xi + multiplier_transport_derivative(k, xi, nu);
        prop_assert!(gain >= 0.25 * nu.cbrt() * (k.abs() as f64).powf(2.0 / 3.0) * (1.0 - 1e-12));
    }

    #[test]
    fn profile_is_a_monotone_mirror(z in -6.0f64..6.0, dz in 0.0f64..2.0) {
        prop_assert!(phi(z + dz) >= phi(z));
        prop_assert!((phi(z) + phi(-z) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn penrose_tables_have_parity(k in 1i64..=6, u in 0.0f64..30.0) {
        let a = penrose_eval(k, u).unwrap();
        let b = penrose_eval(k, -u).unwrap();
        prop_assert!((a.p - b.p).abs() < 1e-14);
        prop_assert!((a.q + b.q).abs() < 1e-14);
        prop_assert!((a.w - a.p * a.p - a.q * a.q).abs() < 1e-13);
    }

    #[test]
    fn wave_operator_inverts_on_packets(k in 1i64..=4, centre in -1.5f64..1.5, width in 0.8f64..1.6, phase in -1.0f64..1.0) {
        let grid = XiGrid::default_resolution();
        let f: Vec<Complex64> = grid.v_nodes().iter()
            .map(|&v| Complex64::from_polar((-(v - centre) * (v - centre) / (2.0 * width * width)).exp(), phase * v))
            .collect();
        let h = WaveOperatorHandle::maxwellian(k, grid).unwrap();
        let back = apply_inverse_wave(&h, &apply_wave(&h, &f).unwrap()).unwrap();
        let err = back.iter().zip(&f).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        prop_assert!(err < 1e-8);
    }

    #[test]
    fn transforms_round_trip(width in 0.5f64..3.0, shift in -4.0f64..4.0, phase in -2.0f64..2.0) {
        let grid = XiGrid::new(24.0, 512).unwrap();
        let pair = FourierPair::new(grid);
        let row = gaussian_row(&grid, width, shift, phase);
        let back = pair.v_to_xi(&pair.xi_to_v(&row).unwrap()).unwrap();
        let err = back.iter().zip(&row).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        prop_assert!(err < 1e-12);
    }

    #[test]
    fn energy_and_dissipation_are_nonnegative(k in 1i64..=4, width in 0.7f64..2.0, phase in -1.0f64..1.0, log_nu in -5.0f64..-2.0) {
        let grid = XiGrid::default_resolution();
        let row = gaussian_row(&grid, width, 0.0, phase);
        let ep = EnergyParams::with_levels(2, 4).unwrap();
        let (e, d) = energy_dissipation_rows(grid, std::iter::once((k, row.as_slice())), &ep, 10f64.powf(log_nu), 1.0).unwrap();
        prop_assert!(e > 0.0 && d >= 0.0);
    }

    #[test]
    fn collisionless_streaming_keeps_mass(steps in 1usize..40, phase in -3.0f64..3.0) {
        let grid = XiGrid::new(24.0, 512).unwrap();
        let init = build_field(ModeSet::new(2).unwrap(), grid, |k, x| {
            let base = Complex64::from_polar((-x * x / 2.0).exp(), phase * k as f64);
            if k == 0 { Complex64::new((-x * x / 2.0).exp(), 0.0) } else { base }
        }).unwrap();
        let mut sim = Simulator::new(&init, SimParams::new(&grid, 0.0, steps as f64 * grid.delta_xi()).nonlinear()).unwrap();
        let mass = sim.density(0);
        sim.run().unwrap();
        prop_assert!((sim.density(0) - mass).norm() < 1e-12);
        prop_assert!(sim.state().reality_defect() < 1e-15);
    }

    #[test]
    fn exponential_fits_recover_the_rate(rate in -0.5f64..0.5, amp in 1e-6f64..1e3) {
        let t: Vec<f64> = (0..50).map(|i| 0.2 * i as f64).collect();
        let y: Vec<f64> = t.iter().map(|s| amp * (rate * s).exp()).collect();
        let (fit, r2) = fit_exponential_rate(&t, &y, (0.0, 10.0)).unwrap();
        prop_assert!((fit - rate).abs() < 1e-10);
        prop_assert!(rate.abs() < 1e-9 || r2 > 1.0 - 1e-9);
    }

    #[test]
    fn tolerance_scaling_never_flips_a_pass_to_fail(measured in -2.0f64..2.0, tol in 0.0f64..1.0, scale in 1.0f64..4.0) {
        let narrow = Verdict::within("x", measured, 0.0, tol);
        let wide = Verdict::within("x", measured, 0.0, tol * scale);
        prop_assert!(!narrow.passed || wide.passed);
    }

    #[test]
    fn configs_round_trip_through_json(nu in 1e-5f64..1e-1, eps in 0.0f64..1.0, seed in any::<u64>()) {
        let mut cfg = ExperimentConfig::new(ExperimentKind::Stability);
        cfg.nu = vec![nu];
        cfg.epsilon = eps;
        cfg.seed = seed;
        let text = serde_json::to_string(&cfg).unwrap();
        prop_assert_eq!(ExperimentConfig::from_json(&text).unwrap(), cfg);
    }
}
