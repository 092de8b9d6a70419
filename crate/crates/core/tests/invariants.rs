//! Property tests over random states, temperatures and matrices.

use erasure_core::channel::{
    apply_channel, final_state_closed_form, ground_fidelity, memory_marginal, reservoir_marginal,
};
use erasure_core::linalg::{
    dagger, hermitian_eigenvalues, kron, matmul, partial_trace, ComplexMatrix,
};
use erasure_core::optics::{
    path_final_closed_form, path_marginal, path_to_reservoir, polarization_marginal, simulate,
    PathDistribution,
};
use erasure_core::states::{
    bloch_from_qubit, composite_initial, preselected_reservoir, qubit_from_bloch, reservoir,
    thermal_probs, BlochVector, EnergyLevels, ThermalSpec, COMPOSITE_DIMS,
};
use erasure_core::thermo::{
    analyze, entropy_decrease, heat_from_states, heat_memory, heat_reservoir, internal_energy,
    von_neumann_entropy, HamiltonianSet, ROUTE_TOL,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn bloch_strategy() -> impl Strategy<Value = BlochVector> {
    (
        0.0..=1.0f64,
        0.0..=std::f64::consts::PI,
        0.0..std::f64::consts::TAU,
    )
        .prop_map(|(r, theta, phi)| BlochVector::from_spherical(r, theta, phi).unwrap())
}

fn beta_strategy() -> impl Strategy<Value = f64> {
    prop_oneof![Just(0.0), Just(f64::INFINITY), 0.0..30.0f64]
}

fn matrix_strategy(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec((-1.0..1.0f64, -1.0..1.0f64), dim * dim).prop_map(move |v| {
        ComplexMatrix::new(
            dim,
            v.into_iter()
                .map(|(re, im)| Complex64::new(re, im))
                .collect(),
        )
        .unwrap()
    })
}

fn hermitian_strategy(dim: usize) -> impl Strategy<Value = ComplexMatrix> {
    matrix_strategy(dim).prop_map(|a| (&a + &dagger(&a)).scale(0.5))
}

fn unit() -> EnergyLevels {
    EnergyLevels::with_gap(1.0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn kron_is_associative(a in matrix_strategy(2), b in matrix_strategy(2), c in matrix_strategy(2)) {
        let left = kron(&kron(&a, &b), &c);
        let right = kron(&a, &kron(&b, &c));
        prop_assert!(left.max_abs_diff(&right).unwrap() < 1e-15);
    }

    #[test]
    fn trace_is_cyclic(a in matrix_strategy(4), b in matrix_strategy(4)) {
        let ab = matmul(&a, &b).unwrap().trace();
        let ba = matmul(&b, &a).unwrap().trace();
        prop_assert!((ab - ba).norm() < 1e-12);
    }

    #[test]
    fn tracing_everything_gives_the_trace(a in matrix_strategy(8)) {
        let scalar = partial_trace(&a, &COMPOSITE_DIMS, &[]).unwrap();
        prop_assert!((scalar.get(0, 0) - a.trace()).norm() < 1e-13);
    }

    #[test]
    fn dagger_is_an_involution(a in matrix_strategy(8)) {
        prop_assert_eq!(dagger(&dagger(&a)), a);
    }

    #[test]
    fn eigenvalues_reproduce_trace_invariants(h in hermitian_strategy(8)) {
        let spectrum = hermitian_eigenvalues(&h).unwrap();
        prop_assert!((spectrum.sum() - h.trace().re).abs() < 1e-10);
        let sq: f64 = spectrum.eigenvalues.iter().map(|l| l * l).sum();
        let tr_sq = matmul(&h, &h).unwrap().trace().re;
        prop_assert!((sq - tr_sq).abs() < 1e-10);
        prop_assert!(spectrum.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn bloch_round_trip(b in bloch_strategy()) {
        let back = bloch_from_qubit(&qubit_from_bloch(&b)).unwrap();
        prop_assert!((back.x() - b.x()).abs() < 1e-12);
        prop_assert!((back.y() - b.y()).abs() < 1e-12);
        prop_assert!((back.z() - b.z()).abs() < 1e-12);
    }

    #[test]
    fn thermal_probabilities_are_ordered_and_monotone(beta in 0.0..50.0f64, step in 0.0..5.0f64) {
        let (pg, pe) = thermal_probs(&ThermalSpec::from_beta(beta, 1.0).unwrap());
        prop_assert!(pg >= 0.5 && pe <= 0.5);
        prop_assert!((pg + pe - 1.0).abs() < 1e-15);
        let (pg2, _) = thermal_probs(&ThermalSpec::from_beta(beta + step, 1.0).unwrap());
        prop_assert!(pg2 >= pg);
    }

    #[test]
    fn preselected_state_has_no_l1_weight(beta in beta_strategy()) {
        let rho = preselected_reservoir(&ThermalSpec::from_beta(beta, 1.0).unwrap());
        prop_assert_eq!(rho.get(reservoir::G_L1, reservoir::G_L1).re, 0.0);
        prop_assert_eq!(rho.get(reservoir::E_L1, reservoir::E_L1).re, 0.0);
    }

    #[test]
    fn channel_erases_and_separates(b in bloch_strategy(), beta in beta_strategy()) {
        let spec = ThermalSpec::from_beta(beta, 1.0).unwrap();
        let initial = composite_initial(&b, &spec);
        let fin = apply_channel(&initial).unwrap();
        let mem = memory_marginal(&fin).unwrap();
        prop_assert!(ground_fidelity(&mem) >= 1.0 - 1e-12);
        let product = kron(&mem, &reservoir_marginal(&fin).unwrap());
        prop_assert!(product.max_abs_diff(&fin).unwrap() < 1e-12);
        prop_assert!((fin.trace().re - 1.0).abs() < 1e-13);
        let before = hermitian_eigenvalues(&initial).unwrap();
        let after = hermitian_eigenvalues(&fin).unwrap();
        prop_assert!(before.max_abs_diff(&after) < 1e-10);
        let closed = final_state_closed_form(&b, &spec);
        prop_assert!(closed.max_abs_diff(&fin).unwrap() < 1e-12);
    }

    #[test]
    fn entropy_is_conserved_and_transferred(b in bloch_strategy(), beta in beta_strategy()) {
        let spec = ThermalSpec::from_beta(beta, 1.0).unwrap();
        let initial = composite_initial(&b, &spec);
        let fin = apply_channel(&initial).unwrap();
        let s_i = von_neumann_entropy(&initial).unwrap();
        prop_assert!((s_i - von_neumann_entropy(&fin).unwrap()).abs() < 1e-10);
        let s_m = von_neumann_entropy(&qubit_from_bloch(&b)).unwrap();
        let s_r = von_neumann_entropy(&preselected_reservoir(&spec)).unwrap();
        let s_rf = von_neumann_entropy(&reservoir_marginal(&fin).unwrap()).unwrap();
        prop_assert!((s_rf - (s_m + s_r)).abs() < 1e-10);
        prop_assert!((entropy_decrease(&b) - s_m).abs() < 1e-10);
    }

    #[test]
    fn heats_match_their_traces(b in bloch_strategy(), beta in beta_strategy()) {
        let spec = ThermalSpec::from_beta(beta, 1.0).unwrap();
        let hams = HamiltonianSet::new(unit());
        let initial = composite_initial(&b, &spec);
        let fin = apply_channel(&initial).unwrap();
        let q_m = heat_from_states(
            &memory_marginal(&initial).unwrap(), &memory_marginal(&fin).unwrap(), &hams.memory,
        ).unwrap();
        let q_r = heat_from_states(
            &reservoir_marginal(&initial).unwrap(), &reservoir_marginal(&fin).unwrap(), &hams.reservoir,
        ).unwrap();
        prop_assert!((q_m - heat_memory(&b, &unit())).abs() < 1e-12);
        prop_assert!((q_r - heat_reservoir(&b, &spec, &unit())).abs() < 1e-12);
        prop_assert!(heat_memory(&b, &unit()) <= 0.0);
        prop_assert!(heat_reservoir(&b, &spec, &unit()) >= 0.0);
        prop_assert!(q_m <= 1e-15 && q_r >= -1e-15);
    }

    #[test]
    fn energy_deficit_is_nonnegative(b in bloch_strategy(), beta in beta_strategy()) {
        let spec = ThermalSpec::from_beta(beta, 1.0).unwrap();
        let hams = HamiltonianSet::new(unit());
        let initial = composite_initial(&b, &spec);
        let deficit = internal_energy(&initial, &hams).unwrap()
            - internal_energy(&apply_channel(&initial).unwrap(), &hams).unwrap();
        let closed = -(heat_memory(&b, &unit()) + heat_reservoir(&b, &spec, &unit()));
        prop_assert!((deficit - closed).abs() < 1e-12);
        prop_assert!(deficit >= -1e-15);
        if beta == f64::INFINITY {
            prop_assert_eq!(closed, 0.0);
        }
    }

    #[test]
    fn report_routes_agree(b in bloch_strategy(), beta in beta_strategy(), e in -5.0..5.0f64, eps in -5.0..5.0f64) {
        let spec = ThermalSpec::from_beta(beta, 1.0).unwrap();
        let report = analyze(&b, &spec, &EnergyLevels::new(e, eps, 1.0).unwrap()).unwrap();
        prop_assert!(report.route_deviation < ROUTE_TOL);
        prop_assert!(report.q_e >= report.q_r - 1e-15);
        prop_assert!(report.photon_energy >= 0.0);
        prop_assert!(report.delta_s >= 0.0 && report.delta_s <= std::f64::consts::LN_2 + 1e-15);
    }

    #[test]
    fn optics_erases_polarization(pol in bloch_strategy(), p1 in 0.0..=1.0f64) {
        let dist = PathDistribution::new(p1).unwrap();
        let out = simulate(&pol, &dist);
        let pm = polarization_marginal(&out).unwrap();
        prop_assert!((pm.get(0, 0).re - 1.0).abs() < 1e-12);
        let path = path_marginal(&out).unwrap();
        prop_assert!(path.max_abs_diff(&path_final_closed_form(&pol, &dist)).unwrap() < 1e-12);
    }

    #[test]
    fn path_state_is_the_relabeled_reservoir_state(pol in bloch_strategy(), beta in beta_strategy()) {
        let spec = ThermalSpec::from_beta(beta, 1.0).unwrap();
        let relabeled = path_to_reservoir(
            &path_final_closed_form(&pol, &PathDistribution::thermal(&spec)),
        ).unwrap();
        let reservoir = reservoir_marginal(&final_state_closed_form(&pol, &spec)).unwrap();
        prop_assert!(relabeled.max_abs_diff(&reservoir).unwrap() < 1e-15);
    }
}
