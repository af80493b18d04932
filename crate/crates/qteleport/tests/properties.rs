//! Randomized invariants of the simulator core.

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

use qteleport::{
    diagnose_and_recover_deterministic, encode, enumerate_forward, hadamard, identity,
    make_input_state, pauli_x, pauli_y, pauli_z, phase_global, rot_x, rot_y, rot_z,
    syndrome_projectors, Bloch64, Gate64, NoiseSpec64, StateVec64,
};

fn arb_state(num_qubits: usize) -> impl Strategy<Value = StateVec64> {
    let dim = 1usize << num_qubits;
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim).prop_filter_map(
        "norm too small to normalize",
        move |pairs| {
            let norm_sqr: f64 = pairs.iter().map(|(re, im)| re * re + im * im).sum();
            if norm_sqr < 1e-3 {
                return None;
            }
            let norm = norm_sqr.sqrt();
            let amps = pairs
                .into_iter()
                .map(|(re, im)| Complex64::new(re / norm, im / norm))
                .collect();
            Some(StateVec64::from_amplitudes(num_qubits, amps).unwrap())
        },
    )
}

fn arb_gate() -> impl Strategy<Value = Gate64> {
    prop_oneof![
        Just(identity()),
        Just(pauli_x()),
        Just(pauli_y()),
        Just(pauli_z()),
        Just(hadamard()),
        (-10.0f64..10.0).prop_map(|t| rot_x(t).unwrap()),
        (-10.0f64..10.0).prop_map(|t| rot_y(t).unwrap()),
        (-10.0f64..10.0).prop_map(|t| rot_z(t).unwrap()),
        (-10.0f64..10.0).prop_map(|t| phase_global(t).unwrap()),
    ]
}

proptest! {
    #[test]
    fn gates_preserve_norm(state in arb_state(3), gate in arb_gate(), target in 0usize..3) {
        let out = state.apply_1q(&gate, target).unwrap();
        prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn controlled_gates_preserve_norm(
        state in arb_state(4),
        gate in arb_gate(),
        control in 0usize..4,
        target in 0usize..4,
    ) {
        prop_assume!(control != target);
        let out = state.apply_controlled(&[control], target, &gate).unwrap();
        prop_assert!((out.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn outcome_probabilities_sum_to_one(state in arb_state(4), mask in 1usize..15) {
        let targets: Vec<usize> = (0..4).filter(|q| mask >> q & 1 == 1).collect();
        let outcomes = state.enumerate_outcomes(&targets).unwrap();
        let total: f64 = outcomes.iter().map(|o| o.probability).sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
        for outcome in &outcomes {
            prop_assert!(outcome.probability > 0.0);
            prop_assert!((outcome.collapsed.norm_sqr() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn sampled_outcome_matches_an_enumerated_branch(state in arb_state(3), seed in any::<u64>()) {
        let targets = [0usize, 1];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (bits, collapsed, probability) = state.measure_qubits(&targets, &mut rng).unwrap();
        let outcomes = state.enumerate_outcomes(&targets).unwrap();
        let hit = outcomes
            .iter()
            .find(|o| o.bits == bits)
            .expect("sampled branch must appear in the enumeration");
        prop_assert!((hit.probability - probability).abs() < 1e-12);
        prop_assert!(hit.collapsed.max_amplitude_deviation(&collapsed).unwrap() < 1e-12);
    }

    #[test]
    fn repeating_a_measurement_changes_nothing(
        state in arb_state(3),
        seed in any::<u64>(),
        keep_from in 1usize..3,
    ) {
        let targets: Vec<usize> = (0..keep_from).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (bits, collapsed, _) = state.measure_qubits(&targets, &mut rng).unwrap();
        let rebuilt = StateVec64::basis_state(targets.len(), &bits.to_string())
            .unwrap()
            .tensor(&collapsed)
            .unwrap();
        let (bits_again, collapsed_again, probability) =
            rebuilt.measure_qubits(&targets, &mut rng).unwrap();
        prop_assert_eq!(bits_again, bits);
        prop_assert!((probability - 1.0).abs() < 1e-10);
        prop_assert!(collapsed_again.max_amplitude_deviation(&collapsed).unwrap() < 1e-12);
    }

    #[test]
    fn tensor_of_basis_states_concatenates_labels(a in "[01]{1,3}", b in "[01]{1,3}") {
        let left = StateVec64::basis_state(a.len(), &a).unwrap();
        let right = StateVec64::basis_state(b.len(), &b).unwrap();
        let joined = left.tensor(&right).unwrap();
        let expected = StateVec64::basis_state(a.len() + b.len(), &format!("{a}{b}")).unwrap();
        prop_assert_eq!(joined, expected);
    }

    #[test]
    fn rotations_compose_additively(axis in 0usize..3, t1 in -6.0f64..6.0, t2 in -6.0f64..6.0) {
        let rot = |t: f64| match axis {
            0 => rot_x(t),
            1 => rot_y(t),
            _ => rot_z(t),
        }
        .unwrap();
        let combined = rot(t1).compose(&rot(t2));
        prop_assert!(combined.max_entry_deviation(&rot(t1 + t2)) < 1e-10);
    }

    #[test]
    fn single_flip_recovery_is_exact(theta in 0.0f64..PI, phi in 0.0f64..TAU, k in 0usize..3) {
        let coords = Bloch64::new(theta, phi).unwrap();
        let encoded = encode(&make_input_state(&coords)).unwrap();
        let corrupted = encoded.apply_1q(&pauli_x(), k).unwrap();
        let (recovered, syndrome) = diagnose_and_recover_deterministic(&corrupted).unwrap();
        prop_assert_eq!(syndrome.index, k + 1);
        prop_assert!(recovered.max_amplitude_deviation(&encoded).unwrap() < 1e-10);
    }

    #[test]
    fn syndrome_collapse_is_stable_under_remeasurement(
        state in arb_state(3),
        seed in any::<u64>(),
    ) {
        let projectors = syndrome_projectors();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (index, collapsed, _) = state.measure_projectors(&projectors, &mut rng).unwrap();
        let (again, collapsed_again, probability) =
            collapsed.measure_projectors(&projectors, &mut rng).unwrap();
        prop_assert_eq!(again, index);
        prop_assert!((probability - 1.0).abs() < 1e-10);
        prop_assert!(collapsed_again.max_amplitude_deviation(&collapsed).unwrap() < 1e-12);
    }

    #[test]
    fn teleportation_branches_are_exact_for_any_input(
        theta in 0.0f64..PI,
        phi in 0.0f64..TAU,
    ) {
        let coords = Bloch64::new(theta, phi).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let run = enumerate_forward(&coords, &NoiseSpec64::none(), &mut rng).unwrap();
        prop_assert_eq!(run.branches.len(), 16);
        for branch in &run.branches {
            prop_assert!((branch.probability - 1.0 / 16.0).abs() < 1e-10);
            prop_assert!(branch.corrected.max_amplitude_deviation(&run.input).unwrap() < 1e-10);
        }
    }
}
