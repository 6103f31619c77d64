mod common;

use proptest::prelude::*;

use qadder_core::gates::{controlled, rotation, u1, u3, Axis};
use qadder_core::linalg::{identity, is_unitary, max_abs_diff, phase_aligned_diff};
use qadder_core::transpile::{is_lowered, transpile};
use qadder_core::CnotConvention;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn constructors_are_unitary(t in common::angle(), p in common::angle(), l in common::angle(), neg in any::<bool>()) {
        prop_assert!(is_unitary(&u3(t, p, l), 1e-10));
        prop_assert!(is_unitary(&u1(t), 1e-10));
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            prop_assert!(is_unitary(&rotation(axis, t), 1e-10));
        }
        prop_assert!(is_unitary(&controlled(&u3(t, p, l), neg).unwrap(), 1e-10));
    }

    #[test]
    fn applications_are_unitary(app in common::application(3)) {
        prop_assert!(is_unitary(&app.matrix(), 1e-10));
    }

    #[test]
    fn dagger_inverts_and_is_an_involution(circuit in common::circuit(1..=3, 10)) {
        let dagger = circuit.dagger();
        let twice = dagger.dagger();
        prop_assert_eq!(twice.gates(), circuit.gates());
        let u = circuit.unitary().unwrap();
        prop_assert!(max_abs_diff(&dagger.unitary().unwrap(), &u.adjoint()) < 1e-9);
        let both = circuit.then(&dagger).unwrap().unitary().unwrap();
        prop_assert!(max_abs_diff(&both, &identity(1 << circuit.n_qubits())) < 1e-9);
    }

    #[test]
    fn transpile_preserves_unitary(circuit in common::circuit_on(3, 6)) {
        let lowered = transpile(&circuit).unwrap();
        prop_assert!(is_lowered(&lowered));
        prop_assert!(phase_aligned_diff(&lowered.unitary().unwrap(), &circuit.unitary().unwrap()) < 1e-8);
        prop_assert_eq!(
            lowered.cnot_count(CnotConvention::Transpiled),
            circuit.cnot_count(CnotConvention::Transpiled)
        );
    }
}
