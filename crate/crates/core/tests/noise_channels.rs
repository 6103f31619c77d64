mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_8};

use proptest::prelude::*;

use qadder_core::adders::{adder_fidelity, basis_adder};
use qadder_core::linalg::max_abs_diff;
use qadder_core::noise::{amplitude_damping, dephasing, noisy_run, pre_measurement, NoiseModel};
use qadder_core::DensityMatrix;

fn model() -> impl Strategy<Value = NoiseModel> {
    (0.0f64..0.2, 0.0f64..0.2, any::<bool>()).prop_map(|(d, z, t1)| NoiseModel {
        p_damp: d,
        p_dephase: z,
        t1_readout: t1,
        ..NoiseModel::ADVANCED
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn channels_are_complete(p in 0.0f64..=1.0) {
        prop_assert!(amplitude_damping(p).unwrap().completeness_deviation() < 1e-10);
        prop_assert!(dephasing(p).unwrap().completeness_deviation() < 1e-10);
    }

    #[test]
    fn channels_preserve_trace(rho in common::density(2), p in 0.0f64..=1.0, q in 0usize..2) {
        for ch in [amplitude_damping(p).unwrap(), dephasing(p).unwrap()] {
            let out = rho.apply_channel(&ch, &[q]).unwrap();
            prop_assert!((out.trace() - rho.trace()).abs() < 1e-10);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn noisy_run_stays_physical((circuit, psi) in common::circuit_and_state(1..=3, 8), m in model()) {
        let rho = noisy_run(&circuit, &m, &psi.to_density()).unwrap();
        let all: Vec<usize> = (0..circuit.n_qubits()).collect();
        let rho = pre_measurement(&rho, &m, &all).unwrap();
        prop_assert!(rho.hermiticity_deviation() < 1e-10);
        prop_assert!((rho.trace() - 1.0).abs() < 1e-10);
        prop_assert!(rho.min_eigenvalue() >= -1e-9);
    }

    #[test]
    fn noisy_run_is_linear((circuit, a) in common::circuit_and_state(2..=2, 6), b in common::state(2), w in 0.0f64..1.0, m in model()) {
        let (ra, rb) = (a.to_density(), b.to_density());
        let mix = DensityMatrix::from_matrix(ra.matrix() * qadder_core::linalg::c(w, 0.0) + rb.matrix() * qadder_core::linalg::c(1.0 - w, 0.0)).unwrap();
        let lhs = noisy_run(&circuit, &m, &mix).unwrap();
        let (oa, ob) = (noisy_run(&circuit, &m, &ra).unwrap(), noisy_run(&circuit, &m, &rb).unwrap());
        let rhs = oa.matrix() * qadder_core::linalg::c(w, 0.0) + ob.matrix() * qadder_core::linalg::c(1.0 - w, 0.0);
        prop_assert!(max_abs_diff(lhs.matrix(), &rhs) < 1e-10);
    }
}

#[test]
fn dephasing_is_unital() {
    for p in [0.0, 0.003, 0.25, 0.5, 1.0] {
        let mixed = DensityMatrix::maximally_mixed(2).unwrap();
        let out = mixed.apply_channel(&dephasing(p).unwrap(), &[1]).unwrap();
        assert!(max_abs_diff(out.matrix(), mixed.matrix()) < 1e-12);
    }
}

#[test]
fn noise_never_raises_table_one_fidelity() {
    let adder = basis_adder();
    let inputs = [
        (0.0, 0.0),
        (FRAC_PI_2, FRAC_PI_2),
        (FRAC_PI_2, 0.0),
        (0.0, FRAC_PI_2),
        (FRAC_PI_4, FRAC_PI_4),
        (FRAC_PI_8, FRAC_PI_8),
    ];
    for (t1, t2) in inputs {
        let clean = adder_fidelity(&adder, t1, t2, None).unwrap();
        let noisy = adder_fidelity(&adder, t1, t2, Some(&NoiseModel::ADVANCED)).unwrap();
        assert!(noisy <= clean + 1e-9, "({t1}, {t2}): {noisy} > {clean}");
    }
}
