#![allow(dead_code)]

use proptest::prelude::*;

use qadder_core::linalg::{c, C64};
use qadder_core::{Circuit, Control, DensityMatrix, Gate, GateApplication, StateVector};

pub fn angle() -> impl Strategy<Value = f64> {
    -7.0f64..7.0
}

pub fn gate() -> impl Strategy<Value = Gate> {
    prop_oneof![
        Just(Gate::I),
        Just(Gate::X),
        Just(Gate::Y),
        Just(Gate::Z),
        Just(Gate::H),
        Just(Gate::S),
        Just(Gate::Sdg),
        Just(Gate::T),
        Just(Gate::Tdg),
        angle().prop_map(Gate::Rx),
        angle().prop_map(Gate::Ry),
        angle().prop_map(Gate::Rz),
        angle().prop_map(Gate::U1),
        (angle(), angle(), angle()).prop_map(|(a, b, l)| Gate::U3(a, b, l)),
        Just(Gate::Cnot),
        Just(Gate::Cz),
        Just(Gate::Ch),
        angle().prop_map(Gate::Cu1),
        Just(Gate::Ccnot),
        Just(Gate::Swap),
    ]
}

/// A gate on distinct random operands of an `n`-qubit register, with
/// random control polarities.
pub fn application(n: usize) -> impl Strategy<Value = GateApplication> {
    let order = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
    (gate(), order, prop::collection::vec(any::<bool>(), 2))
        .prop_filter("gate wider than register", move |(g, _, _)| g.n_controls() + g.n_targets() <= n)
        .prop_map(|(g, order, negated)| {
            let k = g.n_controls();
            let controls = order[..k]
                .iter()
                .zip(&negated)
                .map(|(&q, &neg)| Control { qubit: q, negated: neg })
                .collect();
            let targets = order[k..k + g.n_targets()].to_vec();
            GateApplication::new(g, controls, targets).expect("valid operands")
        })
}

pub fn circuit_on(n: usize, max_len: usize) -> impl Strategy<Value = Circuit> {
    prop::collection::vec(application(n), 0..=max_len)
        .prop_map(move |gates| Circuit::from_gates(n, gates).expect("operands in range"))
}

pub fn circuit(qubits: std::ops::RangeInclusive<usize>, max_len: usize) -> impl Strategy<Value = Circuit> {
    qubits.prop_flat_map(move |n| circuit_on(n, max_len))
}

pub fn state(n: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1usize << n)
        .prop_filter("near-zero vector", |v| v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-3)
        .prop_map(|v| StateVector::normalized(v.into_iter().map(|(a, b)| c(a, b)).collect::<Vec<C64>>()).unwrap())
}

pub fn circuit_and_state(qubits: std::ops::RangeInclusive<usize>, max_len: usize) -> impl Strategy<Value = (Circuit, StateVector)> {
    qubits.prop_flat_map(move |n| (circuit_on(n, max_len), state(n)))
}

/// Mixture of two random pure states.
pub fn density(n: usize) -> impl Strategy<Value = DensityMatrix> {
    (state(n), state(n), 0.0f64..1.0).prop_map(|(a, b, w)| {
        let m = a.to_density().matrix() * c(w, 0.0) + b.to_density().matrix() * c(1.0 - w, 0.0);
        DensityMatrix::from_matrix(m).unwrap()
    })
}
