//! Decompositions of composite gates and lowering to the `{U1, U3, CNOT}` basis.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::circuit::{Circuit, CnotConvention, Control, Gate, GateApplication};
use crate::error::{Error, Result};
use crate::linalg::{phase_aligned_diff, PHASE_TOL};

fn single(gate: Gate, q: usize) -> GateApplication {
    GateApplication::single(gate, q)
}

fn cx(c: usize, t: usize) -> GateApplication {
    GateApplication::cnot(Control::on(c), t)
}

/// Six-CNOT Toffoli network on controls `a`, `b` and target `t`, exact
/// including global phase.
fn toffoli_network(a: usize, b: usize, t: usize) -> Vec<GateApplication> {
    vec![
        single(Gate::H, t),
        cx(b, t),
        single(Gate::Tdg, t),
        cx(a, t),
        single(Gate::T, t),
        cx(b, t),
        single(Gate::Tdg, t),
        cx(a, t),
        single(Gate::T, b),
        single(Gate::T, t),
        single(Gate::H, t),
        cx(a, b),
        single(Gate::T, a),
        single(Gate::Tdg, b),
        cx(a, b),
    ]
}

/// `RY(pi/4) . CNOT . RY(-pi/4)` on the target: identity when the control is
/// off, `RY(-pi/4) X RY(pi/4) = H` when it is on.
fn ch_network(c: usize, t: usize) -> Vec<GateApplication> {
    vec![single(Gate::Ry(FRAC_PI_4), t), cx(c, t), single(Gate::Ry(-FRAC_PI_4), t)]
}

fn cu1_network(theta: f64, c: usize, t: usize) -> Vec<GateApplication> {
    vec![
        single(Gate::U1(theta / 2.0), c),
        cx(c, t),
        single(Gate::U1(-theta / 2.0), t),
        cx(c, t),
        single(Gate::U1(theta / 2.0), t),
    ]
}

/// Toffoli on qubits (0, 1 -> 2) over `{H, T, T^dagger, CNOT}`.
pub fn decompose_toffoli() -> Circuit {
    Circuit::from_gates(3, toffoli_network(0, 1, 2))
        .expect("static network")
        .with_name("toffoli")
}

/// Controlled-Hadamard (0 -> 1) with one CNOT.
pub fn decompose_ch() -> Circuit {
    Circuit::from_gates(2, ch_network(0, 1))
        .expect("static network")
        .with_name("ch")
}

/// Controlled-`U1(theta)` (0 -> 1) with two CNOTs.
pub fn decompose_cu1(theta: f64) -> Circuit {
    Circuit::from_gates(2, cu1_network(theta, 0, 1))
        .expect("static network")
        .with_name("cu1")
}

/// `X` as a `U3`, exact.
const X_U3: Gate = Gate::U3(PI, 0.0, PI);

fn lower_single(gate: Gate) -> Option<Gate> {
    Some(match gate {
        Gate::I => return None,
        Gate::X => X_U3,
        Gate::Y => Gate::U3(PI, FRAC_PI_2, FRAC_PI_2),
        Gate::Z => Gate::U1(PI),
        Gate::H => Gate::U3(FRAC_PI_2, 0.0, PI),
        Gate::S => Gate::U1(FRAC_PI_2),
        Gate::Sdg => Gate::U1(-FRAC_PI_2),
        Gate::T => Gate::U1(FRAC_PI_4),
        Gate::Tdg => Gate::U1(-FRAC_PI_4),
        Gate::Rx(t) => Gate::U3(t, -FRAC_PI_2, FRAC_PI_2),
        Gate::Ry(t) => Gate::U3(t, 0.0, 0.0),
        Gate::Rz(t) | Gate::U1(t) => Gate::U1(t),
        g @ Gate::U3(..) => g,
        _ => unreachable!("multi-qubit gate {} passed to lower_single", gate.name()),
    })
}

/// Positive-polarity network for a composite gate, before basis mapping.
fn expand(app: &GateApplication) -> Vec<GateApplication> {
    let ctl: Vec<usize> = app.controls.iter().map(|c| c.qubit).collect();
    let t = &app.targets;
    match app.gate {
        Gate::Cnot => vec![cx(ctl[0], t[0])],
        Gate::Cz => cu1_network(PI, ctl[0], t[0]),
        Gate::Cu1(theta) => cu1_network(theta, ctl[0], t[0]),
        Gate::Ch => ch_network(ctl[0], t[0]),
        Gate::Ccnot => toffoli_network(ctl[0], ctl[1], t[0]),
        Gate::Swap => vec![cx(t[0], t[1]), cx(t[1], t[0]), cx(t[0], t[1])],
        _ => vec![app.clone()],
    }
}

/// One application expressed in `{U1, U3, CNOT}`. Negated controls are
/// conjugated by `X`.
pub fn lower_application(app: &GateApplication) -> Vec<GateApplication> {
    let flips: Vec<GateApplication> = app
        .controls
        .iter()
        .filter(|c| c.negated)
        .map(|c| single(X_U3, c.qubit))
        .collect();
    let mut out = flips.clone();
    for step in expand(app) {
        if step.gate == Gate::Cnot {
            out.push(step);
        } else if let Some(g) = lower_single(step.gate) {
            out.push(single(g, step.targets[0]));
        }
    }
    out.extend(flips);
    out
}

/// Rewrites `circuit` over `{U1, U3, CNOT}` with positive controls and checks
/// the result against the input unitary up to global phase. The
/// paper-convention CNOT tally of the input is kept as metadata.
pub fn transpile(circuit: &Circuit) -> Result<Circuit> {
    let mut out = Circuit::new(circuit.n_qubits())?.with_name(circuit.name());
    for app in circuit.gates() {
        for low in lower_application(app) {
            out.push(low)?;
        }
    }
    out.set_paper_cnots(Some(circuit.cnot_count(CnotConvention::Paper)));
    if circuit.n_qubits() <= crate::circuit::MAX_UNITARY_QUBITS {
        let deviation = phase_aligned_diff(&circuit.unitary()?, &out.unitary()?);
        if deviation >= PHASE_TOL {
            return Err(Error::Constraint(format!(
                "transpiled circuit deviates from its source by {deviation:.3e}"
            )));
        }
    }
    Ok(out)
}

/// Whether every gate is `U1`, `U3` or a positive-control `CNOT`.
pub fn is_lowered(circuit: &Circuit) -> bool {
    circuit.gates().iter().all(|g| match g.gate {
        Gate::U1(_) | Gate::U3(..) => true,
        Gate::Cnot => !g.has_negated_control(),
        _ => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{self, named_gate};
    use crate::linalg::{equal_up_to_phase, max_abs_diff, CMatrix};
    use crate::sim::StateVector;

    #[test]
    fn toffoli_decomposition_is_exact() {
        let t = decompose_toffoli();
        let u = t.unitary().unwrap();
        assert!(max_abs_diff(&u, &named_gate("CCNOT").unwrap()) < 1e-9);
        assert_eq!(t.cnot_count(CnotConvention::Transpiled), 6);
        let out = t.run(&StateVector::basis_state(3, 0b110).unwrap()).unwrap();
        assert!((out.amplitude(0b111).norm() - 1.0).abs() < 1e-12);
        assert!(t.gates().iter().all(|g| matches!(g.gate, Gate::H | Gate::T | Gate::Tdg | Gate::S | Gate::Cnot)));
    }

    #[test]
    fn ch_decomposition() {
        let u = decompose_ch().unitary().unwrap();
        assert!(equal_up_to_phase(&u, &named_gate("CH").unwrap(), 1e-9));
        let s = StateVector::product_state(&[0.0, 0.7]).unwrap();
        let out = decompose_ch().run(&s).unwrap();
        assert!(out.approx_eq(&s, 1e-12));
    }

    #[test]
    fn cu1_decomposition() {
        assert!(equal_up_to_phase(&decompose_cu1(PI).unitary().unwrap(), &named_gate("CZ").unwrap(), 1e-9));
        assert!(equal_up_to_phase(&decompose_cu1(0.0).unitary().unwrap(), &CMatrix::identity(4, 4), 1e-9));
        assert_eq!(decompose_cu1(0.3).cnot_count(CnotConvention::Transpiled), 2);
        let th = 0.913;
        let expected = gates::controlled(&gates::u1(th), false).unwrap();
        assert!(equal_up_to_phase(&decompose_cu1(th).unitary().unwrap(), &expected, 1e-9));
    }

    #[test]
    fn transpile_cz_and_empty() {
        let cz = Circuit::from_gates(
            2,
            [GateApplication::new(Gate::Cz, vec![Control::on(0)], vec![1]).unwrap()],
        )
        .unwrap();
        let low = transpile(&cz).unwrap();
        assert!(is_lowered(&low));
        assert!(equal_up_to_phase(&low.unitary().unwrap(), &cz.unitary().unwrap(), 1e-8));
        assert_eq!(low.cnot_count(CnotConvention::Transpiled), 2);

        let empty = Circuit::new(3).unwrap();
        assert!(transpile(&empty).unwrap().is_empty());
    }

    #[test]
    fn negated_controls_are_eliminated() {
        let c = Circuit::from_gates(
            3,
            [GateApplication::new(Gate::Ccnot, vec![Control::on(1), Control::off(2)], vec![0]).unwrap()],
        )
        .unwrap();
        let low = transpile(&c).unwrap();
        assert!(is_lowered(&low));
        assert!(equal_up_to_phase(&low.unitary().unwrap(), &c.unitary().unwrap(), 1e-8));
    }

    #[test]
    fn lowered_circuit_is_fixed_point() {
        let c = Circuit::from_gates(
            2,
            [
                single(Gate::U3(0.1, 0.2, 0.3), 0),
                cx(0, 1),
                single(Gate::U1(-0.4), 1),
            ],
        )
        .unwrap();
        let low = transpile(&c).unwrap();
        assert_eq!(low.gates(), c.gates());
    }
}
