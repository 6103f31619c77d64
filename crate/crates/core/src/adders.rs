//! The basis adder, the encode / local-gate / decode autoencoder pipeline and
//! the controlled-gate encoding solver.
//!
//! Register layout: qubits 0 and 1 hold the addends, qubit 2 is the ancilla
//! that starts in `|0>` and carries the sum.

use nalgebra::DVector;

use crate::circuit::{Circuit, Control, Gate, GateApplication};
use crate::error::{Error, Result};
use crate::fidelity::{classical_fidelity, quantum_fidelity, shot_fidelity, FidelityMethod, FidelityReport};
use crate::gates;
use crate::linalg::{max_abs_diff, unitarity_deviation, CMatrix, C64, ONE, ZERO};
use crate::noise::{noisy_run, pre_measurement, NoiseModel};
use crate::sim::{measurement_distribution, sample_shots_seeded, DensityMatrix, Distribution, StateVector};

pub const ANCILLA: usize = 2;
pub const DATA: [usize; 2] = [0, 1];

/// A three-qubit adder circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct AdderSpec {
    pub circuit: Circuit,
    pub label: String,
}

impl AdderSpec {
    pub fn new(circuit: Circuit, label: impl Into<String>) -> Result<Self> {
        if circuit.n_qubits() != 3 {
            return Err(Error::Size(format!(
                "an adder acts on 3 qubits, got {}",
                circuit.n_qubits()
            )));
        }
        Ok(AdderSpec {
            circuit,
            label: label.into(),
        })
    }

    /// Adder followed by its inverse.
    pub fn encode_decode(&self) -> Circuit {
        self.circuit
            .then(&self.circuit.dagger())
            .expect("same register")
            .with_name(format!("{}-roundtrip", self.label))
    }
}

/// Gate list of the basis adder in execution order:
/// `CNOT(1,2) CH(2,3) CNOT(1,2) CNOT(!1,2) CNOT(!1,3) CCNOT(2 !3, 1) CNOT(!1,3) CNOT(!1,2)`
/// in one-based labels.
pub fn basis_adder() -> AdderSpec {
    let (q1, q2, q3) = (0, 1, 2);
    let cnot = |c: Control, t| GateApplication::cnot(c, t);
    let gates = vec![
        cnot(Control::on(q1), q2),
        GateApplication::new(Gate::Ch, vec![Control::on(q2)], vec![q3]).expect("valid CH"),
        cnot(Control::on(q1), q2),
        cnot(Control::off(q1), q2),
        cnot(Control::off(q1), q3),
        GateApplication::new(Gate::Ccnot, vec![Control::on(q2), Control::off(q3)], vec![q1])
            .expect("valid Toffoli"),
        cnot(Control::off(q1), q3),
        cnot(Control::off(q1), q2),
    ];
    let circuit = Circuit::from_gates(3, gates)
        .expect("static circuit")
        .with_name("basis-adder");
    AdderSpec {
        circuit,
        label: "basis-adder".into(),
    }
}

/// `(cos t, sin t)`
pub fn angle_qubit(theta: f64) -> StateVector {
    StateVector::product_state(&[theta]).expect("one angle")
}

/// Normalised `psi1 + psi2`.
pub fn ideal_sum(psi1: &StateVector, psi2: &StateVector) -> Result<StateVector> {
    if psi1.n_qubits() != 1 || psi2.n_qubits() != 1 {
        return Err(Error::Size("ideal sum is defined for single qubits".into()));
    }
    let sum: Vec<C64> = psi1
        .amplitudes()
        .iter()
        .zip(psi2.amplitudes())
        .map(|(a, b)| a + b)
        .collect();
    let norm = sum.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    if norm < 1e-12 {
        return Err(Error::DegenerateSum);
    }
    StateVector::normalized(sum)
}

fn adder_input(theta1: f64, theta2: f64) -> StateVector {
    StateVector::product_state(&[theta1, theta2, 0.0]).expect("three angles")
}

/// `<target| Tr_{01}(|out><out|) |target>` straight from amplitudes.
pub(crate) fn ancilla_overlap(out: &StateVector, target: &StateVector) -> f64 {
    let amps = out.amplitudes();
    let t = target.amplitudes();
    amps.chunks(2)
        .map(|pair| (t[0].conj() * pair[0] + t[1].conj() * pair[1]).norm_sqr())
        .sum()
}

/// Overlap of the ancilla output with the ideal sum for inputs
/// `(cos t1, sin t1) (x) (cos t2, sin t2) (x) |0>`. With a noise model the
/// lowered circuit runs with per-gate Kraus noise and, when enabled, a
/// damping step on the ancilla before readout; CNOT and readout infidelity
/// are not included (they enter the forecast multiplicatively).
pub fn adder_fidelity(adder: &AdderSpec, theta1: f64, theta2: f64, noise: Option<&NoiseModel>) -> Result<f64> {
    let target = ideal_sum(&angle_qubit(theta1), &angle_qubit(theta2))?;
    let input = adder_input(theta1, theta2);
    match noise {
        None => Ok(ancilla_overlap(&adder.circuit.run(&input)?, &target)),
        Some(model) => {
            let rho = noisy_run(&adder.circuit, model, &input.to_density())?;
            let rho = pre_measurement(&rho, model, &[ANCILLA])?;
            quantum_fidelity(&rho.partial_trace(&[ANCILLA])?, &target)
        }
    }
}

/// Compiled noiseless fidelity evaluation over many angle pairs; used by the
/// genetic search.
pub(crate) fn mean_grid_fidelity(circuit: &Circuit, grid: &[(f64, f64)]) -> Result<(f64, f64, usize)> {
    let compiled = circuit.compiled();
    let mut sum = 0.0;
    let mut min = f64::INFINITY;
    let mut argmin = 0;
    for (k, &(t1, t2)) in grid.iter().enumerate() {
        let target = ideal_sum(&angle_qubit(t1), &angle_qubit(t2))?;
        let mut state = adder_input(t1, t2);
        for (m, ops) in &compiled {
            state.apply_unchecked(m, ops);
        }
        let f = ancilla_overlap(&state, &target);
        sum += f;
        if f < min {
            min = f;
            argmin = k;
        }
    }
    Ok((sum / grid.len() as f64, min, argmin))
}

/// Output of an encode, local gate, decode pass.
#[derive(Debug, Clone)]
pub struct RoundTrip {
    pub output: DensityMatrix,
    pub fidelity: f64,
}

/// Applies the adder, an optional single-qubit gate on the ancilla, then the
/// inverse adder. The fidelity compares the data-register reduced state with
/// the input itself, or with `C-g |input>` when a middle gate `g` is given.
pub fn autoencode_roundtrip(
    adder: &AdderSpec,
    input: &StateVector,
    middle: Option<Gate>,
    noise: Option<&NoiseModel>,
) -> Result<RoundTrip> {
    if input.n_qubits() != 2 {
        return Err(Error::Size("autoencoder input is a 2-qubit state".into()));
    }
    let mut pipeline = adder.circuit.clone();
    let mut ideal = input.clone();
    if let Some(g) = middle {
        if g.n_controls() != 0 || g.n_targets() != 1 {
            return Err(Error::Arity {
                gate: g.name(),
                expected: "a single-qubit gate".into(),
                got: format!("{} operands", g.n_controls() + g.n_targets()),
            });
        }
        pipeline.push(GateApplication::single(g, ANCILLA))?;
        ideal = ideal.apply_gate(&gates::controlled(&g.target_matrix(), false)?, &[0, 1])?;
    }
    let pipeline = pipeline.then(&adder.circuit.dagger())?;
    let rho_in = input.tensor(&StateVector::zero_state(1)?)?.to_density();
    let output = match noise {
        None => pipeline.run_density(&rho_in)?,
        Some(model) => pre_measurement(&noisy_run(&pipeline, model, &rho_in)?, model, &DATA)?,
    };
    let fidelity = quantum_fidelity(&output.partial_trace(&DATA)?, &ideal)?;
    Ok(RoundTrip { output, fidelity })
}

/// Solution of the controlled-gate encoding equations.
#[derive(Debug, Clone, PartialEq)]
pub struct GateEncodingResult {
    pub solvable: bool,
    /// Single-qubit replacement on the ancilla, when one exists.
    pub u_tilde: Option<CMatrix>,
    /// `a` in `diag(1, a)` when the replacement is diagonal.
    pub phase: Option<C64>,
    /// Largest residual of the four identities at the least-squares solution.
    pub residual: f64,
}

const ENCODING_TOL: f64 = 1e-9;

fn embed_on_ancilla(entry: (usize, usize), v: &DVector<C64>) -> DVector<C64> {
    // (I (x) I (x) E_rs) v with E_rs the matrix unit
    let (r, s) = entry;
    let mut out = DVector::from_element(8, ZERO);
    for ab in 0..4 {
        out[ab << 1 | r] = v[ab << 1 | s];
    }
    out
}

/// Solves, for the single-qubit `U~` on the ancilla,
///
/// ```text
/// (G (x) I) A |x0>  = A (I (x) I (x) U~) |x0>
/// (G (x) I) |x0>    = A (I (x) I (x) U~) A^dagger |x0>
/// ```
///
/// for `x in {00, 11}`, where `A` is the adder and `G` a two-qubit gate on the
/// data register. A least-squares solution with residual below 1e-9 that is
/// unitary counts as an exact encoding.
pub fn solve_encoding(adder: &AdderSpec, two_qubit: &CMatrix) -> Result<GateEncodingResult> {
    if two_qubit.shape() != (4, 4) {
        return Err(Error::Dimension("two-qubit gate must be 4x4".into()));
    }
    let a = adder.circuit.unitary()?;
    let a_dag = a.adjoint();
    let g = two_qubit.kronecker(&CMatrix::identity(2, 2));
    let unknowns = [(0, 0), (0, 1), (1, 0), (1, 1)];

    let mut rows: Vec<(Vec<C64>, C64)> = Vec::new();
    for x in [0b000usize, 0b110] {
        let e = DVector::from_fn(8, |i, _| if i == x { ONE } else { ZERO });
        // first pair: (G (x) I) A e = A (I I U~) e
        let rhs1 = &g * &a * &e;
        let cols1: Vec<DVector<C64>> = unknowns.iter().map(|&rs| &a * embed_on_ancilla(rs, &e)).collect();
        // second pair: (G (x) I) e = A (I I U~) A^dagger e
        let rhs2 = &g * &e;
        let ad_e = &a_dag * &e;
        let cols2: Vec<DVector<C64>> = unknowns
            .iter()
            .map(|&rs| &a * embed_on_ancilla(rs, &ad_e))
            .collect();
        for (cols, rhs) in [(cols1, rhs1), (cols2, rhs2)] {
            for i in 0..8 {
                rows.push((cols.iter().map(|col| col[i]).collect(), rhs[i]));
            }
        }
    }
    let m = CMatrix::from_fn(rows.len(), 4, |i, j| rows[i].0[j]);
    let b = DVector::from_fn(rows.len(), |i, _| rows[i].1);
    let svd = m.clone().svd(true, true);
    let x = svd
        .solve(&b, 1e-12)
        .map_err(|e| Error::Dimension(format!("encoding solve failed: {e}")))?;
    let residual = (&m * &x - &b).iter().map(|v| v.norm()).fold(0.0, f64::max);
    let u_tilde = CMatrix::from_row_slice(2, 2, x.as_slice());
    let solvable = residual < ENCODING_TOL && unitarity_deviation(&u_tilde) < ENCODING_TOL;
    if !solvable {
        return Ok(GateEncodingResult {
            solvable,
            u_tilde: None,
            phase: None,
            residual,
        });
    }
    let diagonal = u_tilde[(0, 1)].norm() < ENCODING_TOL && u_tilde[(1, 0)].norm() < ENCODING_TOL;
    let phase = (diagonal && (u_tilde[(0, 0)] - ONE).norm() < ENCODING_TOL).then(|| u_tilde[(1, 1)]);
    Ok(GateEncodingResult {
        solvable,
        u_tilde: Some(u_tilde),
        phase,
        residual,
    })
}

/// Encoding of the controlled version `I (+) u` against the basis adder.
pub fn encode_gate(u: &CMatrix) -> Result<GateEncodingResult> {
    let cu = gates::controlled(u, false)?;
    solve_encoding(&basis_adder(), &cu)
}

/// Encoding of an arbitrary two-qubit gate: only gates of the controlled
/// form `I (+) u` qualify. Anything else is unsolvable, with the distance
/// from that form as the residual.
pub fn encode_two_qubit_gate(g: &CMatrix) -> Result<GateEncodingResult> {
    if g.shape() != (4, 4) {
        return Err(Error::Dimension("two-qubit gate must be 4x4".into()));
    }
    let top = g.view((0, 0), (2, 2)).clone_owned();
    let off = g.view((0, 2), (2, 2)).iter().chain(g.view((2, 0), (2, 2)).iter()).map(|v| v.norm()).fold(0.0, f64::max);
    let distance = max_abs_diff(&top, &CMatrix::identity(2, 2)).max(off);
    if distance >= ENCODING_TOL {
        return Ok(GateEncodingResult {
            solvable: false,
            u_tilde: None,
            phase: None,
            residual: distance,
        });
    }
    encode_gate(&g.view((2, 2), (2, 2)).clone_owned())
}

/// Measurement basis of one qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn letter(&self) -> char {
        match self {
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    /// Rotation into the computational basis, in execution order.
    pub fn basis_change(&self) -> &'static [Gate] {
        match self {
            Pauli::X => &[Gate::H],
            Pauli::Y => &[Gate::Sdg, Gate::H],
            Pauli::Z => &[],
        }
    }
}

/// Which arm of the two-qubit-gate experiment runs between encode and decode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncodingMode {
    /// `CZ` on the data qubits.
    Direct,
    /// `Z` on the ancilla.
    Encoded,
}

impl EncodingMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            EncodingMode::Direct => "direct",
            EncodingMode::Encoded => "encoded",
        }
    }
}

fn basis_change_circuit(n_qubits: usize, qubits: &[usize], bases: [Pauli; 2]) -> Result<Circuit> {
    let mut c = Circuit::new(n_qubits)?;
    for (&q, basis) in qubits.iter().zip(bases) {
        for &g in basis.basis_change() {
            c.push(GateApplication::single(g, q))?;
        }
    }
    Ok(c)
}

/// The full experiment circuit: encode, arm, decode, basis change.
pub fn encoding_experiment_circuit(adder: &AdderSpec, mode: EncodingMode, bases: [Pauli; 2]) -> Result<Circuit> {
    let mut c = adder.circuit.clone();
    match mode {
        EncodingMode::Direct => c.push(GateApplication::new(Gate::Cz, vec![Control::on(0)], vec![1])?)?,
        EncodingMode::Encoded => c.push(GateApplication::single(Gate::Z, ANCILLA))?,
    }
    let c = c.then(&adder.circuit.dagger())?;
    c.then(&basis_change_circuit(3, &DATA, bases)?)
}

/// Ideal distribution of `CZ |input>` measured in `bases`.
pub fn ideal_cz_distribution(input: usize, bases: [Pauli; 2]) -> Result<Distribution> {
    let mut c = Circuit::from_gates(2, [GateApplication::new(Gate::Cz, vec![Control::on(0)], vec![1])?])?;
    c = c.then(&basis_change_circuit(2, &[0, 1], bases)?)?;
    let out = c.run(&StateVector::basis_state(2, input)?)?;
    measurement_distribution(&out, &[0, 1])
}

/// Runs the two-qubit-gate experiment on the computational basis input
/// `input` (0..4 over the data qubits) and returns the classical fidelity
/// of the data-register distribution against the ideal `CZ |input>`
/// distribution in the same bases. `shots = Some((n, seed))` samples a
/// histogram instead of using the exact distribution.
pub fn gate_encoding_experiment(
    adder: &AdderSpec,
    mode: EncodingMode,
    input: usize,
    bases: [Pauli; 2],
    noise: Option<&NoiseModel>,
    shots: Option<(u64, u64)>,
) -> Result<FidelityReport> {
    if input >= 4 {
        return Err(Error::Index(format!("data-register basis index {input} >= 4")));
    }
    let circuit = encoding_experiment_circuit(adder, mode, bases)?;
    let rho_in = StateVector::basis_state(3, input << 1)?.to_density();
    let rho = match noise {
        None => circuit.run_density(&rho_in)?,
        Some(model) => pre_measurement(&noisy_run(&circuit, model, &rho_in)?, model, &DATA)?,
    };
    let measured = measurement_distribution(&rho, &DATA)?;
    let ideal = ideal_cz_distribution(input, bases)?;
    Ok(match shots {
        None => FidelityReport {
            value: classical_fidelity(&ideal, &measured),
            method: FidelityMethod::ClassicalExact,
            shots: None,
            seed: None,
        },
        Some((n, seed)) => {
            let hist = sample_shots_seeded(&measured, n, seed)?;
            shot_fidelity(&ideal, &hist, Some(seed))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, cis, square};
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, FRAC_PI_8, PI};

    fn real(x: f64) -> C64 {
        c(x, 0.0)
    }

    fn ket(index: usize) -> StateVector {
        StateVector::basis_state(3, index).unwrap()
    }

    fn plus_minus(high: usize, sign: f64) -> StateVector {
        // |hi>|+/->
        let mut amps = vec![ZERO; 8];
        amps[high << 1] = real(FRAC_1_SQRT_2);
        amps[high << 1 | 1] = real(sign * FRAC_1_SQRT_2);
        StateVector::from_amplitudes(amps).unwrap()
    }

    #[test]
    fn truth_table_is_exact() {
        let adder = basis_adder();
        let cases = [
            (0b000, ket(0b000)),
            (0b010, plus_minus(0b01, 1.0)),
            (0b100, plus_minus(0b10, 1.0)),
            (0b110, ket(0b001)),
            (0b001, ket(0b110)),
            (0b011, plus_minus(0b01, -1.0)),
            (0b101, plus_minus(0b10, -1.0)),
            (0b111, ket(0b111)),
        ];
        for (input, expected) in cases {
            let out = adder.circuit.run(&ket(input)).unwrap();
            assert!(out.approx_eq(&expected, 1e-10), "input {input:03b}: {:?}", out.amplitudes());
        }
    }

    #[test]
    fn ideal_sum_examples() {
        let zero = angle_qubit(0.0);
        let one = angle_qubit(FRAC_PI_2);
        let s = ideal_sum(&zero, &one).unwrap();
        assert!(s.approx_eq(&angle_qubit(FRAC_PI_4), 1e-12));
        let psi = angle_qubit(0.3);
        assert!(ideal_sum(&psi, &psi).unwrap().approx_eq(&psi, 1e-12));
        let minus_zero = StateVector::from_amplitudes(vec![-ONE, ZERO]).unwrap();
        assert_eq!(ideal_sum(&zero, &minus_zero), Err(Error::DegenerateSum));
    }

    #[test]
    fn fidelity_examples() {
        let adder = basis_adder();
        assert!((adder_fidelity(&adder, 0.0, FRAC_PI_2, None).unwrap() - 1.0).abs() < 1e-9);
        assert!((adder_fidelity(&adder, FRAC_PI_4, FRAC_PI_4, None).unwrap() - 1.0).abs() < 1e-9);
        let (co, s) = (FRAC_PI_8.cos(), FRAC_PI_8.sin());
        let oracle = (co.powi(3) + s.powi(3)).powi(2) + 2.0 * co * co * s * s * co * co;
        let f = adder_fidelity(&adder, FRAC_PI_8, FRAC_PI_8, None).unwrap();
        assert!((f - oracle).abs() < 1e-12, "{f} vs {oracle}");
        assert!((f - 0.9268).abs() < 5e-4);
    }

    #[test]
    fn noisy_fidelity_path_matches_noiseless_with_ideal_model() {
        let adder = basis_adder();
        let a = adder_fidelity(&adder, 0.3, 1.1, None).unwrap();
        let b = adder_fidelity(&adder, 0.3, 1.1, Some(&NoiseModel::IDEAL)).unwrap();
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn roundtrip_examples() {
        let adder = basis_adder();
        let input = StateVector::product_state(&[0.4, 1.3]).unwrap();
        let rt = autoencode_roundtrip(&adder, &input, None, None).unwrap();
        assert!((rt.fidelity - 1.0).abs() < 1e-9);

        let eleven = StateVector::basis_state(2, 3).unwrap();
        let rt = autoencode_roundtrip(&adder, &eleven, Some(Gate::Z), None).unwrap();
        assert!((rt.fidelity - 1.0).abs() < 1e-9);
        // data register carries -|11>, ancilla back to |0>
        let out = rt.output.matrix();
        assert!((out[(0b110, 0b110)].re - 1.0).abs() < 1e-9);

        let zero = StateVector::basis_state(2, 0).unwrap();
        let rt = autoencode_roundtrip(&adder, &zero, Some(Gate::Z), None).unwrap();
        assert!((rt.output.matrix()[(0, 0)].re - 1.0).abs() < 1e-9);
    }

    #[test]
    fn encoding_examples() {
        let z = encode_gate(&gates::pauli_z()).unwrap();
        assert!(z.solvable);
        assert!((z.phase.unwrap() - real(-1.0)).norm() < 1e-10);
        assert!(max_abs_diff(z.u_tilde.as_ref().unwrap(), &gates::pauli_z()) < 1e-10);

        let t = encode_gate(&gates::phase_t()).unwrap();
        assert!(t.solvable);
        assert!((t.phase.unwrap() - cis(FRAC_PI_4)).norm() < 1e-10);

        assert!(!encode_gate(&gates::pauli_x()).unwrap().solvable);
        assert!(!encode_gate(&gates::hadamard()).unwrap().solvable);
    }

    #[test]
    fn two_qubit_encoding_requires_controlled_form() {
        let swap = gates::named_gate("SWAP").unwrap();
        assert!(!encode_two_qubit_gate(&swap).unwrap().solvable);
        let cz = gates::named_gate("CZ").unwrap();
        assert!(encode_two_qubit_gate(&cz).unwrap().solvable);
        assert!(!encode_two_qubit_gate(&gates::named_gate("CNOT").unwrap()).unwrap().solvable);
    }

    #[test]
    fn encoded_gate_matches_controlled_gate_on_subspace() {
        let adder = basis_adder();
        for theta in [0.3, -1.2, PI, FRAC_PI_2] {
            let u = gates::u1(theta);
            let res = encode_gate(&u).unwrap();
            assert!(res.solvable);
            let cu = gates::controlled(&u, false).unwrap();
            for input in [0usize, 3] {
                let data = StateVector::basis_state(2, input).unwrap();
                let direct = data.apply_gate(&cu, &[0, 1]).unwrap();
                let mut pipeline = adder.circuit.clone();
                pipeline.push(GateApplication::single(Gate::U1(theta), ANCILLA)).unwrap();
                let pipeline = pipeline.then(&adder.circuit.dagger()).unwrap();
                let out = pipeline.run(&data.tensor(&StateVector::zero_state(1).unwrap()).unwrap()).unwrap();
                let expected = direct.tensor(&StateVector::zero_state(1).unwrap()).unwrap();
                assert!(out.approx_eq_up_to_phase(&expected, 1e-9));
            }
        }
    }

    #[test]
    fn diagonal_with_offset_phase_solves_to_normalised_form() {
        let u = square(2, &[cis(0.4), ZERO, ZERO, cis(1.0)]);
        let res = encode_gate(&u).unwrap();
        assert!(res.solvable);
        assert!((res.phase.unwrap() - cis(1.0)).norm() < 1e-10);
    }

    #[test]
    fn experiment_ideal_values() {
        let adder = basis_adder();
        for mode in [EncodingMode::Direct, EncodingMode::Encoded] {
            for a in Pauli::ALL {
                for b in Pauli::ALL {
                    let rep = gate_encoding_experiment(&adder, mode, 3, [a, b], None, None).unwrap();
                    assert!((rep.value - 1.0).abs() < 1e-9, "{mode:?} {a:?}{b:?}: {}", rep.value);
                }
            }
        }
        let identity = AdderSpec::new(Circuit::new(3).unwrap(), "identity").unwrap();
        let rep = gate_encoding_experiment(&identity, EncodingMode::Encoded, 3, [Pauli::Z, Pauli::Z], None, None).unwrap();
        assert!((rep.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn adder_spec_requires_three_qubits() {
        assert!(AdderSpec::new(Circuit::new(2).unwrap(), "x").is_err());
    }
}
