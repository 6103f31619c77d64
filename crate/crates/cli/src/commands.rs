use std::path::Path;

use serde::Serialize;

use qadder_core::adders::{encode_gate, encode_two_qubit_gate, AdderSpec, GateEncodingResult};
use qadder_core::circuit::{Circuit, Control, Gate, GateApplication};
use qadder_core::ga::{evolve, ga_autoencoder, GaConfig, GaResult};
use qadder_core::linalg::CMatrix;
use qadder_core::noise::{apply_readout_error, noisy_run, pre_measurement, NoiseModel};
use qadder_core::sim::{measurement_distribution, sample_shots_seeded};
use qadder_core::text::{self, parse_angle};
use qadder_core::transpile::transpile;
use qadder_core::{CnotConvention, Distribution, StateVector};

use crate::error::{CliError, CliResult};

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read(path)
        .map_err(|e| CliError::input(format!("{}: {e}", path.display())))
        .and_then(|bytes| {
            String::from_utf8(bytes).map_err(|_| CliError::input(format!("{}: not valid UTF-8", path.display())))
        })
}

pub fn load_circuit(path: &Path) -> CliResult<Circuit> {
    let src = read_file(path)?;
    text::parse(&src).map_err(|e| CliError::input(format!("{}:{}:{}: {}", path.display(), e.line, e.column, e.kind)))
}

pub fn load_adder(path: &Path) -> CliResult<AdderSpec> {
    let circuit = load_circuit(path)?;
    let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    AdderSpec::new(circuit, label).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

pub fn load_noise(path: &Path) -> CliResult<NoiseModel> {
    NoiseModel::parse(&read_file(path)?).map_err(|e| CliError::input(format!("{}: {e}", path.display())))
}

/// Comma-separated angles, one per leading qubit; remaining qubits are |0>.
pub fn parse_input_angles(spec: &str, n_qubits: usize) -> CliResult<StateVector> {
    let mut angles: Vec<f64> = spec
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_angle(s).ok_or_else(|| CliError::input(format!("invalid input angle `{}`", s.trim()))))
        .collect::<CliResult<_>>()?;
    if angles.len() > n_qubits {
        return Err(CliError::input(format!(
            "{} input angles for a {n_qubits}-qubit circuit",
            angles.len()
        )));
    }
    angles.resize(n_qubits, 0.0);
    StateVector::product_state(&angles).map_err(CliError::input)
}

/// One-based, comma-separated qubit list.
pub fn parse_qubit_list(spec: &str, n_qubits: usize) -> CliResult<Vec<usize>> {
    let qubits: Vec<usize> = spec
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| match s.trim().parse::<usize>() {
            Ok(q) if (1..=n_qubits).contains(&q) => Ok(q - 1),
            _ => Err(CliError::input(format!("invalid qubit `{}` for a {n_qubits}-qubit circuit", s.trim()))),
        })
        .collect::<CliResult<_>>()?;
    if qubits.is_empty() {
        return Err(CliError::input("empty qubit list"));
    }
    for (i, q) in qubits.iter().enumerate() {
        if qubits[..i].contains(q) {
            return Err(CliError::input(format!("qubit {} listed twice", q + 1)));
        }
    }
    Ok(qubits)
}

#[derive(Debug, Clone, Serialize)]
pub struct Outcome {
    pub outcome: String,
    pub probability: f64,
    pub count: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Simulation {
    pub n_qubits: usize,
    /// One-based.
    pub measured: Vec<usize>,
    pub noisy: bool,
    pub shots: Option<u64>,
    pub outcomes: Vec<Outcome>,
}

pub fn simulate(
    circuit: &Circuit,
    input: &StateVector,
    measured: &[usize],
    noise: Option<&NoiseModel>,
    shots: Option<u64>,
    seed: u64,
) -> CliResult<Simulation> {
    let dist: Distribution = match noise {
        None => {
            let out = circuit.run(input).map_err(CliError::input)?;
            measurement_distribution(&out, measured).map_err(CliError::internal)?
        }
        Some(model) => {
            let rho = noisy_run(circuit, model, &input.to_density()).map_err(CliError::input)?;
            let rho = pre_measurement(&rho, model, measured).map_err(CliError::internal)?;
            let dist = measurement_distribution(&rho, measured).map_err(CliError::internal)?;
            apply_readout_error(&dist, model).map_err(CliError::internal)?
        }
    };
    let labels = dist.labels();
    let outcomes = match shots {
        None => labels
            .into_iter()
            .zip(dist.probabilities())
            .map(|(outcome, &probability)| Outcome {
                outcome,
                probability,
                count: None,
            })
            .collect(),
        Some(n) => {
            let hist = sample_shots_seeded(&dist, n, seed).map_err(CliError::input)?;
            let freq = hist.frequencies();
            labels
                .into_iter()
                .zip(hist.counts().iter().zip(freq.probabilities()))
                .map(|(outcome, (&count, &probability))| Outcome {
                    outcome,
                    probability,
                    count: Some(count),
                })
                .collect()
        }
    };
    Ok(Simulation {
        n_qubits: circuit.n_qubits(),
        measured: measured.iter().map(|q| q + 1).collect(),
        noisy: noise.is_some(),
        shots,
        outcomes,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct TranspileReport {
    pub cnots_paper: usize,
    pub cnots_transpiled: usize,
    pub cnots_lowered: usize,
    pub gates_in: usize,
    pub gates_out: usize,
}

pub fn transpile_circuit(circuit: &Circuit) -> CliResult<(Circuit, TranspileReport)> {
    let lowered = transpile(circuit).map_err(|e| match e {
        qadder_core::Error::Constraint(msg) => CliError::internal(msg),
        other => CliError::input(other),
    })?;
    let report = TranspileReport {
        cnots_paper: circuit.cnot_count(CnotConvention::Paper),
        cnots_transpiled: circuit.cnot_count(CnotConvention::Transpiled),
        cnots_lowered: lowered.cnot_count(CnotConvention::Transpiled),
        gates_in: circuit.len(),
        gates_out: lowered.len(),
    };
    Ok((lowered, report))
}

#[derive(Debug, Clone, Serialize)]
pub struct GaSummary {
    pub average: f64,
    pub minimum: f64,
    pub minimum_input: (f64, f64),
    pub gates: usize,
    pub cnots: usize,
    pub roundtrip_cnots: usize,
    pub generations: usize,
    pub final_best: f64,
}

pub fn run_ga(config: &GaConfig) -> CliResult<(GaResult, GaSummary)> {
    let result = evolve(config).map_err(CliError::input)?;
    let (adder, decoder) = ga_autoencoder(&result).map_err(CliError::internal)?;
    let roundtrip = adder.circuit.then(&decoder).map_err(CliError::internal)?;
    let summary = GaSummary {
        average: result.average,
        minimum: result.minimum,
        minimum_input: result.minimum_input,
        gates: result.circuit.len(),
        cnots: result.circuit.cnot_count(CnotConvention::Transpiled),
        roundtrip_cnots: roundtrip.cnot_count(CnotConvention::Transpiled),
        generations: config.generations,
        final_best: result.history.last().copied().unwrap_or(result.average),
    };
    Ok((result, summary))
}

#[derive(Debug, Clone, Serialize)]
pub struct EncodingReport {
    pub gate: String,
    pub solvable: bool,
    /// Row-major `[re, im]` entries of the ancilla gate.
    pub u_tilde: Option<Vec<[f64; 2]>>,
    pub phase: Option<[f64; 2]>,
    pub residual: f64,
}

fn two_qubit_matrix(gate: Gate) -> CliResult<CMatrix> {
    let app = match gate.n_controls() + gate.n_targets() {
        2 if gate.n_controls() == 1 => GateApplication::new(gate, vec![Control::on(0)], vec![1]),
        2 => GateApplication::new(gate, vec![], vec![0, 1]),
        _ => return Err(CliError::input(format!("{} is not a two-qubit gate", gate.name()))),
    }
    .map_err(CliError::internal)?;
    Circuit::from_gates(2, [app])
        .and_then(|c| c.unitary())
        .map_err(CliError::internal)
}

/// `NAME[(angles)]`.
fn parse_gate_token(spec: &str) -> CliResult<Option<Gate>> {
    let spec = spec.trim();
    let (name, params) = match spec.split_once('(') {
        None => (spec, Vec::new()),
        Some((name, rest)) => {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| CliError::input(format!("unclosed parameter list in `{spec}`")))?;
            let params = inner
                .split(',')
                .map(|p| parse_angle(p).ok_or_else(|| CliError::input(format!("invalid angle `{}`", p.trim()))))
                .collect::<CliResult<Vec<f64>>>()?;
            (name, params)
        }
    };
    match Gate::from_name(name, &params) {
        Ok(g) => Ok(Some(g)),
        Err(qadder_core::Error::UnknownGate(_)) => Ok(None),
        Err(e) => Err(CliError::input(e)),
    }
}

/// Accepts a two-qubit gate name (`CZ`, `CNOT`, `SWAP`, `CU1(t)`), a
/// single-qubit gate `U` (read as controlled-`U`), or `C` followed by a
/// single-qubit gate (`CT`, `CSDG`, `CRZ(0.3)`).
pub fn encode_gate_spec(spec: &str) -> CliResult<EncodingReport> {
    let result: GateEncodingResult = match parse_gate_token(spec)? {
        Some(g) if g.n_controls() + g.n_targets() == 2 => {
            encode_two_qubit_gate(&two_qubit_matrix(g)?).map_err(CliError::internal)?
        }
        Some(g) if g.n_controls() + g.n_targets() == 1 => encode_gate(&g.target_matrix()).map_err(CliError::internal)?,
        Some(g) => return Err(CliError::input(format!("{} acts on more than two qubits", g.name()))),
        None => {
            let inner = spec
                .trim()
                .strip_prefix(['C', 'c'])
                .ok_or_else(|| CliError::input(format!("unknown gate `{}`", spec.trim())))?;
            match parse_gate_token(inner)? {
                Some(g) if g.n_controls() + g.n_targets() == 1 => {
                    encode_gate(&g.target_matrix()).map_err(CliError::internal)?
                }
                _ => return Err(CliError::input(format!("unknown gate `{}`", spec.trim()))),
            }
        }
    };
    Ok(EncodingReport {
        gate: spec.trim().to_string(),
        solvable: result.solvable,
        u_tilde: result
            .u_tilde
            .map(|u| (0..2).flat_map(|r| (0..2).map(move |c| (r, c))).map(|(r, c)| [u[(r, c)].re, u[(r, c)].im]).collect()),
        phase: result.phase.map(|p| [p.re, p.im]),
        residual: result.residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_gate_specs() {
        let cz = encode_gate_spec("CZ").unwrap();
        assert!(cz.solvable);
        let u = cz.u_tilde.unwrap();
        assert!((u[0][0] - 1.0).abs() < 1e-10 && (u[3][0] + 1.0).abs() < 1e-10);
        let ct = encode_gate_spec("CT").unwrap();
        let u = ct.u_tilde.unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((u[3][0] - r).abs() < 1e-10 && (u[3][1] - r).abs() < 1e-10);
        assert!(!encode_gate_spec("CNOT").unwrap().solvable);
        assert!(!encode_gate_spec("SWAP").unwrap().solvable);
        assert!(encode_gate_spec("CU1(pi/3)").unwrap().solvable);
        assert!(encode_gate_spec("U1(0.2)").unwrap().solvable);
        assert!(encode_gate_spec("CFOO").is_err());
        assert!(encode_gate_spec("CCNOT").is_err());
    }

    #[test]
    fn input_and_qubit_lists() {
        let s = parse_input_angles("pi/2, 0", 3).unwrap();
        assert!((s.amplitude(0b100).re - 1.0).abs() < 1e-12);
        assert!(parse_input_angles("0,0,0,0", 3).is_err());
        assert_eq!(parse_qubit_list("3,1", 3).unwrap(), vec![2, 0]);
        assert!(parse_qubit_list("0", 3).is_err());
        assert!(parse_qubit_list("1,1", 3).is_err());
    }
}
