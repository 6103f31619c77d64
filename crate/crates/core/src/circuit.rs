//! Circuits as ordered gate applications.
//!
//! `gates[0]` acts first. Operator products written left-to-right in the
//! literature therefore appear reversed here.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt;

use crate::error::{Error, Result};
use crate::gates::{self, controlled_block, Axis};
use crate::linalg::CMatrix;
use crate::sim::{check_qubits, DensityMatrix, StateVector};

/// Library gates. Controlled variants carry their control count implicitly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    I,
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    T,
    Tdg,
    Rx(f64),
    Ry(f64),
    Rz(f64),
    U1(f64),
    U3(f64, f64, f64),
    Cnot,
    Cz,
    Ch,
    Cu1(f64),
    Ccnot,
    Swap,
}

impl Gate {
    /// Canonical upper-case name used by the text format.
    pub fn name(&self) -> &'static str {
        match self {
            Gate::I => "I",
            Gate::X => "X",
            Gate::Y => "Y",
            Gate::Z => "Z",
            Gate::H => "H",
            Gate::S => "S",
            Gate::Sdg => "SDG",
            Gate::T => "T",
            Gate::Tdg => "TDG",
            Gate::Rx(_) => "RX",
            Gate::Ry(_) => "RY",
            Gate::Rz(_) => "RZ",
            Gate::U1(_) => "U1",
            Gate::U3(..) => "U3",
            Gate::Cnot => "CNOT",
            Gate::Cz => "CZ",
            Gate::Ch => "CH",
            Gate::Cu1(_) => "CU1",
            Gate::Ccnot => "CCNOT",
            Gate::Swap => "SWAP",
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            Gate::Rx(t) | Gate::Ry(t) | Gate::Rz(t) | Gate::U1(t) | Gate::Cu1(t) => vec![t],
            Gate::U3(t, p, l) => vec![t, p, l],
            _ => Vec::new(),
        }
    }

    /// Builds a gate from its name (case-insensitive, common aliases
    /// accepted) and parameter list.
    pub fn from_name(name: &str, params: &[f64]) -> Result<Gate> {
        let upper = name.to_ascii_uppercase();
        let canonical = match upper.as_str() {
            "ID" => "I",
            "NOT" => "X",
            "SDAG" | "S†" => "SDG",
            "TDAG" | "T†" => "TDG",
            "CX" => "CNOT",
            "CCX" | "TOFFOLI" => "CCNOT",
            "CP" | "CPHASE" => "CU1",
            "P" | "PHASE" => "U1",
            other => other,
        };
        let arity = match canonical {
            "RX" | "RY" | "RZ" | "U1" | "CU1" => 1,
            "U3" => 3,
            "I" | "X" | "Y" | "Z" | "H" | "S" | "SDG" | "T" | "TDG" | "CNOT" | "CZ" | "CH"
            | "CCNOT" | "SWAP" => 0,
            _ => return Err(Error::UnknownGate(name.to_string())),
        };
        if params.len() != arity {
            return Err(Error::Arity {
                gate: Self::static_name(canonical),
                expected: format!("{arity} parameter(s)"),
                got: format!("{}", params.len()),
            });
        }
        Ok(match canonical {
            "I" => Gate::I,
            "X" => Gate::X,
            "Y" => Gate::Y,
            "Z" => Gate::Z,
            "H" => Gate::H,
            "S" => Gate::S,
            "SDG" => Gate::Sdg,
            "T" => Gate::T,
            "TDG" => Gate::Tdg,
            "RX" => Gate::Rx(params[0]),
            "RY" => Gate::Ry(params[0]),
            "RZ" => Gate::Rz(params[0]),
            "U1" => Gate::U1(params[0]),
            "U3" => Gate::U3(params[0], params[1], params[2]),
            "CNOT" => Gate::Cnot,
            "CZ" => Gate::Cz,
            "CH" => Gate::Ch,
            "CU1" => Gate::Cu1(params[0]),
            "CCNOT" => Gate::Ccnot,
            _ => Gate::Swap,
        })
    }

    fn static_name(canonical: &str) -> &'static str {
        const NAMES: [&str; 20] = [
            "I", "X", "Y", "Z", "H", "S", "SDG", "T", "TDG", "RX", "RY", "RZ", "U1", "U3", "CNOT",
            "CZ", "CH", "CU1", "CCNOT", "SWAP",
        ];
        NAMES.iter().find(|n| **n == canonical).copied().unwrap_or("?")
    }

    pub fn n_controls(&self) -> usize {
        match self {
            Gate::Cnot | Gate::Cz | Gate::Ch | Gate::Cu1(_) => 1,
            Gate::Ccnot => 2,
            _ => 0,
        }
    }

    pub fn n_targets(&self) -> usize {
        match self {
            Gate::Swap => 2,
            _ => 1,
        }
    }

    /// The operator applied to the targets when all controls fire.
    pub fn target_matrix(&self) -> CMatrix {
        match *self {
            Gate::I => CMatrix::identity(2, 2),
            Gate::X | Gate::Cnot | Gate::Ccnot => gates::pauli_x(),
            Gate::Y => gates::pauli_y(),
            Gate::Z | Gate::Cz => gates::pauli_z(),
            Gate::H | Gate::Ch => gates::hadamard(),
            Gate::S => gates::u1(FRAC_PI_2),
            Gate::Sdg => gates::u1(-FRAC_PI_2),
            Gate::T => gates::u1(FRAC_PI_4),
            Gate::Tdg => gates::u1(-FRAC_PI_4),
            Gate::Rx(t) => gates::rotation(Axis::X, t),
            Gate::Ry(t) => gates::rotation(Axis::Y, t),
            Gate::Rz(t) => gates::rotation(Axis::Z, t),
            Gate::U1(t) | Gate::Cu1(t) => gates::u1(t),
            Gate::U3(t, p, l) => gates::u3(t, p, l),
            Gate::Swap => gates::named_gate("SWAP").expect("SWAP is a named gate"),
        }
    }

    /// Exact adjoint, staying inside the library.
    pub fn adjoint(&self) -> Gate {
        match *self {
            Gate::S => Gate::Sdg,
            Gate::Sdg => Gate::S,
            Gate::T => Gate::Tdg,
            Gate::Tdg => Gate::T,
            Gate::Rx(t) => Gate::Rx(-t),
            Gate::Ry(t) => Gate::Ry(-t),
            Gate::Rz(t) => Gate::Rz(-t),
            Gate::U1(t) => Gate::U1(-t),
            Gate::Cu1(t) => Gate::Cu1(-t),
            Gate::U3(t, p, l) => Gate::U3(-t, -l, -p),
            g => g,
        }
    }
}

/// A control operand; `negated` fires on `|0>` (the bar notation).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Control {
    pub qubit: usize,
    pub negated: bool,
}

impl Control {
    pub fn on(qubit: usize) -> Self {
        Control { qubit, negated: false }
    }

    pub fn off(qubit: usize) -> Self {
        Control { qubit, negated: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GateApplication {
    pub gate: Gate,
    pub controls: Vec<Control>,
    pub targets: Vec<usize>,
}

impl GateApplication {
    pub fn new(gate: Gate, controls: Vec<Control>, targets: Vec<usize>) -> Result<Self> {
        if controls.len() != gate.n_controls() || targets.len() != gate.n_targets() {
            return Err(Error::Arity {
                gate: gate.name(),
                expected: format!("{} control(s) and {} target(s)", gate.n_controls(), gate.n_targets()),
                got: format!("{} and {}", controls.len(), targets.len()),
            });
        }
        let app = GateApplication { gate, controls, targets };
        let ops = app.operands();
        for (k, q) in ops.iter().enumerate() {
            if ops[..k].contains(q) {
                return Err(Error::Index(format!("qubit {q} used twice by {}", gate.name())));
            }
        }
        Ok(app)
    }

    /// Uncontrolled single-qubit gate.
    pub fn single(gate: Gate, qubit: usize) -> Self {
        debug_assert_eq!(gate.n_controls(), 0);
        GateApplication {
            gate,
            controls: Vec::new(),
            targets: vec![qubit],
        }
    }

    pub fn cnot(control: Control, target: usize) -> Self {
        GateApplication {
            gate: Gate::Cnot,
            controls: vec![control],
            targets: vec![target],
        }
    }

    /// Controls followed by targets.
    pub fn operands(&self) -> Vec<usize> {
        self.controls
            .iter()
            .map(|c| c.qubit)
            .chain(self.targets.iter().copied())
            .collect()
    }

    pub fn has_negated_control(&self) -> bool {
        self.controls.iter().any(|c| c.negated)
    }

    /// Matrix over `operands()`, first operand most significant.
    pub fn matrix(&self) -> CMatrix {
        let negated: Vec<bool> = self.controls.iter().map(|c| c.negated).collect();
        controlled_block(&self.gate.target_matrix(), &negated)
    }

    pub fn adjoint(&self) -> Self {
        GateApplication {
            gate: self.gate.adjoint(),
            controls: self.controls.clone(),
            targets: self.targets.clone(),
        }
    }

    fn approx_eq(&self, other: &GateApplication, tol: f64) -> bool {
        std::mem::discriminant(&self.gate) == std::mem::discriminant(&other.gate)
            && self.controls == other.controls
            && self.targets == other.targets
            && self
                .gate
                .params()
                .iter()
                .zip(other.gate.params())
                .all(|(a, b)| (a - b).abs() <= tol * a.abs().max(1.0))
    }
}

impl fmt::Display for GateApplication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.gate.name())?;
        let params = self.gate.params();
        if !params.is_empty() {
            let joined: Vec<String> = params.iter().map(|p| format!("{p}")).collect();
            write!(f, "({})", joined.join(", "))?;
        }
        for c in &self.controls {
            write!(f, " {}{}", if c.negated { "!" } else { "" }, c.qubit)?;
        }
        for t in &self.targets {
            write!(f, " {t}")?;
        }
        Ok(())
    }
}

/// How two-qubit cost is tallied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CnotConvention {
    /// Toffoli = 6, CZ/CU1 = 2, SWAP = 3, CH = 0, matching the reported
    /// circuit sizes of the basis adder.
    Paper,
    /// CNOTs present after lowering to `{U1, U3, CNOT}`.
    Transpiled,
}

impl Gate {
    pub fn cnot_weight(&self, convention: CnotConvention) -> usize {
        match self {
            Gate::Cnot => 1,
            Gate::Ccnot => 6,
            Gate::Cz | Gate::Cu1(_) => 2,
            Gate::Swap => 3,
            Gate::Ch => match convention {
                CnotConvention::Paper => 0,
                CnotConvention::Transpiled => 1,
            },
            _ => 0,
        }
    }
}

/// Largest register for which full unitaries are materialised.
pub const MAX_UNITARY_QUBITS: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<GateApplication>,
    name: String,
    /// Paper-convention CNOT tally inherited from a pre-lowering circuit.
    paper_cnots: Option<usize>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > crate::sim::MAX_QUBITS {
            return Err(Error::Size(format!("{n_qubits}-qubit circuit")));
        }
        Ok(Circuit {
            n_qubits,
            gates: Vec::new(),
            name: String::new(),
            paper_cnots: None,
        })
    }

    pub fn from_gates(n_qubits: usize, gates: impl IntoIterator<Item = GateApplication>) -> Result<Self> {
        let mut c = Circuit::new(n_qubits)?;
        for g in gates {
            c.push(g)?;
        }
        Ok(c)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[GateApplication] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, app: GateApplication) -> Result<()> {
        let ops = app.operands();
        check_qubits(self.n_qubits, &ops)?;
        self.gates.push(app);
        Ok(())
    }

    pub(crate) fn set_paper_cnots(&mut self, count: Option<usize>) {
        self.paper_cnots = count;
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Circuit) -> Result<Circuit> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::Size(format!(
                "cannot join {}-qubit and {}-qubit circuits",
                self.n_qubits, other.n_qubits
            )));
        }
        let mut joined = self.clone();
        joined.gates.extend(other.gates.iter().cloned());
        joined.paper_cnots = if self.paper_cnots.is_some() || other.paper_cnots.is_some() {
            Some(self.cnot_count(CnotConvention::Paper) + other.cnot_count(CnotConvention::Paper))
        } else {
            None
        };
        Ok(joined)
    }

    /// Reversed order, each gate replaced by its adjoint.
    pub fn dagger(&self) -> Circuit {
        Circuit {
            n_qubits: self.n_qubits,
            gates: self.gates.iter().rev().map(GateApplication::adjoint).collect(),
            name: if self.name.is_empty() {
                String::new()
            } else {
                format!("{}^dagger", self.name)
            },
            paper_cnots: self.paper_cnots,
        }
    }

    pub fn cnot_count(&self, convention: CnotConvention) -> usize {
        match (convention, self.paper_cnots) {
            (CnotConvention::Paper, Some(n)) => n,
            _ => self.gates.iter().map(|g| g.gate.cnot_weight(convention)).sum(),
        }
    }

    /// Gate matrices paired with their operands, for repeated execution.
    pub(crate) fn compiled(&self) -> Vec<(CMatrix, Vec<usize>)> {
        self.gates
            .iter()
            .filter(|g| g.gate != Gate::I)
            .map(|g| (g.matrix(), g.operands()))
            .collect()
    }

    pub fn run(&self, input: &StateVector) -> Result<StateVector> {
        self.check_width(input.n_qubits())?;
        let mut state = input.clone();
        for (m, ops) in self.compiled() {
            state.apply_unchecked(&m, &ops);
        }
        Ok(state)
    }

    /// Noiseless density-matrix evolution.
    pub fn run_density(&self, input: &DensityMatrix) -> Result<DensityMatrix> {
        self.check_width(input.n_qubits())?;
        let mut rho = input.clone();
        for (m, ops) in self.compiled() {
            rho.apply_unitary_unchecked(&m, &ops);
        }
        Ok(rho)
    }

    pub(crate) fn check_width(&self, n_qubits: usize) -> Result<()> {
        if n_qubits != self.n_qubits {
            return Err(Error::Size(format!(
                "{}-qubit circuit applied to {n_qubits}-qubit input",
                self.n_qubits
            )));
        }
        Ok(())
    }

    /// Product of all gates, `gates[0]` applied first.
    pub fn unitary(&self) -> Result<CMatrix> {
        if self.n_qubits > MAX_UNITARY_QUBITS {
            return Err(Error::Size(format!(
                "unitary of a {}-qubit circuit exceeds the {MAX_UNITARY_QUBITS}-qubit limit",
                self.n_qubits
            )));
        }
        let dim = 1usize << self.n_qubits;
        let mut u = CMatrix::identity(dim, dim);
        let compiled = self.compiled();
        for col in u.as_mut_slice().chunks_mut(dim) {
            for (m, ops) in &compiled {
                crate::sim::apply_local(col, self.n_qubits, m, ops);
            }
        }
        Ok(u)
    }

    /// Same width and gate list, parameters equal within relative `tol`.
    pub fn structurally_eq(&self, other: &Circuit, tol: f64) -> bool {
        self.n_qubits == other.n_qubits
            && self.gates.len() == other.gates.len()
            && self
                .gates
                .iter()
                .zip(&other.gates)
                .all(|(a, b)| a.approx_eq(b, tol))
    }
}
