//! Kraus channels, per-gate noise attachment, readout error and the
//! multiplicative fidelity forecast.

use std::fmt;
use std::str::FromStr;

use crate::circuit::{Circuit, Gate, GateApplication};
use crate::error::{Error, Result};
use crate::linalg::{c, max_abs_diff, square, CMatrix, TOL, ZERO};
use crate::sim::{DensityMatrix, Distribution};
use crate::transpile::lower_application;

/// Completely positive map given by its Kraus operators.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    operators: Vec<CMatrix>,
}

impl KrausChannel {
    pub fn new(operators: Vec<CMatrix>) -> Result<Self> {
        let first = operators
            .first()
            .ok_or_else(|| Error::Size("channel needs at least one operator".into()))?;
        let dim = first.nrows();
        if operators.iter().any(|k| k.shape() != (dim, dim)) {
            return Err(Error::Dimension("Kraus operators differ in shape".into()));
        }
        let channel = KrausChannel { operators };
        let deviation = channel.completeness_deviation();
        if deviation > TOL {
            return Err(Error::Incomplete { deviation });
        }
        Ok(channel)
    }

    pub fn operators(&self) -> &[CMatrix] {
        &self.operators
    }

    /// `max |sum_k K_k^dagger K_k - I|`
    pub fn completeness_deviation(&self) -> f64 {
        let dim = self.operators[0].nrows();
        let sum = self
            .operators
            .iter()
            .fold(CMatrix::zeros(dim, dim), |acc, k| acc + k.adjoint() * k);
        max_abs_diff(&sum, &CMatrix::identity(dim, dim))
    }
}

fn check_probability(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::Probability { name, value })
    }
}

/// `K1 = diag(1, sqrt(1-p))`, `K2 = [[0, sqrt(p)], [0, 0]]`.
pub fn amplitude_damping(p: f64) -> Result<KrausChannel> {
    check_probability("p", p)?;
    let k1 = square(2, &[c(1.0, 0.0), ZERO, ZERO, c((1.0 - p).sqrt(), 0.0)]);
    let k2 = square(2, &[ZERO, c(p.sqrt(), 0.0), ZERO, ZERO]);
    KrausChannel::new(vec![k1, k2])
}

/// `K1 = sqrt(1-p) I`, `K2 = sqrt(p) Z`; coherences scale by `1 - 2p`.
pub fn dephasing(p: f64) -> Result<KrausChannel> {
    check_probability("p", p)?;
    let a = (1.0 - p).sqrt();
    let b = p.sqrt();
    let k1 = square(2, &[c(a, 0.0), ZERO, ZERO, c(a, 0.0)]);
    let k2 = square(2, &[c(b, 0.0), ZERO, ZERO, c(-b, 0.0)]);
    KrausChannel::new(vec![k1, k2])
}

/// Per-operation noise and readout parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub p_damp: f64,
    pub p_dephase: f64,
    pub f_cnot: f64,
    pub f_flip: f64,
    pub t1_readout: bool,
}

impl NoiseModel {
    /// No noise at all.
    pub const IDEAL: NoiseModel = NoiseModel {
        p_damp: 0.0,
        p_dephase: 0.0,
        f_cnot: 1.0,
        f_flip: 1.0,
        t1_readout: false,
    };

    /// The advanced-processor profile: p = 0.003, F_CNOT = F_flip = 0.99,
    /// with an extra damping step before readout.
    pub const ADVANCED: NoiseModel = NoiseModel {
        p_damp: 0.003,
        p_dephase: 0.003,
        f_cnot: 0.99,
        f_flip: 0.99,
        t1_readout: true,
    };

    pub fn validate(&self) -> Result<()> {
        check_probability("p_damp", self.p_damp)?;
        check_probability("p_dephase", self.p_dephase)?;
        check_probability("f_cnot", self.f_cnot)?;
        check_probability("f_flip", self.f_flip)
    }

    fn channels(&self) -> Result<(KrausChannel, KrausChannel)> {
        self.validate()?;
        Ok((amplitude_damping(self.p_damp)?, dephasing(self.p_dephase)?))
    }

    /// Parses the flat `key = value` format. Unknown keys are rejected;
    /// missing keys keep their [`NoiseModel::ADVANCED`] values.
    pub fn parse(text: &str) -> Result<Self> {
        let mut model = NoiseModel::ADVANCED;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key=value, got `{line}`", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            let num = || {
                value.parse::<f64>().map_err(|_| {
                    Error::Config(format!("line {}: `{value}` is not a number", lineno + 1))
                })
            };
            match key {
                "p_damp" => model.p_damp = num()?,
                "p_dephase" => model.p_dephase = num()?,
                "f_cnot" => model.f_cnot = num()?,
                "f_flip" => model.f_flip = num()?,
                "t1_readout" => {
                    model.t1_readout = match value {
                        "true" | "1" | "yes" => true,
                        "false" | "0" | "no" => false,
                        _ => {
                            return Err(Error::Config(format!(
                                "line {}: `{value}` is not a boolean",
                                lineno + 1
                            )))
                        }
                    }
                }
                _ => return Err(Error::Config(format!("line {}: unknown key `{key}`", lineno + 1))),
            }
        }
        model.validate().map_err(|e| Error::Config(e.to_string()))?;
        Ok(model)
    }
}

impl Default for NoiseModel {
    fn default() -> Self {
        NoiseModel::ADVANCED
    }
}

impl fmt::Display for NoiseModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "p_damp = {}", self.p_damp)?;
        writeln!(f, "p_dephase = {}", self.p_dephase)?;
        writeln!(f, "f_cnot = {}", self.f_cnot)?;
        writeln!(f, "f_flip = {}", self.f_flip)?;
        writeln!(f, "t1_readout = {}", self.t1_readout)
    }
}

impl FromStr for NoiseModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        NoiseModel::parse(s)
    }
}

/// Physical operations noise is attached to: composite multi-qubit gates
/// (Toffoli, CH, CZ, CU1, SWAP) are expanded through their decompositions,
/// while CNOTs of either polarity and single-qubit gates stay whole.
pub fn noise_operations(app: &GateApplication) -> Vec<GateApplication> {
    match app.gate {
        Gate::I => Vec::new(),
        Gate::Ccnot | Gate::Ch | Gate::Cz | Gate::Cu1(_) | Gate::Swap => lower_application(app),
        _ => vec![app.clone()],
    }
}

/// Runs `circuit` gate by gate (see [`noise_operations`]), following every
/// operation with amplitude damping then dephasing on each qubit it touched.
pub fn noisy_run(circuit: &Circuit, model: &NoiseModel, input: &DensityMatrix) -> Result<DensityMatrix> {
    circuit.check_width(input.n_qubits())?;
    let (damp, dephase) = model.channels()?;
    let mut rho = input.clone();
    for app in circuit.gates() {
        for low in noise_operations(app) {
            let ops = low.operands();
            rho.apply_unitary_unchecked(&low.matrix(), &ops);
            for q in ops {
                rho.apply_channel_unchecked(&damp, &[q]);
                rho.apply_channel_unchecked(&dephase, &[q]);
            }
        }
    }
    Ok(rho)
}

/// The extra damping step applied to measured qubits just before readout
/// when `t1_readout` is set. A no-op otherwise.
pub fn pre_measurement(rho: &DensityMatrix, model: &NoiseModel, measured: &[usize]) -> Result<DensityMatrix> {
    if !model.t1_readout {
        return Ok(rho.clone());
    }
    let damp = amplitude_damping(model.p_damp)?;
    crate::sim::check_qubits(rho.n_qubits(), measured)?;
    let mut out = rho.clone();
    for &q in measured {
        out.apply_channel_unchecked(&damp, &[q]);
    }
    Ok(out)
}

/// Symmetric bit-flip confusion on every measured bit, stay probability
/// `f_flip`.
pub fn apply_readout_error(dist: &Distribution, model: &NoiseModel) -> Result<Distribution> {
    check_probability("f_flip", model.f_flip)?;
    let n = dist.n_bits();
    let flip = 1.0 - model.f_flip;
    let mut probs = dist.probabilities().to_vec();
    for bit in 0..n {
        let mask = 1usize << (n - 1 - bit);
        let mut next = vec![0.0; probs.len()];
        for (i, p) in probs.iter().enumerate() {
            next[i] += model.f_flip * p;
            next[i ^ mask] += flip * p;
        }
        probs = next;
    }
    Distribution::new(n, probs)
}

/// `f_tilde * f_cnot^n_cnot * f_flip`
pub fn advanced_fidelity(f_tilde: f64, f_cnot: f64, n_cnot: usize, f_flip: f64) -> f64 {
    f_tilde * f_cnot.powi(n_cnot as i32) * f_flip
}
