//! Pure-target quantum fidelity and the classical (Bhattacharyya) fidelity.

use crate::error::{Error, Result};
use crate::sim::{DensityMatrix, Distribution, ShotHistogram, StateVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FidelityMethod {
    QuantumExact,
    ClassicalExact,
    ClassicalShots,
}

impl FidelityMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            FidelityMethod::QuantumExact => "quantum_exact",
            FidelityMethod::ClassicalExact => "classical_exact",
            FidelityMethod::ClassicalShots => "classical_shots",
        }
    }
}

/// A fidelity value with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityReport {
    pub value: f64,
    pub method: FidelityMethod,
    pub shots: Option<u64>,
    pub seed: Option<u64>,
}

/// `<target| rho |target>`
pub fn quantum_fidelity(rho: &DensityMatrix, target: &StateVector) -> Result<f64> {
    let value = rho.expectation(target)?;
    if value.im.abs() > 1e-10 {
        return Err(Error::Dimension(format!(
            "fidelity has imaginary residue {:.3e}; input is not Hermitian",
            value.im
        )));
    }
    Ok(value.re)
}

/// `sum_i sqrt(p_i q_i)`. Distributions over different bit widths share no
/// labels and give 0.
pub fn classical_fidelity(p: &Distribution, q: &Distribution) -> f64 {
    if p.n_bits() != q.n_bits() {
        return 0.0;
    }
    p.probabilities()
        .iter()
        .zip(q.probabilities())
        .map(|(a, b)| (a * b).sqrt())
        .sum()
}

/// Classical fidelity of the ideal distribution against sampled frequencies.
pub fn shot_fidelity(p_ideal: &Distribution, hist: &ShotHistogram, seed: Option<u64>) -> FidelityReport {
    FidelityReport {
        value: classical_fidelity(p_ideal, &hist.frequencies()),
        method: FidelityMethod::ClassicalShots,
        shots: Some(hist.shots()),
        seed,
    }
}
