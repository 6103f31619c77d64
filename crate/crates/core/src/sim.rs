//! Dense state-vector and density-matrix simulation.
//!
//! Qubits are addressed by zero-based index where qubit 0 is the most
//! significant bit of the basis index: `|b0 b1 b2>` has index `4*b0 + 2*b1 + b2`.
//! The paper-style labels 1, 2, 3 used by the text format map onto 0, 1, 2.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution as _;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{bit_label, unitarity_deviation, CMatrix, C64, ONE, TOL, ZERO};
use crate::noise::KrausChannel;

/// Hard cap on register size for dense simulation.
pub const MAX_QUBITS: usize = 12;

/// The generator used everywhere a seed is accepted.
pub type SeededRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn check_register(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::Size(format!(
            "register of {n_qubits} qubits outside 1..={MAX_QUBITS}"
        )));
    }
    Ok(())
}

pub(crate) fn check_qubits(n_qubits: usize, qubits: &[usize]) -> Result<()> {
    for (k, &q) in qubits.iter().enumerate() {
        if q >= n_qubits {
            return Err(Error::Index(format!(
                "qubit {q} out of range for {n_qubits}-qubit register"
            )));
        }
        if qubits[..k].contains(&q) {
            return Err(Error::Index(format!("qubit {q} listed twice")));
        }
    }
    Ok(())
}

/// Offsets of the `2^k` local basis states of `targets` inside the full index,
/// plus the mask of all target bits.
fn local_offsets(n_qubits: usize, targets: &[usize]) -> (Vec<usize>, usize) {
    let k = targets.len();
    let mask = targets
        .iter()
        .fold(0usize, |m, &q| m | 1 << (n_qubits - 1 - q));
    let offsets = (0..1usize << k)
        .map(|j| {
            targets.iter().enumerate().fold(0usize, |acc, (a, &q)| {
                if j >> (k - 1 - a) & 1 == 1 {
                    acc | 1 << (n_qubits - 1 - q)
                } else {
                    acc
                }
            })
        })
        .collect();
    (offsets, mask)
}

/// `amps <- (m embedded on targets) * amps`. `m` need not be unitary.
pub(crate) fn apply_local(amps: &mut [C64], n_qubits: usize, m: &CMatrix, targets: &[usize]) {
    let dim = m.nrows();
    debug_assert_eq!(dim, 1 << targets.len());
    let (offsets, mask) = local_offsets(n_qubits, targets);
    let mut gathered = vec![ZERO; dim];
    for base in 0..amps.len() {
        if base & mask != 0 {
            continue;
        }
        for (slot, off) in gathered.iter_mut().zip(&offsets) {
            *slot = amps[base | off];
        }
        for (row, off) in offsets.iter().enumerate() {
            let mut acc = ZERO;
            for (col, g) in gathered.iter().enumerate() {
                acc += m[(row, col)] * g;
            }
            amps[base | off] = acc;
        }
    }
}

fn check_operator(n_qubits: usize, m: &CMatrix, targets: &[usize]) -> Result<()> {
    check_qubits(n_qubits, targets)?;
    if targets.is_empty() || !m.is_square() || m.nrows() != 1 << targets.len() {
        return Err(Error::Dimension(format!(
            "{}x{} operator on {} target qubit(s)",
            m.nrows(),
            m.ncols(),
            targets.len()
        )));
    }
    Ok(())
}

/// Pure state of a small register.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<C64>,
}

impl StateVector {
    pub fn zero_state(n_qubits: usize) -> Result<Self> {
        Self::basis_state(n_qubits, 0)
    }

    pub fn basis_state(n_qubits: usize, index: usize) -> Result<Self> {
        check_register(n_qubits)?;
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::Index(format!("basis index {index} >= {dim}")));
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = ONE;
        Ok(Self { n_qubits, amps })
    }

    /// Tensor product of `(cos t, sin t)` qubits, first angle on qubit 0.
    pub fn product_state(angles: &[f64]) -> Result<Self> {
        if angles.is_empty() {
            return Err(Error::Size("product state needs at least one angle".into()));
        }
        check_register(angles.len())?;
        let qubits: Vec<[C64; 2]> = angles
            .iter()
            .map(|t| [C64::new(t.cos(), 0.0), C64::new(t.sin(), 0.0)])
            .collect();
        Self::product_of(&qubits)
    }

    /// Tensor product of arbitrary single-qubit states, each normalised.
    pub fn product_of(qubits: &[[C64; 2]]) -> Result<Self> {
        check_register(qubits.len())?;
        let mut amps = vec![ONE];
        for q in qubits {
            let norm = (q[0].norm_sqr() + q[1].norm_sqr()).sqrt();
            if (norm - 1.0).abs() > TOL {
                return Err(Error::Size(format!("single-qubit state has norm {norm}")));
            }
            amps = amps
                .iter()
                .flat_map(|a| [a * q[0], a * q[1]])
                .collect();
        }
        Ok(Self {
            n_qubits: qubits.len(),
            amps,
        })
    }

    pub fn from_amplitudes(amps: Vec<C64>) -> Result<Self> {
        let dim = amps.len();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::Size(format!("{dim} amplitudes is not a qubit register")));
        }
        let n_qubits = dim.trailing_zeros() as usize;
        check_register(n_qubits)?;
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > TOL {
            return Err(Error::Size(format!("state norm {norm} differs from 1")));
        }
        Ok(Self { n_qubits, amps })
    }

    /// Normalises the given amplitudes instead of rejecting them.
    pub fn normalized(mut amps: Vec<C64>) -> Result<Self> {
        let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 {
            return Err(Error::Size("cannot normalise the zero vector".into()));
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        Self::from_amplitudes(amps)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amps[index]
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<self|other>`
    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `self` on the high qubits, `other` on the low ones.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        check_register(self.n_qubits + other.n_qubits)?;
        let amps = self
            .amps
            .iter()
            .flat_map(|a| other.amps.iter().map(move |b| a * b))
            .collect();
        Ok(StateVector {
            n_qubits: self.n_qubits + other.n_qubits,
            amps,
        })
    }

    /// Applies `unitary` to `targets`; the first target is the most
    /// significant qubit of the operator's local index.
    pub fn apply_gate(&self, unitary: &CMatrix, targets: &[usize]) -> Result<StateVector> {
        check_operator(self.n_qubits, unitary, targets)?;
        let deviation = unitarity_deviation(unitary);
        if deviation > TOL {
            return Err(Error::NotUnitary { deviation });
        }
        let mut out = self.clone();
        out.apply_unchecked(unitary, targets);
        Ok(out)
    }

    pub(crate) fn apply_unchecked(&mut self, m: &CMatrix, targets: &[usize]) {
        apply_local(&mut self.amps, self.n_qubits, m, targets);
    }

    pub fn to_density(&self) -> DensityMatrix {
        let v = nalgebra::DVector::from_column_slice(&self.amps);
        DensityMatrix {
            n_qubits: self.n_qubits,
            m: &v * v.adjoint(),
        }
    }

    /// Whether the states agree up to a global phase.
    pub fn approx_eq_up_to_phase(&self, other: &StateVector, tol: f64) -> bool {
        self.dim() == other.dim() && (1.0 - self.inner(other).norm()).abs() < tol
    }

    pub fn approx_eq(&self, other: &StateVector, tol: f64) -> bool {
        self.dim() == other.dim()
            && self
                .amps
                .iter()
                .zip(&other.amps)
                .all(|(a, b)| (a - b).norm() < tol)
    }
}

/// Mixed state of a small register.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    m: CMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity and unit trace.
    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        let dim = m.nrows();
        if !m.is_square() || dim < 2 || !dim.is_power_of_two() {
            return Err(Error::Size(format!("{}x{} is not a density matrix shape", dim, m.ncols())));
        }
        let n_qubits = dim.trailing_zeros() as usize;
        check_register(n_qubits)?;
        let rho = Self { n_qubits, m };
        let herm = rho.hermiticity_deviation();
        if herm > TOL {
            return Err(Error::Dimension(format!("matrix not Hermitian ({herm:.3e})")));
        }
        let tr = rho.trace();
        if (tr - 1.0).abs() > TOL {
            return Err(Error::Dimension(format!("trace {tr} differs from 1")));
        }
        Ok(rho)
    }

    pub fn maximally_mixed(n_qubits: usize) -> Result<Self> {
        check_register(n_qubits)?;
        let dim = 1usize << n_qubits;
        Ok(Self {
            n_qubits,
            m: CMatrix::identity(dim, dim).map(|x| x / dim as f64),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> CMatrix {
        self.m
    }

    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        crate::linalg::max_abs_diff(&self.m, &self.m.adjoint())
    }

    /// Smallest eigenvalue of the Hermitian part.
    pub fn min_eigenvalue(&self) -> f64 {
        let herm = (&self.m + self.m.adjoint()).map(|x| x * 0.5);
        herm.symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }

    /// Hermitian within 1e-10, unit trace within 1e-10, eigenvalues >= -1e-9.
    pub fn is_physical(&self) -> bool {
        self.hermiticity_deviation() < TOL
            && (self.trace() - 1.0).abs() < TOL
            && self.min_eigenvalue() >= -1e-9
    }

    /// `<psi| rho |psi>`
    pub fn expectation(&self, psi: &StateVector) -> Result<C64> {
        if psi.dim() != self.m.nrows() {
            return Err(Error::Dimension(format!(
                "{}-qubit state against {}-qubit density matrix",
                psi.n_qubits(),
                self.n_qubits
            )));
        }
        let v = nalgebra::DVector::from_column_slice(psi.amplitudes());
        Ok((v.adjoint() * &self.m * &v)[(0, 0)])
    }

    /// `m rho m^dagger` with `m` embedded on `targets`.
    pub(crate) fn conjugate_unchecked(&self, m: &CMatrix, targets: &[usize]) -> CMatrix {
        let dim = self.m.nrows();
        let mut left = self.m.clone();
        for col in left.as_mut_slice().chunks_mut(dim) {
            apply_local(col, self.n_qubits, m, targets);
        }
        let mut right = left.adjoint();
        for col in right.as_mut_slice().chunks_mut(dim) {
            apply_local(col, self.n_qubits, m, targets);
        }
        right.adjoint()
    }

    pub(crate) fn apply_unitary_unchecked(&mut self, u: &CMatrix, targets: &[usize]) {
        self.m = self.conjugate_unchecked(u, targets);
    }

    pub fn apply_unitary(&self, u: &CMatrix, targets: &[usize]) -> Result<DensityMatrix> {
        check_operator(self.n_qubits, u, targets)?;
        let deviation = unitarity_deviation(u);
        if deviation > TOL {
            return Err(Error::NotUnitary { deviation });
        }
        let mut out = self.clone();
        out.apply_unitary_unchecked(u, targets);
        Ok(out)
    }

    /// `sum_k K_k rho K_k^dagger` on `targets`.
    pub fn apply_channel(&self, channel: &KrausChannel, targets: &[usize]) -> Result<DensityMatrix> {
        let ops = channel.operators();
        check_operator(self.n_qubits, &ops[0], targets)?;
        let deviation = channel.completeness_deviation();
        if deviation > TOL {
            return Err(Error::Incomplete { deviation });
        }
        let mut out = self.clone();
        out.apply_channel_unchecked(channel, targets);
        Ok(out)
    }

    pub(crate) fn apply_channel_unchecked(&mut self, channel: &KrausChannel, targets: &[usize]) {
        let dim = self.m.nrows();
        let mut acc = CMatrix::zeros(dim, dim);
        for k in channel.operators() {
            acc += self.conjugate_unchecked(k, targets);
        }
        self.m = acc;
    }

    /// Reduced state on `keep`, with the kept qubits in the listed order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::Size("partial trace must keep at least one qubit".into()));
        }
        check_qubits(self.n_qubits, keep)?;
        let traced: Vec<usize> = (0..self.n_qubits).filter(|q| !keep.contains(q)).collect();
        let (kept_offsets, _) = local_offsets(self.n_qubits, keep);
        let (traced_offsets, _) = if traced.is_empty() {
            (vec![0], 0)
        } else {
            local_offsets(self.n_qubits, &traced)
        };
        let k = kept_offsets.len();
        let mut out = CMatrix::zeros(k, k);
        for (i, ri) in kept_offsets.iter().enumerate() {
            for (j, rj) in kept_offsets.iter().enumerate() {
                out[(i, j)] = traced_offsets
                    .iter()
                    .map(|t| self.m[(ri | t, rj | t)])
                    .sum();
            }
        }
        Ok(DensityMatrix {
            n_qubits: keep.len(),
            m: out,
        })
    }
}

/// Anything with computational-basis probabilities.
pub trait Measurable {
    fn n_qubits(&self) -> usize;
    fn basis_probabilities(&self) -> Vec<f64>;
}

impl Measurable for StateVector {
    fn n_qubits(&self) -> usize {
        self.n_qubits
    }
    fn basis_probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }
}

impl Measurable for DensityMatrix {
    fn n_qubits(&self) -> usize {
        self.n_qubits
    }
    fn basis_probabilities(&self) -> Vec<f64> {
        self.m.diagonal().iter().map(|d| d.re.max(0.0)).collect()
    }
}

/// Probabilities over bitstrings of a fixed width. Index `i` corresponds to
/// the label `bit_label(i, n_bits)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    n_bits: usize,
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(n_bits: usize, probs: Vec<f64>) -> Result<Self> {
        if n_bits == 0 || probs.len() != 1 << n_bits {
            return Err(Error::Size(format!(
                "{} probabilities for {n_bits} bits",
                probs.len()
            )));
        }
        if let Some(p) = probs.iter().find(|p| !(**p >= 0.0)) {
            return Err(Error::Probability { name: "outcome", value: *p });
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > TOL {
            return Err(Error::Size(format!("probabilities sum to {total}")));
        }
        Ok(Self { n_bits, probs })
    }

    pub fn uniform(n_bits: usize) -> Result<Self> {
        let dim = 1usize << n_bits;
        Self::new(n_bits, vec![1.0 / dim as f64; dim])
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probs
    }

    pub fn prob(&self, index: usize) -> f64 {
        self.probs.get(index).copied().unwrap_or(0.0)
    }

    /// Missing or malformed labels read as probability 0.
    pub fn prob_of(&self, label: &str) -> f64 {
        if label.len() != self.n_bits {
            return 0.0;
        }
        usize::from_str_radix(label, 2).map_or(0.0, |i| self.prob(i))
    }

    pub fn labels(&self) -> impl Iterator<Item = String> + '_ {
        (0..self.probs.len()).map(|i| bit_label(i, self.n_bits))
    }

    pub(crate) fn from_raw(n_bits: usize, probs: Vec<f64>) -> Self {
        Self { n_bits, probs }
    }
}

/// Marginal distribution over `qubits`, label bits in the listed order.
pub fn measurement_distribution<M: Measurable>(state: &M, qubits: &[usize]) -> Result<Distribution> {
    let n = state.n_qubits();
    if qubits.is_empty() {
        return Err(Error::Size("no qubits to measure".into()));
    }
    check_qubits(n, qubits)?;
    let full = state.basis_probabilities();
    let total: f64 = full.iter().sum();
    let mut probs = vec![0.0; 1 << qubits.len()];
    for (index, p) in full.iter().enumerate() {
        let outcome = qubits
            .iter()
            .fold(0usize, |acc, &q| acc << 1 | (index >> (n - 1 - q) & 1));
        probs[outcome] += p;
    }
    // Round-off from long channel chains can leave the diagonal a hair off 1.
    if total > 0.0 {
        probs.iter_mut().for_each(|p| *p /= total);
    }
    Distribution::new(qubits.len(), probs)
}

/// Counts per outcome index of a sampled distribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShotHistogram {
    n_bits: usize,
    counts: Vec<u64>,
    shots: u64,
}

impl ShotHistogram {
    pub fn new(n_bits: usize, counts: Vec<u64>) -> Result<Self> {
        if n_bits == 0 || counts.len() != 1 << n_bits {
            return Err(Error::Size(format!("{} bins for {n_bits} bits", counts.len())));
        }
        let shots = counts.iter().sum();
        if shots == 0 {
            return Err(Error::Size("histogram has no shots".into()));
        }
        Ok(Self { n_bits, counts, shots })
    }

    pub fn n_bits(&self) -> usize {
        self.n_bits
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, index: usize) -> u64 {
        self.counts[index]
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    /// Empirical frequencies as a distribution.
    pub fn frequencies(&self) -> Distribution {
        let probs = self
            .counts
            .iter()
            .map(|&c| c as f64 / self.shots as f64)
            .collect();
        Distribution::from_raw(self.n_bits, probs)
    }
}

/// Multinomial sample of `shots` outcomes drawn with `rng`.
pub fn sample_shots<R: Rng + ?Sized>(dist: &Distribution, shots: u64, rng: &mut R) -> Result<ShotHistogram> {
    if shots == 0 {
        return Err(Error::Size("at least one shot is required".into()));
    }
    let sampler = WeightedIndex::new(dist.probabilities())
        .map_err(|e| Error::Size(format!("cannot sample distribution: {e}")))?;
    let mut counts = vec![0u64; dist.probabilities().len()];
    for _ in 0..shots {
        counts[sampler.sample(rng)] += 1;
    }
    ShotHistogram::new(dist.n_bits(), counts)
}

pub fn sample_shots_seeded(dist: &Distribution, shots: u64, seed: u64) -> Result<ShotHistogram> {
    sample_shots(dist, shots, &mut seeded_rng(seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, square};
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

    fn x() -> CMatrix {
        square(2, &[ZERO, ONE, ONE, ZERO])
    }

    fn h() -> CMatrix {
        square(2, &[ONE, ONE, ONE, -ONE]).map(|v| v * FRAC_1_SQRT_2)
    }

    fn cnot() -> CMatrix {
        let mut m = CMatrix::identity(4, 4);
        m[(2, 2)] = ZERO;
        m[(3, 3)] = ZERO;
        m[(2, 3)] = ONE;
        m[(3, 2)] = ONE;
        m
    }

    #[test]
    fn zero_state_bounds() {
        assert_eq!(StateVector::zero_state(1).unwrap().amplitudes(), &[ONE, ZERO]);
        assert_eq!(StateVector::zero_state(3).unwrap().amplitude(0), ONE);
        assert!(matches!(StateVector::zero_state(0), Err(Error::Size(_))));
        assert!(matches!(StateVector::zero_state(13), Err(Error::Size(_))));
    }

    #[test]
    fn product_states() {
        let s = StateVector::product_state(&[0.0, 0.0]).unwrap();
        assert!(s.approx_eq(&StateVector::basis_state(2, 0).unwrap(), 1e-15));
        let s = StateVector::product_state(&[FRAC_PI_2, FRAC_PI_2]).unwrap();
        assert!(s.approx_eq(&StateVector::basis_state(2, 3).unwrap(), 1e-15));
        let s = StateVector::product_state(&[FRAC_PI_4]).unwrap();
        assert!((s.amplitude(0).re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((s.amplitude(1).re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(matches!(StateVector::product_state(&[]), Err(Error::Size(_))));
    }

    #[test]
    fn gate_application_examples() {
        let s = StateVector::zero_state(3).unwrap().apply_gate(&x(), &[0]).unwrap();
        assert_eq!(s.amplitude(0b100), ONE);

        let s = StateVector::zero_state(1).unwrap().apply_gate(&h(), &[0]).unwrap();
        assert!((s.amplitude(0).re - FRAC_1_SQRT_2).abs() < 1e-15);
        assert!((s.amplitude(1).re - FRAC_1_SQRT_2).abs() < 1e-15);

        let s = StateVector::basis_state(2, 0b10).unwrap().apply_gate(&cnot(), &[0, 1]).unwrap();
        assert_eq!(s.amplitude(0b11), ONE);
        // reversed operand order: control on qubit 1
        let s = StateVector::basis_state(2, 0b01).unwrap().apply_gate(&cnot(), &[1, 0]).unwrap();
        assert_eq!(s.amplitude(0b11), ONE);
    }

    #[test]
    fn gate_application_errors() {
        let s = StateVector::zero_state(2).unwrap();
        let not_unitary = square(2, &[ONE, ONE, ZERO, ONE]);
        assert!(matches!(s.apply_gate(&not_unitary, &[0]), Err(Error::NotUnitary { .. })));
        assert!(matches!(s.apply_gate(&x(), &[2]), Err(Error::Index(_))));
        assert!(matches!(s.apply_gate(&cnot(), &[1, 1]), Err(Error::Index(_))));
        assert!(matches!(s.apply_gate(&cnot(), &[0]), Err(Error::Dimension(_))));
    }

    #[test]
    fn density_of_basis_and_plus_states() {
        let rho = StateVector::zero_state(1).unwrap().to_density();
        assert_eq!(rho.matrix()[(0, 0)], ONE);
        assert_eq!(rho.matrix()[(1, 1)], ZERO);
        let plus = StateVector::product_state(&[FRAC_PI_4]).unwrap().to_density();
        assert!(plus.matrix().iter().all(|v| (v - c(0.5, 0.0)).norm() < 1e-15));
        let one = StateVector::basis_state(1, 1).unwrap().to_density();
        assert_eq!(one.matrix()[(1, 1)], ONE);
        assert!(one.is_physical());
    }

    #[test]
    fn partial_trace_of_bell_state_is_maximally_mixed() {
        let bell = StateVector::zero_state(2)
            .unwrap()
            .apply_gate(&h(), &[0])
            .unwrap()
            .apply_gate(&cnot(), &[0, 1])
            .unwrap()
            .to_density();
        let reduced = bell.partial_trace(&[0]).unwrap();
        let half = DensityMatrix::maximally_mixed(1).unwrap();
        assert!(crate::linalg::max_abs_diff(reduced.matrix(), half.matrix()) < 1e-15);
        assert!(matches!(bell.partial_trace(&[]), Err(Error::Size(_))));
        assert!(matches!(bell.partial_trace(&[2]), Err(Error::Index(_))));
    }

    #[test]
    fn partial_trace_keeps_listed_order() {
        // |01> reduced onto [1, 0] reads as |10>
        let rho = StateVector::basis_state(2, 0b01).unwrap().to_density();
        let swapped = rho.partial_trace(&[1, 0]).unwrap();
        assert_eq!(swapped.matrix()[(0b10, 0b10)], ONE);
    }

    #[test]
    fn measurement_marginals() {
        let plus = StateVector::product_state(&[FRAC_PI_4]).unwrap();
        let d = measurement_distribution(&plus, &[0]).unwrap();
        assert!((d.prob(0) - 0.5).abs() < 1e-15 && (d.prob(1) - 0.5).abs() < 1e-15);

        let s = StateVector::basis_state(3, 0b110).unwrap();
        let d = measurement_distribution(&s, &[0, 1]).unwrap();
        assert_eq!(d.prob_of("11"), 1.0);
        assert_eq!(d.prob_of("1"), 0.0);
        let d = measurement_distribution(&s.to_density(), &[2, 0]).unwrap();
        assert_eq!(d.prob_of("01"), 1.0);
    }

    #[test]
    fn deterministic_sampling() {
        let point = Distribution::new(1, vec![1.0, 0.0]).unwrap();
        let h = sample_shots_seeded(&point, 1024, 3).unwrap();
        assert_eq!(h.counts(), &[1024, 0]);

        let fair = Distribution::uniform(1).unwrap();
        assert_eq!(
            sample_shots_seeded(&fair, 1024, 11).unwrap(),
            sample_shots_seeded(&fair, 1024, 11).unwrap()
        );
        assert!(sample_shots_seeded(&fair, 0, 11).is_err());
    }

    #[test]
    fn fair_coin_within_five_sigma() {
        let fair = Distribution::uniform(1).unwrap();
        let n = 100_000u64;
        let h = sample_shots_seeded(&fair, n, 2024).unwrap();
        let sigma = (n as f64 * 0.25).sqrt();
        for &count in h.counts() {
            assert!((count as f64 - 50_000.0).abs() < 5.0 * sigma, "count {count}");
        }
        assert_eq!(h.shots(), n);
    }
}
