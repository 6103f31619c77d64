//! Dense complex matrix helpers shared by the simulators and the gate library.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Tolerance used by unitarity / completeness / normalisation checks.
pub const TOL: f64 = 1e-10;

/// Tolerance for global-phase equivalence of unitaries.
pub const PHASE_TOL: f64 = 1e-8;

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// `e^{i theta}`
#[inline]
pub fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

/// Row-major construction of a square matrix.
pub fn square(dim: usize, entries: &[C64]) -> CMatrix {
    assert_eq!(entries.len(), dim * dim);
    CMatrix::from_row_slice(dim, dim, entries)
}

pub fn identity(dim: usize) -> CMatrix {
    CMatrix::identity(dim, dim)
}

/// Kronecker product with `a` on the more significant qubits.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// `max |U^dagger U - I|` over entries.
pub fn unitarity_deviation(u: &CMatrix) -> f64 {
    if !u.is_square() {
        return f64::INFINITY;
    }
    let prod = u.adjoint() * u;
    max_abs_diff(&prod, &identity(u.nrows()))
}

pub fn is_unitary(u: &CMatrix, tol: f64) -> bool {
    unitarity_deviation(u) < tol
}

/// Phase `z` (|z| = 1) such that `z * b` best aligns with `a` at the
/// largest-magnitude entry of `a`. `None` when `a` vanishes or `b` is zero there.
pub fn aligning_phase(a: &CMatrix, b: &CMatrix) -> Option<C64> {
    let (idx, _) = a
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))?;
    let (ai, bi) = (a[idx], b[idx]);
    if ai.norm() < 1e-12 || bi.norm() < 1e-12 {
        return None;
    }
    let z = ai / bi;
    Some(z / z.norm())
}

/// Max entrywise deviation between `a` and `b` after aligning global phase.
pub fn phase_aligned_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    match aligning_phase(a, b) {
        Some(z) => max_abs_diff(a, &b.map(|x| x * z)),
        None => max_abs_diff(a, b),
    }
}

pub fn equal_up_to_phase(a: &CMatrix, b: &CMatrix, tol: f64) -> bool {
    phase_aligned_diff(a, b) < tol
}

/// Fixed-width bitstring of `value` over `width` bits, most significant first.
pub fn bit_label(value: usize, width: usize) -> String {
    (0..width)
        .map(|k| {
            if value >> (width - 1 - k) & 1 == 1 {
                '1'
            } else {
                '0'
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phase_alignment_ignores_global_phase() {
        let a = square(2, &[ONE, ZERO, ZERO, -ONE]);
        let b = a.map(|x| x * cis(0.7));
        assert!(equal_up_to_phase(&a, &b, 1e-12));
        assert!(max_abs_diff(&a, &b) > 0.1);
    }

    #[test]
    fn labels_are_msb_first() {
        assert_eq!(bit_label(4, 3), "100");
        assert_eq!(bit_label(1, 3), "001");
        assert_eq!(bit_label(0, 1), "0");
    }

    #[test]
    fn kron_puts_first_factor_on_high_bits() {
        let x = square(2, &[ZERO, ONE, ONE, ZERO]);
        let k = kron(&x, &identity(2));
        // |00> -> |10>
        assert_eq!(k[(2, 0)], ONE);
    }
}
