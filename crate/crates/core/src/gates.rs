//! Gate matrices: the `U3`/`U1` family, axis rotations expressed through them,
//! the named fixed gates and controlled-gate construction.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

use crate::error::{Error, Result};
use crate::linalg::{c, cis, square, unitarity_deviation, CMatrix, I, ONE, TOL, ZERO};

/// `[[cos t/2, -e^{i l} sin t/2], [e^{i p} sin t/2, e^{i(l+p)} cos t/2]]`
pub fn u3(theta: f64, phi: f64, lambda: f64) -> CMatrix {
    let (s, co) = (theta / 2.0).sin_cos();
    square(
        2,
        &[
            c(co, 0.0),
            -cis(lambda) * s,
            cis(phi) * s,
            cis(lambda + phi) * co,
        ],
    )
}

/// `diag(1, e^{i theta})`
pub fn u1(theta: f64) -> CMatrix {
    square(2, &[ONE, ZERO, ZERO, cis(theta)])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

/// Axis rotations in the `U3`/`U1` parametrisation. The `z` case is `U1`,
/// which is the usual `R_z` only up to the global phase `e^{i theta/2}`.
pub fn rotation(axis: Axis, theta: f64) -> CMatrix {
    match axis {
        Axis::X => u3(theta, -FRAC_PI_2, FRAC_PI_2),
        Axis::Y => u3(theta, 0.0, 0.0),
        Axis::Z => u1(theta),
    }
}

pub fn pauli_x() -> CMatrix {
    square(2, &[ZERO, ONE, ONE, ZERO])
}

pub fn pauli_y() -> CMatrix {
    square(2, &[ZERO, -I, I, ZERO])
}

pub fn pauli_z() -> CMatrix {
    square(2, &[ONE, ZERO, ZERO, -ONE])
}

pub fn hadamard() -> CMatrix {
    square(2, &[ONE, ONE, ONE, -ONE]).map(|x| x * FRAC_1_SQRT_2)
}

/// `I (+) u` for a normal control, `u (+) I` for a negated one. The control is
/// the high qubit of the 4x4 result.
pub fn controlled(u: &CMatrix, negated: bool) -> Result<CMatrix> {
    if u.shape() != (2, 2) {
        return Err(Error::Dimension(format!("{}x{} target operator", u.nrows(), u.ncols())));
    }
    let deviation = unitarity_deviation(u);
    if deviation > TOL {
        return Err(Error::NotUnitary { deviation });
    }
    Ok(controlled_block(u, &[negated]))
}

/// Embeds `u` (dimension `d`) under `controls.len()` control qubits placed
/// above it; entry `k` of `controls` says whether control `k` is negated.
pub(crate) fn controlled_block(u: &CMatrix, negated: &[bool]) -> CMatrix {
    let d = u.nrows();
    let k = negated.len();
    let dim = d << k;
    let mut m = CMatrix::identity(dim, dim);
    let active = negated
        .iter()
        .fold(0usize, |acc, &neg| acc << 1 | usize::from(!neg));
    let offset = active * d;
    m.view_mut((offset, offset), (d, d)).copy_from(u);
    m
}

/// Standard matrices by name. Multi-qubit gates put controls on the high
/// qubits, e.g. `CNOT = I (+) X`.
pub fn named_gate(name: &str) -> Result<CMatrix> {
    let upper = name.trim().to_ascii_uppercase();
    let m = match upper.as_str() {
        "I" | "ID" => CMatrix::identity(2, 2),
        "X" | "NOT" => pauli_x(),
        "Y" => pauli_y(),
        "Z" => pauli_z(),
        "H" => hadamard(),
        "S" => u1(FRAC_PI_2),
        "SDG" | "S†" | "SDAG" => u1(-FRAC_PI_2),
        "T" => u1(FRAC_PI_4),
        "TDG" | "T†" | "TDAG" => u1(-FRAC_PI_4),
        "CNOT" | "CX" => controlled_block(&pauli_x(), &[false]),
        "CZ" => controlled_block(&pauli_z(), &[false]),
        "CH" => controlled_block(&hadamard(), &[false]),
        "CCNOT" | "CCX" | "TOFFOLI" => controlled_block(&pauli_x(), &[false, false]),
        "SWAP" => square(
            4,
            &[
                ONE, ZERO, ZERO, ZERO, //
                ZERO, ZERO, ONE, ZERO, //
                ZERO, ONE, ZERO, ZERO, //
                ZERO, ZERO, ZERO, ONE,
            ],
        ),
        _ => return Err(Error::UnknownGate(name.to_string())),
    };
    Ok(m)
}

/// `S` via `U1(pi/2)`; kept for readability at call sites.
pub fn phase_s() -> CMatrix {
    u1(FRAC_PI_2)
}

pub fn phase_t() -> CMatrix {
    u1(FRAC_PI_4)
}

/// `R_x(pi)` in the `U3` parametrisation equals `-i X`.
pub fn rx_pi() -> CMatrix {
    rotation(Axis::X, PI)
}
