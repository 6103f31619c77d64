//! Approximate quantum adders and the autoencoder built on them.
//!
//! The crate covers dense few-qubit simulation ([`sim`]), a gate library with
//! decompositions and a `{U1, U3, CNOT}` transpiler ([`gates`], [`circuit`],
//! [`transpile`]), Kraus noise ([`noise`]), fidelities ([`fidelity`]), the
//! basis adder and gate-encoding solver ([`adders`]), a genetic search for
//! gate-limited adders ([`ga`]) and a plain-text circuit format ([`text`]).

pub mod adders;
pub mod circuit;
pub mod error;
pub mod fidelity;
pub mod ga;
pub mod gates;
pub mod linalg;
pub mod noise;
pub mod sim;
pub mod text;
pub mod transpile;

pub use circuit::{Circuit, CnotConvention, Control, Gate, GateApplication};
pub use error::{Error, Result};
pub use sim::{DensityMatrix, Distribution, ShotHistogram, StateVector};
