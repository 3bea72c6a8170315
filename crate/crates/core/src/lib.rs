//! Quasi-Bell states over nonorthogonal pairs.
//!
//! * [`twostate`]: exact two-qubit layer in the orthonormal even/odd basis
//!   (Gram matrix, reduced states, entropy of entanglement, concurrence).
//! * [`gates`]: Walsh-Hadamard, controlled-NOT and the rotation-form Hadamard.
//! * [`fock`]: coherent-state realization in a truncated Fock space, photon
//!   statistics, characteristic functions and the finite-order Hadamard synthesis.
//! * [`cli`]: sweep and export front end used by the `quasibell` binary.

pub mod cli;
pub mod density;
pub mod error;
pub mod fock;
pub mod gates;
pub mod linalg;
pub mod twostate;

pub use density::DensityMatrix;
pub use error::{Error, Result};
