//! One- and two-qubit gates on the even/odd encoding.
//!
//! Rows and columns are ordered `(|e>, |o>)` for one qubit and
//! `(|ee>, |eo>, |oe>, |oo>)` for two, the first factor being the control mode.
//!
//! Rotation convention: [`walsh_hadamard`] is `exp(theta (|o><e| - |e><o|))`, so
//! `U(pi/4)|e> = (|e> + |o>)/sqrt(2)`. The Hadamard of [`hadamard_rotation`] is
//! assembled from `P = |e><o| - |o><e|`, whose exponential rotates the other way:
//! `exp(theta P) = walsh_hadamard(-theta)`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use crate::error::{Error, Result};
use crate::linalg::{expm, kron, re, unitarity_error, CMatrix, CVector, I, ONE, ZERO};
use crate::twostate::{quasi_bell_state, BellIndex, OverlapPair, TwoQubitState};

pub const UNITARY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct OneQubitGate {
    entries: CMatrix,
}

impl OneQubitGate {
    pub fn new(entries: CMatrix) -> Result<Self> {
        if entries.shape() != (2, 2) {
            return Err(Error::Domain(format!("one-qubit gate must be 2x2, got {:?}", entries.shape())));
        }
        let err = unitarity_error(&entries);
        if err > UNITARY_TOL {
            return Err(Error::Domain(format!("gate is not unitary ({err:e})")));
        }
        Ok(Self { entries })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn apply(&self, v: &CVector) -> CVector {
        &self.entries * v
    }

    pub fn then(&self, next: &OneQubitGate) -> OneQubitGate {
        OneQubitGate { entries: &next.entries * &self.entries }
    }
}

/// Gate on (control, target); the control is the first tensor factor.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitGate {
    entries: CMatrix,
}

impl TwoQubitGate {
    pub fn new(entries: CMatrix) -> Result<Self> {
        if entries.shape() != (4, 4) {
            return Err(Error::Domain(format!("two-qubit gate must be 4x4, got {:?}", entries.shape())));
        }
        let err = unitarity_error(&entries);
        if err > UNITARY_TOL {
            return Err(Error::Domain(format!("gate is not unitary ({err:e})")));
        }
        Ok(Self { entries })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn apply(&self, v: &CVector) -> CVector {
        &self.entries * v
    }

    pub fn apply_state(&self, state: &TwoQubitState) -> TwoQubitState {
        TwoQubitState::normalized(self.apply(state.amplitudes())).expect("unitary preserves the norm")
    }
}

/// `|e><o| - |o><e|`.
pub fn rotation_generator() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ZERO, ONE, -ONE, ZERO])
}

/// `|e><e| - |o><o|`.
pub fn parity_generator() -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE])
}

pub fn walsh_hadamard(theta: f64) -> OneQubitGate {
    let g = rotation_generator().adjoint();
    OneQubitGate::new(expm(&g.scale(theta))).expect("rotation is unitary")
}

pub const DEFAULT_WH_ANGLE: f64 = FRAC_PI_4;

pub fn controlled_not() -> TwoQubitGate {
    let e = CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ZERO]);
    let o = CMatrix::from_row_slice(2, 2, &[ZERO, ZERO, ZERO, ONE]);
    let flip = CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]);
    let u = kron(&e, &CMatrix::identity(2, 2)) + kron(&o, &flip);
    TwoQubitGate::new(u).expect("permutation is unitary")
}

/// Output of the Walsh-Hadamard plus controlled-NOT pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub state: TwoQubitState,
    /// `|<Psi3|out>|`; equals `1/sqrt(1 + kappa^2)`, which is 1 only for an orthogonal pair.
    pub fidelity_to_psi3: f64,
}

/// Prepares control and target in `|e>`, rotates the control and applies the CN gate.
pub fn generate_quasi_bell(pair: OverlapPair) -> Generated {
    let e = CVector::from_vec(vec![ONE, ZERO]);
    let control = walsh_hadamard(DEFAULT_WH_ANGLE).apply(&e);
    let input = crate::linalg::kron_vec(&control, &e);
    let out = controlled_not().apply(&input);
    let state = TwoQubitState::normalized(out).expect("unitary output is nonzero");
    let fidelity_to_psi3 = quasi_bell_state(pair, BellIndex::Three).overlap_modulus(&state);
    Generated { state, fidelity_to_psi3 }
}

/// Hadamard as `-i exp(i pi/2 Q) exp(pi/4 P)`.
pub fn hadamard_rotation() -> OneQubitGate {
    let phase = expm(&parity_generator().map(|x| x * I * re(FRAC_PI_2)));
    let rot = expm(&rotation_generator().scale(FRAC_PI_4));
    let u = (phase * rot).map(|x| -I * x);
    OneQubitGate::new(u).expect("product of unitaries")
}
