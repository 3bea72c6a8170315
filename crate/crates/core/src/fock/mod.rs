//! Truncated single- and two-mode bosonic simulation.
//!
//! A [`FockSpace`] keeps levels `0..n_max`. Two-mode amplitudes are stored
//! with mode A as the slow index: `amp[i * n_max + j]` is the coefficient of
//! `|i>_A |j>_B`.

mod charfunc;
mod states;
mod synthesis;

pub use charfunc::{
    characteristic_function_closed, characteristic_function_grid, characteristic_function_numeric,
    gaussian_characteristic_function, CharGrid, GaussianFit,
};
pub use states::{
    closed_form_photon_number, coherent_state, coherent_tail_mass, displacement_operator, even_odd_coherent,
    mean_photon_number, partial_trace, quasi_bell_coherent, Subsystem,
};
pub use synthesis::{
    synthesis_coefficients, synthesis_min_cutoff, synthesize_hadamard, SynthesisCoefficients, SynthesisResult,
    CONVERGENCE_WARNING_THRESHOLD,
};

use crate::error::{Error, Result};
use crate::linalg::{re, CMatrix, CVector, C64};

/// Largest pre-normalization tail mass accepted for a constructed coherent state.
pub const DEFAULT_TAIL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockSpace {
    n_max: usize,
    tail_tol: f64,
}

impl FockSpace {
    pub fn new(n_max: usize) -> Result<Self> {
        Self::with_tolerance(n_max, DEFAULT_TAIL_TOL)
    }

    pub fn with_tolerance(n_max: usize, tail_tol: f64) -> Result<Self> {
        if n_max < 2 {
            return Err(Error::Domain(format!("Fock cutoff must be at least 2, got {n_max}")));
        }
        if !(tail_tol > 0.0 && tail_tol < 1.0) {
            return Err(Error::Domain(format!("tail tolerance must lie in (0, 1), got {tail_tol}")));
        }
        Ok(Self { n_max, tail_tol })
    }

    /// Default cutoff `ceil((2a)^2 + 8(2a) + 20)`, enough to hold `|+-2 alpha>`.
    pub fn for_amplitude(alpha: f64) -> Result<Self> {
        Self::new(default_cutoff(alpha))
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn tail_tol(&self) -> f64 {
        self.tail_tol
    }

    pub fn annihilation(&self) -> FockOperator {
        let n = self.n_max;
        FockOperator::new(CMatrix::from_fn(
            n,
            n,
            |i, j| if j == i + 1 { re((j as f64).sqrt()) } else { C64::new(0.0, 0.0) },
        ))
    }

    pub fn creation(&self) -> FockOperator {
        FockOperator::new(self.annihilation().entries.adjoint())
    }

    pub fn number(&self) -> FockOperator {
        let n = self.n_max;
        FockOperator::new(CMatrix::from_fn(n, n, |i, j| if i == j { re(i as f64) } else { C64::new(0.0, 0.0) }))
    }
}

pub fn default_cutoff(alpha: f64) -> usize {
    let two_a = 2.0 * alpha.abs();
    (two_a * two_a + 8.0 * two_a + 20.0).ceil() as usize
}

/// Dense operator on a truncated mode.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    entries: CMatrix,
}

impl FockOperator {
    pub fn new(entries: CMatrix) -> Self {
        assert!(entries.is_square());
        Self { entries }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_matrix(self) -> CMatrix {
        self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn apply(&self, v: &FockVector) -> CVector {
        &self.entries * &v.amplitudes
    }
}

/// Normalized single-mode state.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    amplitudes: CVector,
}

impl FockVector {
    pub const NORM_TOL: f64 = 1e-10;

    /// Normalizes `amplitudes`; fails on a vanishing vector.
    pub fn normalized(amplitudes: CVector) -> Result<Self> {
        let norm = amplitudes.norm();
        if norm < 1e-14 {
            return Err(Error::ZeroNormState { norm });
        }
        Ok(Self { amplitudes: amplitudes.unscale(norm) })
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn n_max(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn inner(&self, other: &FockVector) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// `sum_n n |c_n|^2`.
    pub fn mean_photon_number(&self) -> f64 {
        self.amplitudes.iter().enumerate().map(|(n, c)| n as f64 * c.norm_sqr()).sum()
    }
}

/// Normalized two-mode state on `n_max^2` amplitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeVector {
    amplitudes: CVector,
    n_max: usize,
}

impl TwoModeVector {
    pub fn normalized(amplitudes: CVector, n_max: usize) -> Result<Self> {
        assert_eq!(amplitudes.len(), n_max * n_max);
        let norm = amplitudes.norm();
        if norm < 1e-14 {
            return Err(Error::ZeroNormState { norm });
        }
        Ok(Self { amplitudes: amplitudes.unscale(norm), n_max })
    }

    pub fn product(a: &FockVector, b: &FockVector) -> Self {
        assert_eq!(a.n_max(), b.n_max());
        Self { amplitudes: crate::linalg::kron_vec(&a.amplitudes, &b.amplitudes), n_max: a.n_max() }
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Coefficients as an `n_max x n_max` matrix, rows indexing mode A.
    pub fn coefficient_matrix(&self) -> CMatrix {
        let n = self.n_max;
        CMatrix::from_fn(n, n, |i, j| self.amplitudes[i * n + j])
    }

    pub fn inner(&self, other: &TwoModeVector) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// Weight carried by the top Fock level of either mode.
    pub fn edge_weight(&self) -> f64 {
        let n = self.n_max;
        (0..n * n).filter(|k| k / n == n - 1 || k % n == n - 1).map(|k| self.amplitudes[k].norm_sqr()).sum()
    }
}
