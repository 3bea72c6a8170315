//! Validated density matrices and their spectral quantities.

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, hermiticity_error, CMatrix};

/// Tolerance on Hermiticity, trace and positivity used at construction.
pub const DENSITY_TOL: f64 = 1e-12;

/// Eigenvalues in `[-EIGEN_CLAMP, 0)` are treated as zero.
pub const EIGEN_CLAMP: f64 = 1e-12;

/// Hermitian, positive semidefinite, unit-trace operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
    eigenvalues: Vec<f64>,
}

impl DensityMatrix {
    /// Validates `entries` against the density-matrix invariants at tolerance `tol`.
    pub fn new(entries: CMatrix, tol: f64) -> Result<Self> {
        if !entries.is_square() || entries.nrows() == 0 {
            return Err(Error::Domain(format!(
                "density matrix must be square and non-empty, got {:?}",
                entries.shape()
            )));
        }
        let herm = hermiticity_error(&entries);
        if herm > tol {
            return Err(Error::Domain(format!("density matrix not Hermitian ({herm:e})")));
        }
        let trace = entries.trace();
        if (trace.re - 1.0).abs() > tol || trace.im.abs() > tol {
            return Err(Error::Domain(format!("density matrix trace is {trace}")));
        }
        // symmetrize so the eigensolver sees an exactly Hermitian input
        let sym = (&entries + entries.adjoint()).scale(0.5);
        let eigenvalues = hermitian_eigenvalues(&sym);
        if let Some(&min) = eigenvalues.last() {
            if min < -tol {
                return Err(Error::Domain(format!("density matrix has eigenvalue {min:e}")));
            }
        }
        Ok(Self { entries, eigenvalues })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    /// Eigenvalues in descending order, negative drift clamped to zero.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|&l| if (-EIGEN_CLAMP..0.0).contains(&l) { 0.0 } else { l }).collect()
    }

    /// Von Neumann entropy in bits.
    pub fn entropy(&self) -> f64 {
        self.eigenvalues().into_iter().filter(|&l| l > 0.0).map(|l| -l * l.log2()).sum()
    }

    pub fn purity(&self) -> f64 {
        (&self.entries * &self.entries).trace().re
    }
}
