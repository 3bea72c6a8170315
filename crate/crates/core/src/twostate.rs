//! Quasi-Bell states of an abstract nonorthogonal pair `{|psi1>, |psi2>}`.
//!
//! Every state is stored in the orthonormal even/odd product basis
//! `|ee>, |eo>, |oe>, |oo>` (amplitude index `2*a + b`, `e = 0`, `o = 1`), where
//!
//! ```text
//! |e> = (|psi1> + |psi2>) / sqrt(2(1 + kappa))
//! |o> = (|psi1> - |psi2>) / sqrt(2(1 - kappa))
//! ```
//!
//! The sign of `|o>` follows `|psi1> - |psi2>`; flipping it flips the sign of
//! every odd-component amplitude. The nonorthogonal pair only appears in the
//! constructors.

use std::fmt;

use crate::density::{DensityMatrix, DENSITY_TOL};
use crate::error::{Error, Result};
use crate::linalg::{kron_vec, re, CMatrix, CVector, C64};

/// Real overlap `kappa = <psi1|psi2>` of the basic pair, `0 <= kappa < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapPair {
    kappa: f64,
}

impl OverlapPair {
    pub fn new(kappa: f64) -> Result<Self> {
        if !kappa.is_finite() || !(0.0..1.0).contains(&kappa) {
            return Err(Error::Domain(format!("overlap kappa must lie in [0, 1), got {kappa}")));
        }
        Ok(Self { kappa })
    }

    /// Overlap of the coherent pair `{|alpha>, |-alpha>}`.
    pub fn from_coherent_amplitude(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(Error::Domain(format!("alpha must be finite, got {alpha}")));
        }
        Self::new((-2.0 * alpha * alpha).exp())
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    /// The single off-diagonal Gram entry `D = 2 kappa / (1 + kappa^2)`.
    pub fn gram_offdiagonal(&self) -> f64 {
        2.0 * self.kappa / (1.0 + self.kappa * self.kappa)
    }
}

/// Coefficients relating the pair to the orthonormal even/odd basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvenOddBasis {
    /// `1 / sqrt(2(1 + kappa))`
    pub ce: f64,
    /// `1 / sqrt(2(1 - kappa))`
    pub co: f64,
    kappa: f64,
}

impl EvenOddBasis {
    /// `|psi1>` in the e/o basis: `(sqrt((1+k)/2), sqrt((1-k)/2))`.
    pub fn psi1(&self) -> CVector {
        CVector::from_vec(vec![re(((1.0 + self.kappa) / 2.0).sqrt()), re(((1.0 - self.kappa) / 2.0).sqrt())])
    }

    /// `|psi2>` in the e/o basis: `(sqrt((1+k)/2), -sqrt((1-k)/2))`.
    pub fn psi2(&self) -> CVector {
        CVector::from_vec(vec![re(((1.0 + self.kappa) / 2.0).sqrt()), re(-((1.0 - self.kappa) / 2.0).sqrt())])
    }
}

pub fn make_even_odd_basis(pair: OverlapPair) -> EvenOddBasis {
    let k = pair.kappa;
    EvenOddBasis { ce: 1.0 / (2.0 * (1.0 + k)).sqrt(), co: 1.0 / (2.0 * (1.0 - k)).sqrt(), kappa: k }
}

/// Which of the four quasi-Bell combinations.
///
/// `One`: `psi1 psi2 + psi2 psi1`, `Two`: `psi1 psi2 - psi2 psi1`,
/// `Three`: `psi1 psi1 + psi2 psi2`, `Four`: `psi1 psi1 - psi2 psi2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BellIndex {
    One,
    Two,
    Three,
    Four,
}

impl BellIndex {
    pub const ALL: [BellIndex; 4] = [BellIndex::One, BellIndex::Two, BellIndex::Three, BellIndex::Four];

    pub fn from_number(i: usize) -> Result<Self> {
        match i {
            1 => Ok(Self::One),
            2 => Ok(Self::Two),
            3 => Ok(Self::Three),
            4 => Ok(Self::Four),
            _ => Err(Error::Domain(format!("quasi-Bell index must be 1..=4, got {i}"))),
        }
    }

    pub fn number(self) -> usize {
        match self {
            Self::One => 1,
            Self::Two => 2,
            Self::Three => 3,
            Self::Four => 4,
        }
    }

    /// True for the combinations whose two terms carry the same state on A and B.
    pub fn is_correlated(self) -> bool {
        matches!(self, Self::Three | Self::Four)
    }

    /// Relative sign between the two terms.
    pub fn sign(self) -> f64 {
        match self {
            Self::One | Self::Three => 1.0,
            Self::Two | Self::Four => -1.0,
        }
    }

    /// Normalization `h_i`: `1/sqrt(2(1 + kappa^2))` for 1, 3 and `1/sqrt(2(1 - kappa^2))` for 2, 4.
    pub fn normalization(self, kappa: f64) -> f64 {
        1.0 / (2.0 * (1.0 + self.sign() * kappa * kappa)).sqrt()
    }
}

impl fmt::Display for BellIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// Pure state of two qubits in the e/o product basis.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitState {
    amplitudes: CVector,
    pub label: Option<BellIndex>,
}

impl TwoQubitState {
    pub const NORM_TOL: f64 = 1e-12;

    /// Wraps already-normalized amplitudes ordered `ee, eo, oe, oo`.
    pub fn new(amplitudes: [C64; 4]) -> Result<Self> {
        let v = CVector::from_row_slice(&amplitudes);
        let norm = v.norm();
        if (norm - 1.0).abs() > Self::NORM_TOL {
            return Err(Error::Domain(format!("two-qubit state has norm {norm}")));
        }
        Ok(Self { amplitudes: v, label: None })
    }

    /// Normalizes `v`, rejecting vectors with norm below `1e-14`.
    pub fn normalized(v: CVector) -> Result<Self> {
        assert_eq!(v.len(), 4);
        let norm = v.norm();
        if norm < 1e-14 {
            return Err(Error::ZeroNormState { norm });
        }
        Ok(Self { amplitudes: v.unscale(norm), label: None })
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    /// Amplitude of `|a b>`, with 0 = e and 1 = o.
    pub fn amp(&self, a: usize, b: usize) -> C64 {
        self.amplitudes[2 * a + b]
    }

    pub fn inner(&self, other: &TwoQubitState) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// `|<self|other>|`; 1 means equal up to global phase.
    pub fn overlap_modulus(&self, other: &TwoQubitState) -> f64 {
        self.inner(other).norm()
    }

    /// Coefficient matrix `psi[a, b]`.
    pub fn coefficient_matrix(&self) -> CMatrix {
        CMatrix::from_fn(2, 2, |a, b| self.amp(a, b))
    }
}

fn pair_combination(pair: OverlapPair, index: BellIndex, first: f64, second: f64) -> CVector {
    let basis = make_even_odd_basis(pair);
    let (p1, p2) = (basis.psi1(), basis.psi2());
    let (a, b) = if index.is_correlated() {
        (kron_vec(&p1, &p1), kron_vec(&p2, &p2))
    } else {
        (kron_vec(&p1, &p2), kron_vec(&p2, &p1))
    };
    a.scale(first) + b.scale(index.sign() * second)
}

/// One of the four quasi-Bell states, expressed in the e/o basis.
pub fn quasi_bell_state(pair: OverlapPair, index: BellIndex) -> TwoQubitState {
    let h = index.normalization(pair.kappa);
    let v = pair_combination(pair, index, h, h);
    TwoQubitState { amplitudes: v, label: Some(index) }
}

/// Unequal weights `beta` and `sqrt(1 - beta^2)` on the two terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralWeights {
    beta: f64,
}

impl GeneralWeights {
    pub fn new(beta: f64) -> Result<Self> {
        if !beta.is_finite() || !(0.0..=1.0).contains(&beta) {
            return Err(Error::Domain(format!("beta must lie in [0, 1], got {beta}")));
        }
        Ok(Self { beta })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn complement(&self) -> f64 {
        (1.0 - self.beta * self.beta).max(0.0).sqrt()
    }

    /// Squared norm of the unnormalized combination, `1 +- 2 kappa^2 beta sqrt(1 - beta^2)`.
    pub fn norm_squared(&self, kappa: f64, family: BellIndex) -> f64 {
        1.0 + family.sign() * 2.0 * kappa * kappa * self.beta * self.complement()
    }

    /// Normalization `g_i` of the weighted state.
    pub fn state_normalization(&self, kappa: f64, family: BellIndex) -> f64 {
        1.0 / self.norm_squared(kappa, family).sqrt()
    }

    /// Prefactor `k_i = g_i^2` of the reduced operator written in the pair basis.
    pub fn reduced_normalization(&self, kappa: f64, family: BellIndex) -> f64 {
        1.0 / self.norm_squared(kappa, family)
    }
}

/// Weighted generalization of [`quasi_bell_state`]; reduces to it at `beta = 1/sqrt(2)`.
pub fn general_state(pair: OverlapPair, weights: GeneralWeights, family: BellIndex) -> Result<TwoQubitState> {
    let v = pair_combination(pair, family, weights.beta, weights.complement());
    TwoQubitState::normalized(v)
}

/// Gram matrix of the four quasi-Bell states: identity plus `D` at (1,3) and (3,1).
pub fn gram_matrix(pair: OverlapPair) -> [[f64; 4]; 4] {
    let mut g = [[0.0; 4]; 4];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let d = pair.gram_offdiagonal();
    g[0][2] = d;
    g[2][0] = d;
    g
}

/// Reduced state of subsystem A in the e/o basis.
pub fn reduced_density(state: &TwoQubitState) -> DensityMatrix {
    let psi = state.coefficient_matrix();
    let rho = &psi * psi.adjoint();
    DensityMatrix::new(rho, DENSITY_TOL).expect("partial trace of a normalized state is a density matrix")
}

/// Closed-form reduced eigenvalues `(lambda1, lambda2)`, `lambda1 >= lambda2`.
pub fn reduced_eigenvalues(pair: OverlapPair, index: BellIndex) -> (f64, f64) {
    let k = pair.kappa;
    match index {
        BellIndex::One | BellIndex::Three => {
            let den = 2.0 * (1.0 + k * k);
            ((1.0 + k).powi(2) / den, (1.0 - k).powi(2) / den)
        }
        BellIndex::Two | BellIndex::Four => (0.5, 0.5),
    }
}

/// Binary entropy in bits, `H[0] = H[1] = 0`.
pub fn entropy_function(x: f64) -> Result<f64> {
    const BAND: f64 = 1e-12;
    if !x.is_finite() || !(-BAND..=1.0 + BAND).contains(&x) {
        return Err(Error::Domain(format!("entropy argument must lie in [0, 1], got {x}")));
    }
    let x = x.clamp(0.0, 1.0);
    let term = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    Ok(term(x) + term(1.0 - x))
}

/// Von Neumann entropy of either reduced state, in bits.
pub fn entropy_of_entanglement(state: &TwoQubitState) -> f64 {
    reduced_density(state).entropy()
}

/// Pure-state concurrence `|<psi| sigma_y (x) sigma_y |psi*>| = 2 |a_ee a_oo - a_eo a_oe|`.
pub fn concurrence(state: &TwoQubitState) -> f64 {
    let c = 2.0 * (state.amp(0, 0) * state.amp(1, 1) - state.amp(0, 1) * state.amp(1, 0)).norm();
    c.min(1.0)
}

/// Entropy implied by a concurrence value, `H[(1 + sqrt(1 - C^2)) / 2]`.
pub fn entropy_from_concurrence(c: f64) -> Result<f64> {
    let root = (1.0 - c * c).max(0.0).sqrt();
    entropy_function((1.0 + root) / 2.0)
}
