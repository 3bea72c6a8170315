//! Two-mode characteristic function
//! `C(xi, eta) = Tr[rho e^{xi a^dag} e^{-xi* a} e^{eta b^dag} e^{-eta* b}] e^{-(|xi|^2 + |eta|^2)/2}`.
//!
//! The numeric path moves each creation-operator exponential onto the bra,
//! `<Psi| e^{xi a^dag} e^{-xi* a} |Psi> = <e^{xi* a} Psi | e^{-xi* a} Psi>`,
//! so only lowering exponentials act on the truncated state and no amplitude
//! is pushed past the cutoff.

use super::TwoModeVector;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector, C64, ZERO};
use crate::twostate::BellIndex;

/// Bound on the estimated truncation error of a numeric evaluation.
const CHARFUNC_TRUNCATION_TOL: f64 = 1e-9;

fn log_factorials(n: usize) -> Vec<f64> {
    let mut lf = Vec::with_capacity(n + 1);
    lf.push(0.0);
    for k in 1..=n {
        lf.push(lf[k - 1] + (k as f64).ln());
    }
    lf
}

/// `exp(z a)` on levels `0..n`: entry `(m, m+k)` is `z^k sqrt((m+k)!/m!) / k!`.
fn lowering_exponential(z: C64, n: usize) -> CMatrix {
    let mut e = CMatrix::identity(n, n);
    if z == ZERO {
        return e;
    }
    let lf = log_factorials(n);
    let (r, phi) = z.to_polar();
    for k in 1..n {
        let phase = C64::from_polar(1.0, k as f64 * phi);
        for m in 0..n - k {
            let mag = (k as f64 * r.ln() + 0.5 * (lf[m + k] - lf[m]) - lf[k]).exp();
            e[(m, m + k)] = phase * mag;
        }
    }
    e
}

/// Precomputed factors so a grid of evaluations costs one trace each.
struct Factors {
    n: usize,
    psi: CMatrix,
    edge: f64,
}

impl Factors {
    fn new(state: &TwoModeVector) -> Self {
        Self { n: state.n_max(), psi: state.coefficient_matrix(), edge: state.edge_weight().sqrt() }
    }

    fn check(&self, z: C64) -> Result<()> {
        let growth = lowering_exponential(C64::new(z.norm(), 0.0), self.n).norm();
        let estimate = self.edge * growth * growth;
        if estimate > CHARFUNC_TRUNCATION_TOL || !estimate.is_finite() {
            return Err(Error::Truncation(format!(
                "characteristic function at |z| = {} has truncation estimate {estimate:e}",
                z.norm()
            )));
        }
        Ok(())
    }

    /// `Psi^dag E(xi*)^dag E(-xi*) Psi`.
    fn mode_a(&self, xi: C64) -> CMatrix {
        let up = lowering_exponential(xi.conj(), self.n);
        let down = lowering_exponential(-xi.conj(), self.n);
        self.psi.adjoint() * up.adjoint() * down * &self.psi
    }

    /// `E(-eta*)^T conj(E(eta*))`.
    fn mode_b(&self, eta: C64) -> CMatrix {
        let up = lowering_exponential(eta.conj(), self.n);
        let down = lowering_exponential(-eta.conj(), self.n);
        down.transpose() * up.conjugate()
    }
}

fn trace_of_product(a: &CMatrix, b: &CMatrix) -> C64 {
    let n = a.nrows();
    let mut t = ZERO;
    for i in 0..n {
        for j in 0..n {
            t += a[(i, j)] * b[(j, i)];
        }
    }
    t
}

fn gaussian_damping(xi: C64, eta: C64) -> f64 {
    (-(xi.norm_sqr() + eta.norm_sqr()) / 2.0).exp()
}

/// Characteristic function of a two-mode state by dense matrix action.
pub fn characteristic_function_numeric(state: &TwoModeVector, xi: C64, eta: C64) -> Result<C64> {
    let grid = characteristic_function_grid(state, &[xi], &[eta])?;
    Ok(grid[0][0])
}

/// `C(xis[i], etas[j])` for every pair.
pub fn characteristic_function_grid(state: &TwoModeVector, xis: &[C64], etas: &[C64]) -> Result<Vec<Vec<C64>>> {
    let f = Factors::new(state);
    for &z in xis.iter().chain(etas) {
        f.check(z)?;
    }
    let b_factors: Vec<CMatrix> = etas.iter().map(|&eta| f.mode_b(eta)).collect();
    Ok(xis
        .iter()
        .map(|&xi| {
            let ka = f.mode_a(xi);
            etas.iter()
                .zip(&b_factors)
                .map(|(&eta, lb)| trace_of_product(&ka, lb) * gaussian_damping(xi, eta))
                .collect()
        })
        .collect())
}

/// Closed form for the coherent quasi-Bell states, with `A1 = xi - xi*`,
/// `A2 = xi + xi*`, `B1 = eta - eta*`, `B2 = eta + eta*`.
///
/// The interference terms carry the factor `kappa^2 = <a|-a>^2`; with it,
/// `C(0, 0) = h^2 (2 +- 2 kappa^2) = 1`.
pub fn characteristic_function_closed(index: BellIndex, alpha: f64, xi: C64, eta: C64) -> Result<C64> {
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(Error::Domain(format!("coherent amplitude must be non-negative, got {alpha}")));
    }
    if alpha == 0.0 && index.sign() < 0.0 {
        return Err(Error::DegenerateState { index: index.number(), alpha });
    }
    let kappa = (-2.0 * alpha * alpha).exp();
    let h = index.normalization(kappa);
    let a1 = xi - xi.conj();
    let a2 = xi + xi.conj();
    let b1 = eta - eta.conj();
    let b2 = eta + eta.conj();
    // correlated states carry the same sign of alpha on both modes
    let (s1, s2) = if index.is_correlated() { (b1, b2) } else { (-b1, -b2) };
    let direct = ((a1 + s1) * alpha).exp() + ((-a1 - s1) * alpha).exp();
    let cross = ((a2 + s2) * alpha).exp() + ((-a2 - s2) * alpha).exp();
    let sum = direct + cross * (index.sign() * kappa * kappa);
    Ok(sum * (h * h * gaussian_damping(xi, eta)))
}

/// Gaussian characteristic function sharing the state's first and second moments,
/// `exp(<Z> + (<Z^2> - <Z>^2)/2)` with `Z = xi a^dag - xi* a + eta b^dag - eta* b`.
#[derive(Debug, Clone)]
pub struct GaussianFit {
    first: [C64; 4],
    second: [[C64; 4]; 4],
}

/// Moments over the operator list `(a, b, a^dag, b^dag)`.
pub fn gaussian_characteristic_function(state: &TwoModeVector) -> GaussianFit {
    let n = state.n_max();
    let psi = state.coefficient_matrix();
    let a = CMatrix::from_fn(n, n, |i, j| if j == i + 1 { C64::new((j as f64).sqrt(), 0.0) } else { ZERO });
    let ad = a.adjoint();
    let flat = |m: CMatrix| CVector::from_fn(n * n, |k, _| m[(k / n, k % n)]);
    let vs = [flat(&a * &psi), flat(&psi * a.transpose()), flat(&ad * &psi), flat(&psi * ad.transpose())];
    let dag = [2, 3, 0, 1];
    let p = state.amplitudes();
    let mut first = [ZERO; 4];
    let mut second = [[ZERO; 4]; 4];
    for i in 0..4 {
        first[i] = p.dotc(&vs[i]);
        for j in 0..4 {
            second[i][j] = vs[dag[i]].dotc(&vs[j]);
        }
    }
    GaussianFit { first, second }
}

impl GaussianFit {
    pub fn eval(&self, xi: C64, eta: C64) -> C64 {
        let w = [-xi.conj(), -eta.conj(), xi, eta];
        let mean: C64 = (0..4).map(|i| w[i] * self.first[i]).sum();
        let mut sq = ZERO;
        for i in 0..4 {
            for j in 0..4 {
                sq += w[i] * w[j] * self.second[i][j];
            }
        }
        (mean + (sq - mean * mean) * 0.5).exp()
    }
}

/// Uniform grid `-extent..=extent` with `points` samples per real coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharGrid {
    pub extent: f64,
    pub points: usize,
}

impl CharGrid {
    pub fn new(extent: f64, points: usize) -> Result<Self> {
        if !(extent.is_finite() && extent > 0.0) {
            return Err(Error::Domain(format!("grid extent must be positive, got {extent}")));
        }
        if points < 2 {
            return Err(Error::Domain(format!("grid needs at least 2 points, got {points}")));
        }
        Ok(Self { extent, points })
    }

    pub fn axis(&self) -> Vec<f64> {
        let step = 2.0 * self.extent / (self.points - 1) as f64;
        (0..self.points).map(|k| -self.extent + step * k as f64).collect()
    }

    /// All `re + i im` combinations, real part slow.
    pub fn complex_points(&self) -> Vec<C64> {
        let axis = self.axis();
        axis.iter().flat_map(|&x| axis.iter().map(move |&y| C64::new(x, y))).collect()
    }
}
