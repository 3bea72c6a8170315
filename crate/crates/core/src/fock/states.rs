//! Coherent states, cat states and the coherent quasi-Bell family.

use super::{FockOperator, FockSpace, FockVector, TwoModeVector};
use crate::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{expm, re, CVector, C64};
use crate::twostate::BellIndex;

/// Tolerance for density matrices built from truncated two-mode states.
const FOCK_DENSITY_TOL: f64 = 1e-10;

/// `ln |<n|a>|` for a coherent state of real amplitude `a`, `n = 0, 1, ...`.
fn log_amplitudes(alpha: f64) -> impl Iterator<Item = f64> {
    let log_a = alpha.abs().ln();
    let mut log_c = -alpha * alpha / 2.0;
    (0usize..).map(move |n| {
        if n > 0 {
            log_c += log_a - 0.5 * (n as f64).ln();
        }
        log_c
    })
}

/// Photon-number mass of `|alpha>` on levels `>= n_max`.
pub fn coherent_tail_mass(alpha: f64, n_max: usize) -> f64 {
    if alpha == 0.0 {
        return 0.0;
    }
    let mean = alpha * alpha;
    let mut tail = 0.0;
    for (n, log_c) in log_amplitudes(alpha).enumerate().skip(n_max) {
        let p = (2.0 * log_c).exp();
        tail += p;
        // terms decrease geometrically once past the mean
        if n as f64 > mean && p <= tail * 1e-17 {
            break;
        }
    }
    tail
}

fn check_tail(alpha: f64, space: &FockSpace) -> Result<()> {
    let tail = coherent_tail_mass(alpha, space.n_max());
    if tail >= space.tail_tol() {
        return Err(Error::Truncation(format!(
            "coherent amplitude {alpha} leaves tail mass {tail:e} above level {} (tolerance {:e})",
            space.n_max(),
            space.tail_tol()
        )));
    }
    Ok(())
}

fn require_real_amplitude(alpha: f64) -> Result<()> {
    if !alpha.is_finite() {
        return Err(Error::Domain(format!("coherent amplitude must be finite, got {alpha}")));
    }
    Ok(())
}

/// `|alpha>` for real `alpha`, renormalized on the truncated space.
pub fn coherent_state(alpha: f64, space: &FockSpace) -> Result<FockVector> {
    require_real_amplitude(alpha)?;
    check_tail(alpha, space)?;
    let n = space.n_max();
    let amps: Vec<C64> = if alpha == 0.0 {
        (0..n).map(|k| re(if k == 0 { 1.0 } else { 0.0 })).collect()
    } else {
        log_amplitudes(alpha)
            .take(n)
            .enumerate()
            .map(|(k, l)| {
                let sign = if alpha < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
                re(sign * l.exp())
            })
            .collect()
    };
    FockVector::normalized(CVector::from_vec(amps))
}

/// `D(alpha) = exp(alpha (a^dag - a))` for real `alpha`.
pub fn displacement_operator(alpha: f64, space: &FockSpace) -> Result<FockOperator> {
    require_real_amplitude(alpha)?;
    check_tail(alpha, space)?;
    let a = space.annihilation().into_matrix();
    let generator = (a.adjoint() - a).scale(alpha);
    Ok(FockOperator::new(expm(&generator)))
}

/// Even and odd cat states `(|a> +- |-a>) / sqrt(2(1 +- kappa))`.
pub fn even_odd_coherent(alpha: f64, space: &FockSpace) -> Result<(FockVector, FockVector)> {
    require_real_amplitude(alpha)?;
    if alpha <= 0.0 {
        return Err(Error::Domain(format!("cat amplitude must be positive, got {alpha}")));
    }
    let plus = coherent_state(alpha, space)?;
    let minus = coherent_state(-alpha, space)?;
    let kappa = (-2.0 * alpha * alpha).exp();
    let even = (plus.amplitudes() + minus.amplitudes()).unscale((2.0 * (1.0 + kappa)).sqrt());
    let odd = (plus.amplitudes() - minus.amplitudes()).unscale((2.0 * (1.0 - kappa)).sqrt());
    Ok((FockVector::normalized(even)?, FockVector::normalized(odd)?))
}

fn require_nondegenerate(index: BellIndex, alpha: f64) -> Result<()> {
    require_real_amplitude(alpha)?;
    if alpha < 0.0 {
        return Err(Error::Domain(format!("coherent amplitude must be non-negative, got {alpha}")));
    }
    if alpha == 0.0 && index.sign() < 0.0 {
        return Err(Error::DegenerateState { index: index.number(), alpha });
    }
    Ok(())
}

/// Quasi-Bell state of the coherent pair `{|alpha>, |-alpha>}` on two modes.
pub fn quasi_bell_coherent(index: BellIndex, alpha: f64, space: &FockSpace) -> Result<TwoModeVector> {
    require_nondegenerate(index, alpha)?;
    let plus = coherent_state(alpha, space)?;
    let minus = coherent_state(-alpha, space)?;
    let kappa = (-2.0 * alpha * alpha).exp();
    let h = index.normalization(kappa);
    let (first, second) = if index.is_correlated() {
        (TwoModeVector::product(&plus, &plus), TwoModeVector::product(&minus, &minus))
    } else {
        (TwoModeVector::product(&plus, &minus), TwoModeVector::product(&minus, &plus))
    };
    let v = (first.amplitudes() + second.amplitudes().scale(index.sign())).scale(h);
    TwoModeVector::normalized(v, space.n_max())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Reduced density matrix of the kept mode.
pub fn partial_trace(state: &TwoModeVector, keep: Subsystem) -> Result<DensityMatrix> {
    let m = state.coefficient_matrix();
    let rho = match keep {
        Subsystem::A => &m * m.adjoint(),
        Subsystem::B => m.transpose() * m.conjugate(),
    };
    DensityMatrix::new(rho, FOCK_DENSITY_TOL)
}

/// `Tr[rho_A a^dag a]` for a coherent quasi-Bell state.
pub fn mean_photon_number(index: BellIndex, alpha: f64, space: &FockSpace) -> Result<f64> {
    let state = quasi_bell_coherent(index, alpha, space)?;
    let rho = partial_trace(&state, Subsystem::A)?;
    Ok(rho.entries().diagonal().iter().enumerate().map(|(n, x)| n as f64 * x.re).sum())
}

/// `(1 - k^2)/(1 + k^2) a^2` for indices 1, 3 and `(1 + k^2)/(1 - k^2) a^2` for 2, 4.
pub fn closed_form_photon_number(index: BellIndex, alpha: f64) -> Result<f64> {
    require_nondegenerate(index, alpha)?;
    let k2 = (-4.0 * alpha * alpha).exp();
    let a2 = alpha * alpha;
    Ok(match index {
        BellIndex::One | BellIndex::Three => (1.0 - k2) / (1.0 + k2) * a2,
        BellIndex::Two | BellIndex::Four => (1.0 + k2) / (1.0 - k2) * a2,
    })
}
