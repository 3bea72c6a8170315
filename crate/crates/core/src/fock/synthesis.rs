//! Hadamard gate on the displaced cat qubit from finite-order nonlinear generators.
//!
//! In the frame `D(-alpha) . D(alpha)` the cat qubit spans `|0>` and
//! `|-2 alpha> = sum_n c_n |n>` with `c_n = e^{-2 a^2} (-2a)^n / sqrt(n!)`.
//! Writing `|phi>` for the normalized `n >= 1` part of `|-2 alpha>` and
//! `s = sqrt(1 - c_0^2)`, the displaced generators are
//!
//! ```text
//! P~ = -(|0><phi| - |phi><0|)
//! Q~ = c_0 (|0><0| - |phi><phi|) + s (|0><phi| + |phi><0|)
//! ```
//!
//! The truncated versions replace `|0><0|` by the normal-ordered series
//! `Pi_M = sum_{l<=M} (-a^dag)^l a^l / l!` and `<phi|` by `<0| A_M` with
//! `A_M = sum_{n=1..M} d_n a^n / sqrt(n!)`, so that
//!
//! ```text
//! P_M = -(Pi_M A_M - h.c.)
//! Q_M = c_0 (Pi_M - A_M^dag Pi_M A_M) + s (Pi_M A_M + h.c.)
//! ```
//!
//! Both act exactly as `P~`, `Q~` on `span{|0>, sum_{n<=M} d_n |n>}`; the
//! remaining weight `delta_M` of `|-2 alpha>` beyond level `M` is what the
//! synthesized gate gets wrong.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use super::states::{coherent_state, displacement_operator, even_odd_coherent};
use super::{FockOperator, FockSpace};
use crate::error::{Error, Result};
use crate::gates::hadamard_rotation;
use crate::linalg::{expm, re, CMatrix, CVector, I};

/// Gate errors above this flag the result as unconverged.
pub const CONVERGENCE_WARNING_THRESHOLD: f64 = 0.1;

#[derive(Debug, Clone, PartialEq)]
pub struct SynthesisCoefficients {
    /// `c_0..=c_M`
    pub c: Vec<f64>,
    /// `d_1..=d_M`, stored from index 0
    pub d: Vec<f64>,
    /// `1 - sum_{n=1..M} c_n^2 / (1 - c_0^2)`
    pub delta_m: f64,
}

fn validate(alpha: f64, m_cut: usize) -> Result<()> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::Domain(format!("synthesis amplitude must be positive, got {alpha}")));
    }
    if m_cut < 1 {
        return Err(Error::Domain("photon-number cutoff M must be at least 1".into()));
    }
    Ok(())
}

/// Expansion coefficients of `|-2 alpha>` and the cutoff error at `M`.
pub fn synthesis_coefficients(alpha: f64, m_cut: usize) -> Result<SynthesisCoefficients> {
    validate(alpha, m_cut)?;
    let two_a = 2.0 * alpha;
    let mut log_c = -2.0 * alpha * alpha;
    let mut c = Vec::with_capacity(m_cut + 1);
    c.push(log_c.exp());
    for n in 1..=m_cut {
        log_c += two_a.ln() - 0.5 * (n as f64).ln();
        let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
        c.push(sign * log_c.exp());
    }
    let kept: f64 = c[1..].iter().map(|x| x * x).sum();
    let norm = kept.sqrt();
    let d = c[1..].iter().map(|x| x / norm).collect();

    // sum the discarded weight directly rather than subtracting from one
    let mut tail = 0.0;
    let mut n = m_cut;
    loop {
        n += 1;
        log_c += two_a.ln() - 0.5 * (n as f64).ln();
        let p = (2.0 * log_c).exp();
        tail += p;
        if n as f64 > two_a * two_a && p <= tail * 1e-17 {
            break;
        }
    }
    let excited = 1.0 - c[0] * c[0];
    let delta_m = (tail / excited).clamp(0.0, 1.0);
    Ok(SynthesisCoefficients { c, d, delta_m })
}

/// Smallest cutoff accepted by [`synthesize_hadamard`].
pub fn synthesis_min_cutoff(alpha: f64, m_cut: usize) -> usize {
    let photons = (4.0 * alpha * alpha).ceil().max(1.0) as usize;
    (4 * photons + 16).max(m_cut + 2)
}

#[derive(Debug, Clone)]
pub struct SynthesisResult {
    pub alpha: f64,
    pub m_cut: usize,
    pub c: Vec<f64>,
    pub d: Vec<f64>,
    pub p_m: FockOperator,
    pub q_m: FockOperator,
    pub delta_m: f64,
    /// Largest `||(U_approx - U_exact) v||` over the two displaced cat basis states.
    pub gate_error: f64,
    pub convergence_warning: bool,
}

fn power_sum<F: Fn(usize) -> f64>(base: &CMatrix, order: usize, weight: F) -> CMatrix {
    let n = base.nrows();
    let mut sum = CMatrix::zeros(n, n);
    let mut power = CMatrix::identity(n, n);
    for l in 0..=order {
        if l > 0 {
            power = &power * base;
        }
        let w = weight(l);
        if w != 0.0 {
            sum += power.scale(w);
        }
    }
    sum
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Builds `P_M`, `Q_M`, the approximate gate, and its error against
/// `D(-alpha) H D(alpha)` with `H` the cat-qubit Hadamard (identity off the qubit).
pub fn synthesize_hadamard(alpha: f64, m_cut: usize, space: &FockSpace) -> Result<SynthesisResult> {
    validate(alpha, m_cut)?;
    let n = space.n_max();
    let needed = synthesis_min_cutoff(alpha, m_cut);
    if n < needed {
        return Err(Error::Truncation(format!(
            "cutoff {n} too small for alpha = {alpha}, M = {m_cut}; need at least {needed}"
        )));
    }
    // |-2 alpha> must fit
    coherent_state(-2.0 * alpha, space)?;

    let coeffs = synthesis_coefficients(alpha, m_cut)?;
    let c0 = coeffs.c[0];
    let s = (1.0 - c0 * c0).sqrt();

    let a = space.annihilation().into_matrix();
    let minus_ad = a.adjoint().scale(-1.0);
    // (-a^dag)^l a^l / l!, accumulated term by term
    let mut vacuum_series = CMatrix::zeros(n, n);
    let mut left = CMatrix::identity(n, n);
    let mut right = CMatrix::identity(n, n);
    for l in 0..=m_cut {
        if l > 0 {
            left = &left * &minus_ad;
            right = &right * &a;
        }
        vacuum_series += (&left * &right).scale(1.0 / factorial(l));
    }
    let lowering = power_sum(&a, m_cut, |k| if k == 0 { 0.0 } else { coeffs.d[k - 1] / factorial(k).sqrt() });

    let x = &vacuum_series * &lowering;
    let p_m = x.adjoint() - &x;
    let q_raw =
        (&vacuum_series - lowering.adjoint() * &vacuum_series * &lowering).scale(c0) + (&x + x.adjoint()).scale(s);
    let q_m = (&q_raw + q_raw.adjoint()).scale(0.5);

    let u_approx = (expm(&q_m.map(|z| z * I * FRAC_PI_2)) * expm(&p_m.scale(FRAC_PI_4))).map(|z| -I * z);

    let (even, odd) = even_odd_coherent(alpha, space)?;
    let h = hadamard_rotation();
    let basis = [even.amplitudes().clone(), odd.amplitudes().clone()];
    let mut lifted = CMatrix::identity(n, n);
    for (i, bi) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            let delta = if i == j { 1.0 } else { 0.0 };
            lifted += (bi * bj.adjoint()) * (h.matrix()[(i, j)] - re(delta));
        }
    }
    let d_plus = displacement_operator(alpha, space)?.into_matrix();
    let d_minus = displacement_operator(-alpha, space)?.into_matrix();
    let u_exact = &d_minus * lifted * &d_plus;

    let diff = &u_approx - &u_exact;
    let gate_error = basis
        .iter()
        .map(|b| {
            let v: CVector = &d_minus * b;
            (&diff * v).norm()
        })
        .fold(0.0, f64::max);

    Ok(SynthesisResult {
        alpha,
        m_cut,
        c: coeffs.c,
        d: coeffs.d,
        p_m: FockOperator::new(p_m),
        q_m: FockOperator::new(q_m),
        delta_m: coeffs.delta_m,
        gate_error,
        convergence_warning: gate_error > CONVERGENCE_WARNING_THRESHOLD,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermiticity_error;

    fn direct_delta(alpha: f64, m: usize) -> f64 {
        let c = synthesis_coefficients(alpha, m).unwrap().c;
        1.0 - c[1..].iter().map(|x| x * x).sum::<f64>() / (1.0 - c[0] * c[0])
    }

    #[test]
    fn coefficients_expand_the_doubly_displaced_state() {
        let alpha = 0.5;
        let coeffs = synthesis_coefficients(alpha, 6).unwrap();
        let s = FockSpace::new(29).unwrap();
        let target = coherent_state(-2.0 * alpha, &s).unwrap();
        for (n, c) in coeffs.c.iter().enumerate() {
            assert!((target.amplitudes()[n].re - c).abs() < 1e-14);
        }
        let sum: f64 = coeffs.d.iter().map(|x| x * x).sum();
        assert!((sum - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cutoff_error_values() {
        // mpmath, 40 digits
        let d2 = synthesis_coefficients(0.5, 2).unwrap().delta_m;
        assert!((d2 - 0.127_034_939_696_010_36).abs() < 1e-12);
        let d10 = synthesis_coefficients(0.5, 10).unwrap().delta_m;
        assert!(d10 < 1e-7);
        assert!((d10 - 1.589_533_236_240_79e-8).abs() < 1e-18);
        for m in 1..8 {
            assert!((direct_delta(0.5, m) - synthesis_coefficients(0.5, m).unwrap().delta_m).abs() < 1e-13);
        }
    }

    #[test]
    fn cutoff_error_is_nonincreasing() {
        for &alpha in &[0.3, 0.5, 1.0, 2.0] {
            let mut last = 1.0;
            for m in 1..=60 {
                let d = synthesis_coefficients(alpha, m).unwrap().delta_m;
                assert!((0.0..=1.0).contains(&d));
                assert!(d <= last);
                last = d;
            }
            assert!(last < 1e-6);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(synthesis_coefficients(0.0, 3).is_err());
        assert!(synthesis_coefficients(0.5, 0).is_err());
        let small = FockSpace::new(10).unwrap();
        assert!(matches!(synthesize_hadamard(0.5, 4, &small), Err(Error::Truncation(_))));
    }

    #[test]
    fn generators_have_the_right_symmetry() {
        let s = FockSpace::new(synthesis_min_cutoff(0.5, 8).max(29)).unwrap();
        let r = synthesize_hadamard(0.5, 8, &s).unwrap();
        assert!(hermiticity_error(&r.p_m.matrix().map(|z| z * I)) < 1e-10);
        assert!(hermiticity_error(r.q_m.matrix()) < 1e-10);
    }

    #[test]
    fn generators_act_exactly_on_the_truncated_qubit() {
        let alpha = 0.5;
        let m = 6;
        let s = FockSpace::new(29).unwrap();
        let r = synthesize_hadamard(alpha, m, &s).unwrap();
        let vac = CVector::from_fn(29, |k, _| re(if k == 0 { 1.0 } else { 0.0 }));
        let phi = CVector::from_fn(29, |k, _| re(if (1..=m).contains(&k) { r.d[k - 1] } else { 0.0 }));
        // P_M|0> = |phi_M>, P_M|phi_M> = -|0>
        assert!((r.p_m.matrix() * &vac - &phi).norm() < 1e-12);
        assert!((r.p_m.matrix() * &phi + &vac).norm() < 1e-12);
        let c0 = r.c[0];
        let sn = (1.0 - c0 * c0).sqrt();
        let q0 = r.q_m.matrix() * &vac;
        assert!((q0 - (vac.scale(c0) + phi.scale(sn))).norm() < 1e-12);
    }

    #[test]
    fn gate_error_small_and_shrinking() {
        let alpha = 0.5;
        let mut last = f64::INFINITY;
        for m in [2, 4, 6, 8, 10] {
            let s = FockSpace::new(synthesis_min_cutoff(alpha, m).max(29)).unwrap();
            let r = synthesize_hadamard(alpha, m, &s).unwrap();
            assert!(r.gate_error < last);
            // the discarded amplitude is sqrt(delta_M)
            assert!(r.gate_error <= 3.0 * r.delta_m.sqrt() + 1e-6, "M={m}: {} vs {}", r.gate_error, r.delta_m);
            last = r.gate_error;
        }
        assert!(last < 1e-3);
    }
}
