use rayon::prelude::*;

use super::output::OutputRecord;
use super::{CharfuncArgs, Common, EntropyArgs, GenerateArgs, GramArgs, PhotonArgs, SynthArgs};
use crate::error::{Error, Result};
use crate::fock::{
    characteristic_function_closed, characteristic_function_grid, closed_form_photon_number, default_cutoff,
    mean_photon_number, partial_trace, quasi_bell_coherent, synthesis_min_cutoff, synthesize_hadamard, CharGrid,
    FockSpace, Subsystem,
};
use crate::gates::generate_quasi_bell;
use crate::twostate::{
    concurrence, general_state, gram_matrix, quasi_bell_state, reduced_density, BellIndex, GeneralWeights, OverlapPair,
};

fn space_for(alpha: f64, min_levels: usize, common: &Common) -> Result<FockSpace> {
    let n = common.nmax.unwrap_or_else(|| default_cutoff(alpha).max(min_levels));
    FockSpace::with_tolerance(n, common.tol)
}

fn kappa_of(alpha: f64) -> f64 {
    (-2.0 * alpha * alpha).exp()
}

pub fn cmd_entropy(args: &EntropyArgs, common: &Common) -> Result<Vec<OutputRecord>> {
    let index = BellIndex::from_number(args.index)?;
    let weights = args.beta.map(GeneralWeights::new).transpose()?;
    if args.fock && weights.is_some() {
        return Err(Error::Domain("--beta is only supported on the abstract path".into()));
    }
    let (points, from_alpha) = match (&args.kappa, &args.alpha) {
        (Some(k), _) => (k.values(), false),
        (None, Some(a)) => (a.values(), true),
        (None, None) => return Err(Error::Domain("one of --kappa or --alpha is required".into())),
    };
    points
        .par_iter()
        .map(|&p| {
            let (kappa, alpha) = if from_alpha { (kappa_of(p), Some(p)) } else { (p, None) };
            let (rho, path) = if args.fock {
                let alpha = p;
                let space = space_for(alpha, 0, common)?;
                let state = quasi_bell_coherent(index, alpha, &space)?;
                (partial_trace(&state, Subsystem::A)?, "fock")
            } else {
                let pair = OverlapPair::new(kappa)?;
                let state = match weights {
                    Some(w) => general_state(pair, w, index)?,
                    None => quasi_bell_state(pair, index),
                };
                debug_assert!(
                    (concurrence(&state) - schmidt_concurrence(&reduced_density(&state).eigenvalues())).abs() < 1e-8
                );
                (reduced_density(&state), "abstract")
            };
            let ev = rho.eigenvalues();
            Ok(OutputRecord::new()
                .with("kappa", kappa)
                .with("alpha", alpha)
                .with("index", index.number())
                .with("beta", args.beta)
                .with("path", path)
                .with("entropy", rho.entropy())
                .with("lambda1", ev[0])
                .with("lambda2", ev[1])
                .with("concurrence", schmidt_concurrence(&ev)))
        })
        .collect()
}

/// `2 sqrt(l1 l2)` from the two largest Schmidt weights.
fn schmidt_concurrence(ev: &[f64]) -> f64 {
    2.0 * (ev[0].max(0.0) * ev[1].max(0.0)).sqrt()
}

pub fn cmd_photon(args: &PhotonArgs, common: &Common) -> Result<Vec<OutputRecord>> {
    let index = BellIndex::from_number(args.index)?;
    args.alpha
        .values()
        .par_iter()
        .map(|&alpha| {
            let closed = closed_form_photon_number(index, alpha)?;
            let space = space_for(alpha, 0, common)?;
            let numeric = mean_photon_number(index, alpha, &space)?;
            Ok(OutputRecord::new()
                .with("alpha", alpha)
                .with("kappa", kappa_of(alpha))
                .with("index", index.number())
                .with("nmax", space.n_max())
                .with("closed_form", closed)
                .with("numeric", numeric)
                .with("difference", numeric - closed))
        })
        .collect()
}

pub fn cmd_charfunc(args: &CharfuncArgs, common: &Common) -> Result<Vec<OutputRecord>> {
    let index = BellIndex::from_number(args.index)?;
    let grid = CharGrid::new(args.extent, args.points)?;
    // reject degenerate inputs before touching the Fock space
    characteristic_function_closed(index, args.alpha, Default::default(), Default::default())?;
    let space = space_for(args.alpha, 0, common)?;
    let state = quasi_bell_coherent(index, args.alpha, &space)?;
    let pts = grid.complex_points();
    let numeric = characteristic_function_grid(&state, &pts, &pts)?;
    let mut rows = Vec::with_capacity(pts.len() * pts.len());
    for (xi, row) in pts.iter().zip(&numeric) {
        for (eta, c) in pts.iter().zip(row) {
            let closed = characteristic_function_closed(index, args.alpha, *xi, *eta)?;
            rows.push(
                OutputRecord::new()
                    .with("xi_re", xi.re)
                    .with("xi_im", xi.im)
                    .with("eta_re", eta.re)
                    .with("eta_im", eta.im)
                    .with("c_re", c.re)
                    .with("c_im", c.im)
                    .with("abs_diff", (c - closed).norm()),
            );
        }
    }
    Ok(rows)
}

pub fn cmd_synth(args: &SynthArgs, common: &Common) -> Result<Vec<OutputRecord>> {
    let rows: Vec<OutputRecord> = args
        .m_cut
        .values()
        .par_iter()
        .map(|&m| {
            let space = space_for(args.alpha, synthesis_min_cutoff(args.alpha, m), common)?;
            let r = synthesize_hadamard(args.alpha, m, &space)?;
            Ok(OutputRecord::new()
                .with("alpha", args.alpha)
                .with("m_cut", m)
                .with("nmax", space.n_max())
                .with("delta_m", r.delta_m)
                .with("gate_error", r.gate_error)
                .with("warning", r.convergence_warning))
        })
        .collect::<Result<_>>()?;
    for r in &rows {
        if r.real("warning") == Some(1.0) {
            eprintln!(
                "warning: gate error {} exceeds {} at M = {}; increase the cutoff",
                super::format_real(r.real("gate_error").unwrap_or(f64::NAN)),
                crate::fock::CONVERGENCE_WARNING_THRESHOLD,
                r.real("m_cut").unwrap_or(f64::NAN)
            );
        }
    }
    Ok(rows)
}

pub fn cmd_generate(args: &GenerateArgs, _common: &Common) -> Result<Vec<OutputRecord>> {
    args.kappa
        .values()
        .par_iter()
        .map(|&kappa| {
            let g = generate_quasi_bell(OverlapPair::new(kappa)?);
            let a = |i: usize, j: usize| g.state.amp(i, j);
            Ok(OutputRecord::new()
                .with("kappa", kappa)
                .with("ee_re", a(0, 0).re)
                .with("ee_im", a(0, 0).im)
                .with("eo_re", a(0, 1).re)
                .with("eo_im", a(0, 1).im)
                .with("oe_re", a(1, 0).re)
                .with("oe_im", a(1, 0).im)
                .with("oo_re", a(1, 1).re)
                .with("oo_im", a(1, 1).im)
                .with("fidelity", g.fidelity_to_psi3)
                .with("fidelity_sq", g.fidelity_to_psi3 * g.fidelity_to_psi3)
                .with("entropy", reduced_density(&g.state).entropy()))
        })
        .collect()
}

pub fn cmd_gram(args: &GramArgs, common: &Common) -> Result<Vec<OutputRecord>> {
    let (points, from_alpha) = match (&args.kappa, &args.alpha) {
        (Some(k), _) => (k.values(), false),
        (None, Some(a)) => (a.values(), true),
        (None, None) => return Err(Error::Domain("one of --kappa or --alpha is required".into())),
    };
    let blocks: Vec<Vec<OutputRecord>> = points
        .par_iter()
        .map(|&p| {
            let (kappa, alpha) = if from_alpha { (kappa_of(p), Some(p)) } else { (p, None) };
            let closed = gram_matrix(OverlapPair::new(kappa)?);
            let mut inner = [[Default::default(); 4]; 4];
            if let Some(alpha) = alpha {
                let space = space_for(alpha, 0, common)?;
                let states = BellIndex::ALL
                    .iter()
                    .map(|&i| quasi_bell_coherent(i, alpha, &space))
                    .collect::<Result<Vec<_>>>()?;
                for i in 0..4 {
                    for j in 0..4 {
                        inner[i][j] = states[i].inner(&states[j]);
                    }
                }
            } else {
                let pair = OverlapPair::new(kappa)?;
                let states: Vec<_> = BellIndex::ALL.iter().map(|&i| quasi_bell_state(pair, i)).collect();
                for i in 0..4 {
                    for j in 0..4 {
                        inner[i][j] = states[i].inner(&states[j]);
                    }
                }
            }
            let mut rows = Vec::with_capacity(16);
            for i in 0..4 {
                for j in 0..4 {
                    let ip: crate::linalg::C64 = inner[i][j];
                    rows.push(
                        OutputRecord::new()
                            .with("kappa", kappa)
                            .with("alpha", alpha)
                            .with("i", i + 1)
                            .with("j", j + 1)
                            .with("closed_form", closed[i][j])
                            .with("inner_re", ip.re)
                            .with("inner_im", ip.im)
                            .with("abs_diff", (ip - closed[i][j]).norm()),
                    );
                }
            }
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    Ok(blocks.into_iter().flatten().collect())
}
