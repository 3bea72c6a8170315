use num_complex::Complex64 as C64;

use quasibell::fock::{
    characteristic_function_grid, gaussian_characteristic_function, partial_trace, quasi_bell_coherent, CharGrid,
    FockSpace, Subsystem,
};
use quasibell::twostate::{entropy_of_entanglement, quasi_bell_state, BellIndex, OverlapPair};

#[test]
fn fock_entropy_agrees_with_abstract_layer() {
    for alpha in [0.3, 0.58871, 1.0, 2.0] {
        let space = FockSpace::for_amplitude(alpha).unwrap();
        let pair = OverlapPair::from_coherent_amplitude(alpha).unwrap();
        for idx in BellIndex::ALL {
            let v = quasi_bell_coherent(idx, alpha, &space).unwrap();
            for keep in [Subsystem::A, Subsystem::B] {
                let rho = partial_trace(&v, keep).unwrap();
                let expected = entropy_of_entanglement(&quasi_bell_state(pair, idx));
                assert!((rho.entropy() - expected).abs() < 1e-8, "alpha={alpha} index={idx}");
                assert!((rho.entries().trace().re - 1.0).abs() < 1e-10);
                assert!(rho.eigenvalues().iter().all(|&l| l >= 0.0));
            }
        }
    }
}

#[test]
fn reduced_states_of_both_modes_share_the_spectrum() {
    let space = FockSpace::for_amplitude(0.8).unwrap();
    let v = quasi_bell_coherent(BellIndex::One, 0.8, &space).unwrap();
    let a = partial_trace(&v, Subsystem::A).unwrap().eigenvalues();
    let b = partial_trace(&v, Subsystem::B).unwrap().eigenvalues();
    for (x, y) in a.iter().zip(&b) {
        assert!((x - y).abs() < 1e-12);
    }
}

#[test]
fn index_four_is_not_gaussian() {
    let alpha = 1.0;
    let space = FockSpace::for_amplitude(alpha).unwrap();
    let v = quasi_bell_coherent(BellIndex::Four, alpha, &space).unwrap();
    let fit = gaussian_characteristic_function(&v);
    let pts = CharGrid::new(0.5, 5).unwrap().complex_points();
    let numeric = characteristic_function_grid(&v, &pts, &pts).unwrap();
    let mut worst: f64 = 0.0;
    for (xi, row) in pts.iter().zip(&numeric) {
        for (eta, c) in pts.iter().zip(row) {
            worst = worst.max((c - fit.eval(*xi, *eta)).norm());
        }
    }
    assert!(worst > 1e-3, "largest deviation from the moment-matched Gaussian: {worst:e}");
    // the fit reproduces the state at the origin and to second order nearby
    let tiny = C64::new(1e-3, 0.0);
    let near = characteristic_function_grid(&v, &[tiny], &[C64::new(0.0, 0.0)]).unwrap()[0][0];
    assert!((near - fit.eval(tiny, C64::new(0.0, 0.0))).norm() < 1e-9);
}

#[test]
fn oversized_arguments_are_rejected_on_a_thin_cutoff() {
    // a cutoff that barely holds the state leaves visible weight on the top level
    let space = FockSpace::with_tolerance(12, 1e-3).unwrap();
    let v = quasi_bell_coherent(BellIndex::Three, 1.5, &space).unwrap();
    let big = C64::new(3.0, 0.0);
    assert!(characteristic_function_grid(&v, &[big], &[big]).is_err());
}
