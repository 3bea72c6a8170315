use num_complex::Complex64 as C64;
use proptest::prelude::*;

use quasibell::gates::{controlled_not, walsh_hadamard};
use quasibell::linalg::{max_abs_diff, CVector};
use quasibell::twostate::{
    concurrence, entropy_from_concurrence, entropy_of_entanglement, general_state, quasi_bell_state, reduced_density,
    reduced_eigenvalues, BellIndex, GeneralWeights, OverlapPair, TwoQubitState,
};

fn index() -> impl Strategy<Value = BellIndex> {
    prop::sample::select(BellIndex::ALL.to_vec())
}

fn state() -> impl Strategy<Value = TwoQubitState> {
    prop::array::uniform8(-1.0f64..1.0)
        .prop_filter("nonzero", |a| a.iter().map(|x| x * x).sum::<f64>() > 1e-6)
        .prop_map(|a| {
            let v = CVector::from_fn(4, |i, _| C64::new(a[2 * i], a[2 * i + 1]));
            TwoQubitState::normalized(v).unwrap()
        })
}

proptest! {
    #[test]
    fn entropy_matches_concurrence_route(s in state()) {
        let direct = entropy_of_entanglement(&s);
        let via_c = entropy_from_concurrence(concurrence(&s)).unwrap();
        prop_assert!((direct - via_c).abs() < 1e-10);
    }

    #[test]
    fn reduced_states_pair_up(k in 0.0f64..0.999) {
        let p = OverlapPair::new(k).unwrap();
        let r = |i| reduced_density(&quasi_bell_state(p, i)).entries().clone();
        prop_assert!(max_abs_diff(&r(BellIndex::One), &r(BellIndex::Three)) < 1e-12);
        prop_assert!(max_abs_diff(&r(BellIndex::Two), &r(BellIndex::Four)) < 1e-12);
    }

    #[test]
    fn closed_form_eigenvalues_match_decomposition(k in 0.0f64..0.999, idx in index()) {
        let p = OverlapPair::new(k).unwrap();
        let (l1, l2) = reduced_eigenvalues(p, idx);
        let ev = reduced_density(&quasi_bell_state(p, idx)).eigenvalues();
        prop_assert!((ev[0] - l1).abs() < 1e-12 && (ev[1] - l2).abs() < 1e-12);
        prop_assert!(l1 >= l2 && (l1 + l2 - 1.0).abs() < 1e-15);
    }

    #[test]
    fn balanced_weights_reduce_to_quasi_bell(k in 0.0f64..0.999, idx in index()) {
        let p = OverlapPair::new(k).unwrap();
        let w = GeneralWeights::new(std::f64::consts::FRAC_1_SQRT_2).unwrap();
        let g = general_state(p, w, idx).unwrap();
        prop_assert!((g.overlap_modulus(&quasi_bell_state(p, idx)) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn general_states_give_valid_reduced_densities(k in 0.0f64..0.999, beta in 0.0f64..=1.0, idx in index()) {
        let p = OverlapPair::new(k).unwrap();
        let w = GeneralWeights::new(beta).unwrap();
        let g = general_state(p, w, idx).unwrap();
        let rho = reduced_density(&g);
        prop_assert!((rho.entries().trace().re - 1.0).abs() < 1e-12);
        prop_assert!(w.norm_squared(k, idx) > 0.0);
    }

    #[test]
    fn wh_rotations_compose(a in -3.0f64..3.0, b in -3.0f64..3.0) {
        let lhs = walsh_hadamard(a).then(&walsh_hadamard(b));
        prop_assert!(max_abs_diff(lhs.matrix(), walsh_hadamard(a + b).matrix()) < 1e-12);
    }

    #[test]
    fn cn_is_an_involution(s in state()) {
        let cn = controlled_not();
        let back = cn.apply(&cn.apply(s.amplitudes()));
        prop_assert!((back - s.amplitudes()).norm() < 1e-12);
    }
}

#[test]
fn gram_pattern_on_the_grid() {
    for step in 0..20 {
        let k = step as f64 * 0.05;
        let p = OverlapPair::new(k).unwrap();
        let s: Vec<_> = BellIndex::ALL.iter().map(|&i| quasi_bell_state(p, i)).collect();
        let d = 2.0 * k / (1.0 + k * k);
        for i in 0..4 {
            for j in 0..4 {
                let expected = if i == j {
                    1.0
                } else if (i, j) == (0, 2) || (i, j) == (2, 0) {
                    d
                } else {
                    0.0
                };
                assert!((s[i].inner(&s[j]) - expected).norm() < 1e-12, "kappa={k} ({i},{j})");
            }
        }
    }
}
