//! Randomized invariants of the concurrence engine and measures.

use gme_core::bipartition::{canonical_cuts, Bipartition};
use gme_core::concurrence::{
    concurrence, cut_dimensions, dense_oracle_purity, full_spectrum, full_spectrum_with,
    max_concurrence, reduced_purity,
};
use gme_core::exec::Execution;
use gme_core::fixtures;
use gme_core::measures::{self, classify, ZERO_TOL};
use gme_core::verify::{
    haar_state_with, random_biseparable_with, random_unitary_with, scramble_locally, trial_rng,
};
use gme_core::PureState;

const DIM_PROFILES: &[&[usize]] = &[
    &[2, 2],
    &[3, 2],
    &[2, 2, 2],
    &[3, 2, 2],
    &[3, 3, 3],
    &[2, 2, 2, 2],
    &[3, 3, 2, 2],
    &[2, 2, 2, 2, 2],
    &[2, 3, 2, 2, 2],
    &[2, 2, 2, 2, 2, 2],
];

/// Every nonempty proper subset, canonical or not.
fn all_cuts(n: usize) -> Vec<Bipartition> {
    (1u32..(1 << n) - 1)
        .map(|mask| {
            let subset: Vec<usize> = (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            Bipartition::new(n, subset).unwrap()
        })
        .collect()
}

#[test]
fn local_unitaries_preserve_norm() {
    let mut rng = trial_rng(1, 0);
    for trial in 0..100 {
        let dims: &[usize] = [&[2, 2][..], &[3, 2, 2], &[3, 3, 3, 3]][trial % 3];
        let s = haar_state_with(dims, &mut rng).unwrap();
        let site = 1 + trial % dims.len();
        let u = random_unitary_with(dims[site - 1], &mut rng);
        let t = s.apply_local_unitary(site, &u).unwrap();
        assert!((t.norm() - 1.0).abs() <= 1e-12, "trial {trial}");
    }
}

#[test]
fn cut_symmetry() {
    for (p, dims) in DIM_PROFILES.iter().enumerate() {
        let mut rng = trial_rng(2, p as u64);
        for _ in 0..10 {
            let s = haar_state_with(dims, &mut rng).unwrap();
            for cut in all_cuts(dims.len()) {
                let here = concurrence(&s, &cut).unwrap();
                let there = concurrence(&s, &cut.flipped()).unwrap();
                assert!((here - there).abs() <= 1e-12, "{dims:?} {cut}");
            }
        }
    }
}

#[test]
fn concurrences_are_local_unitary_invariant() {
    let profiles: &[&[usize]] = &[&[2, 2, 2], &[3, 2, 2], &[3, 3, 2], &[3, 3, 3]];
    for trial in 0..100u64 {
        let dims = profiles[trial as usize % profiles.len()];
        let mut rng = trial_rng(3, trial);
        let s = haar_state_with(dims, &mut rng).unwrap();
        let t = scramble_locally(&s, &mut rng).unwrap();
        let before = full_spectrum(&s).unwrap();
        let after = full_spectrum(&t).unwrap();
        for ((cut, a), (_, b)) in before.entries().iter().zip(after.entries()) {
            assert!((a - b).abs() <= 1e-10, "trial {trial} cut {cut}");
        }
    }
}

#[test]
fn haar_local_unitary_on_ghz4() {
    let ghz = PureState::ghz(4).unwrap();
    let mut rng = trial_rng(4, 0);
    let moved = scramble_locally(&ghz, &mut rng).unwrap();
    assert!((moved.norm() - 1.0).abs() <= 1e-12);
    for cut in canonical_cuts(4).unwrap() {
        let c = concurrence(&moved, &cut).unwrap();
        // Dense route for the reference value.
        let oracle = (2.0 * (1.0 - dense_oracle_purity(&ghz, &cut).unwrap())).sqrt();
        assert!((c - oracle).abs() <= 1e-10, "{cut}");
    }
}

#[test]
fn concurrence_bound() {
    for (p, dims) in DIM_PROFILES.iter().enumerate() {
        let mut rng = trial_rng(5, p as u64);
        for _ in 0..20 {
            let s = haar_state_with(dims, &mut rng).unwrap();
            let spectrum = full_spectrum(&s).unwrap();
            assert_eq!(spectrum.entries().len(), (1 << (dims.len() - 1)) - 1);
            for (cut, c) in spectrum.entries() {
                let (inside, outside) = cut_dimensions(dims, cut);
                let bound = max_concurrence(inside.min(outside));
                assert!(
                    *c >= 0.0 && *c <= bound + 1e-10,
                    "{dims:?} {cut}: {c} > {bound}"
                );
            }
        }
    }
}

#[test]
fn gram_path_matches_dense_oracle() {
    for (p, dims) in DIM_PROFILES.iter().enumerate() {
        let mut rng = trial_rng(6, p as u64);
        for _ in 0..10 {
            let s = haar_state_with(dims, &mut rng).unwrap();
            for cut in all_cuts(dims.len()) {
                let gram = reduced_purity(&s, &cut).unwrap();
                let dense = dense_oracle_purity(&s, &cut).unwrap();
                assert!((gram - dense).abs() <= 1e-12, "{dims:?} {cut}");
            }
        }
    }
    // Largest profile with total dimension 2^12.
    let s = haar_state_with(&[2; 12], &mut trial_rng(6, 99)).unwrap();
    for cut in canonical_cuts(12).unwrap().iter().step_by(37) {
        let gram = reduced_purity(&s, cut).unwrap();
        let dense = dense_oracle_purity(&s, cut).unwrap();
        assert!((gram - dense).abs() <= 1e-12, "{cut}");
    }
}

#[test]
fn serial_and_parallel_spectra_are_identical() {
    let s = haar_state_with(&[2, 3, 2, 2, 2, 2], &mut trial_rng(7, 0)).unwrap();
    assert_eq!(
        full_spectrum_with(&s, Execution::Serial).unwrap(),
        full_spectrum_with(&s, Execution::Parallel).unwrap()
    );
}

#[test]
fn psi_a_spectrum() {
    let spectrum = full_spectrum(&fixtures::psi_a().unwrap()).unwrap();
    let values: Vec<f64> = spectrum.values().collect();
    let expected = [
        3f64.sqrt() / 2.0,
        1.0,
        1.0,
        1.0,
        5f64.sqrt() / 2.0,
        5f64.sqrt() / 2.0,
        5f64.sqrt() / 2.0,
    ];
    for (got, want) in values.iter().zip(expected) {
        assert!((got - want).abs() <= 1e-12, "{values:?}");
    }
}

#[test]
fn volume_is_positive_only_without_zero_cuts() {
    let mut rng = trial_rng(8, 0);
    for trial in 0..200 {
        let dims: &[usize] = [&[2, 2, 2][..], &[2, 2, 2, 2], &[2, 2, 2, 2, 2]][trial % 3];
        let s = if trial % 2 == 0 {
            haar_state_with(dims, &mut rng).unwrap()
        } else {
            random_biseparable_with(dims, &mut rng).unwrap().0
        };
        let spectrum = full_spectrum(&s).unwrap();
        let v = measures::volume(&spectrum).unwrap().volume;
        let c = classify(&spectrum, ZERO_TOL);
        assert!(v >= 0.0);
        if v > ZERO_TOL {
            assert!(c.zero_cuts.is_empty(), "trial {trial}");
        } else {
            assert!(!c.zero_cuts.is_empty(), "trial {trial}");
        }
    }
}

#[test]
fn volume_matches_base_area_times_height() {
    let mut rng = trial_rng(9, 0);
    for n in 4..=7 {
        for _ in 0..10 {
            let s = haar_state_with(&vec![2; n], &mut rng).unwrap();
            let g = measures::volume(&full_spectrum(&s).unwrap()).unwrap();
            assert!((g.volume - g.base_area * g.h / 3.0).abs() <= 1e-12);
            assert!(g.a >= 0.0 && g.h >= 0.0 && g.base_area >= 0.0);
        }
    }
}

#[test]
fn permutation_invariance_of_triangle_measure() {
    let mut rng = trial_rng(10, 0);
    for _ in 0..50 {
        let s = haar_state_with(&[3, 2, 2], &mut rng).unwrap();
        let t = s.permute_subsystems(&[2, 3, 1]).unwrap();
        let f = |x: &PureState| measures::triangle_measure(&full_spectrum(x).unwrap()).unwrap();
        assert!((f(&s) - f(&t)).abs() <= 1e-10);
    }
}
