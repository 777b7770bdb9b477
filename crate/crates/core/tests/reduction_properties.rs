//! Properties of the standard-form reduction: recovery of parameters after
//! random local symplectics, invariant preservation, idempotence, and
//! symplecticity of the returned transform.

#![allow(clippy::excessive_precision)] // frozen reference values keep all oracle digits

mod common;

use common::{assert_signed_permutation, tmsv_matrix};
use gaussian_bell::{
    apply_local_symplectic, random_local_symplectic, reduce, sample_physical_states,
    symplectic_form, CovarianceMatrix, StandardForm,
};
use proptest::prelude::*;

fn assert_forms_match(a: &StandardForm, b: &StandardForm, tol: f64, context: &str) {
    for (name, x, y) in [
        ("n", a.n(), b.n()),
        ("m", a.m(), b.m()),
        ("c1", a.c1(), b.c1()),
        ("c2", a.c2(), b.c2()),
    ] {
        assert!(
            (x - y).abs() <= tol * (1.0 + x.abs()),
            "{context}: {name} mismatch {x} vs {y}"
        );
    }
}

#[test]
fn recovers_the_squeezed_vacuum_parameters() {
    let v = CovarianceMatrix::new(tmsv_matrix(0.5)).unwrap();
    let expected = StandardForm::new(
        0.77154031740762189,
        0.77154031740762189,
        0.58760059682190073,
        -0.58760059682190073,
    )
    .unwrap();
    for seed in 0..100u64 {
        let t = random_local_symplectic(seed, 1.0);
        let w = apply_local_symplectic(&v, &t);
        let (form, _) = reduce(&w);
        assert_forms_match(&form, &expected, 1e-8, &format!("seed {seed}"));
    }
}

#[test]
fn reduction_parameters_are_invariant_under_conjugation() {
    let states = sample_physical_states(1_000, 17, 3.0).unwrap();
    for (idx, sf) in states.iter().enumerate() {
        let v = sf.to_covariance().unwrap();
        let t = random_local_symplectic(idx as u64, 1.0);
        let w = apply_local_symplectic(&v, &t);
        let (form, _) = reduce(&w);
        let canonical = sf.canonicalized();
        assert_forms_match(&form, &canonical, 1e-8, &format!("state {idx}"));

        let before = v.local_invariants();
        let after = w.local_invariants();
        for (a, b) in [
            (before.det_idler, after.det_idler),
            (before.det_signal, after.det_signal),
            (before.det_cross, after.det_cross),
            (before.det_total, after.det_total),
        ] {
            assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()), "state {idx}: {a} vs {b}");
        }
    }
}

#[test]
fn reduction_is_idempotent() {
    let states = sample_physical_states(300, 18, 3.0).unwrap();
    for (idx, sf) in states.iter().enumerate() {
        let canonical = sf.canonicalized();
        let (form, t) = reduce(&canonical.to_covariance().unwrap());
        assert_forms_match(&form, &canonical, 1e-10, &format!("state {idx}"));
        assert_signed_permutation(&t.embed(), 1e-9);
    }
}

#[test]
fn returned_transform_is_symplectic_and_reduces_the_matrix() {
    let states = sample_physical_states(300, 19, 3.0).unwrap();
    let omega = symplectic_form();
    for (idx, sf) in states.iter().enumerate() {
        let v = sf.to_covariance().unwrap();
        let t = random_local_symplectic(2000 + idx as u64, 1.0);
        let w = apply_local_symplectic(&v, &t);
        let (form, s) = reduce(&w);

        // S Omega S^T = Omega
        let se = s.embed();
        let residual = (se * omega * se.transpose() - omega).abs().max();
        assert!(residual < 1e-10, "state {idx}: symplectic residual {residual}");

        // S W S^T lands on the standard-form matrix
        let transformed = apply_local_symplectic(&w, &s);
        let diff = (transformed.matrix() - form.to_matrix()).abs().max();
        assert!(diff < 1e-9, "state {idx}: reduction residual {diff}");
    }
}

#[test]
fn canonical_form_is_reachable_by_quarter_and_half_rotations() {
    // the sign canonicalization must be realizable by actual local
    // symplectics: swap via simultaneous quarter rotations, flips via a half
    // rotation of one mode
    let sf = StandardForm::new(1.1, 0.9, 0.2, -0.6).unwrap();
    let v = sf.to_covariance().unwrap();
    let (form, _) = reduce(&v);
    let canonical = sf.canonicalized();
    assert_forms_match(&form, &canonical, 1e-12, "quarter/half rotation case");
    assert!(form.is_canonical());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn conjugation_never_moves_the_canonical_form(
        index in 0u64..512,
        seed in 0u64..1u64 << 40,
        squeeze in 0.0f64..1.2,
    ) {
        let sampler = gaussian_bell::PhysicalStateSampler::new(23, 3.0).unwrap();
        let (sf, _) = sampler.state_at(index).unwrap();
        let v = sf.to_covariance().unwrap();
        let t = random_local_symplectic(seed, squeeze);
        let w = apply_local_symplectic(&v, &t);
        let (form, _) = reduce(&w);
        let canonical = sf.canonicalized();
        for (x, y) in [
            (form.n(), canonical.n()),
            (form.m(), canonical.m()),
            (form.c1(), canonical.c1()),
            (form.c2(), canonical.c2()),
        ] {
            prop_assert!((x - y).abs() <= 1e-7 * (1.0 + x.abs()), "{} vs {}", x, y);
        }
    }
}
