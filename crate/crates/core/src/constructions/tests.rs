use std::collections::BTreeSet;

use crate::dastruct::{
    add, compose, find_isomorphism, identity_morphism, reduce, verify_homomorphism,
    verify_homotopy_equivalence, verify_structure, zero_morphism, Bounds, IsoResult,
};
use crate::grading::{epsilon, eta, GradingVec};

use super::*;

fn bounds() -> Bounds {
    Bounds::default()
}

#[test]
fn gamma_has_four_terms_generically_and_three_at_the_boundary() {
    let a = build_ks_algebra(4).unwrap();
    assert_eq!(gamma_terms(&a, 2).len(), 4);
    assert_eq!(gamma_terms(&a, 3).len(), 3);
    let a2 = build_ks_algebra(2).unwrap();
    assert_eq!(gamma_terms(&a2, 1).len(), 3);
}

#[test]
fn crossing_generator_counts() {
    for m in 2..=5usize {
        let a = build_ks_algebra(m).unwrap();
        for i in 1..m {
            let r = build_r(&a, i, Sign::Positive).unwrap();
            let expect = if i < m - 1 { m + 4 } else { m + 3 };
            assert_eq!(r.generators.len(), expect, "m={m} i={i}");
            let algs = build_osz_algebras(m).unwrap();
            let p = build_crossing(&algs, m, i, Sign::Positive).unwrap();
            let expect = if i < m - 1 { m + 2 } else { m + 1 };
            assert_eq!(p.generators.len(), expect, "m={m} i={i}");
        }
    }
}

#[test]
fn crossing_gradings_collapse_as_expected() {
    let m = 4;
    let i = 2;
    let algs = build_osz_algebras(m).unwrap();
    for (sign, expect) in [
        (Sign::Positive, [(0, 0), (1, 1), (1, 0), (1, 1)]),
        (Sign::Negative, [(0, 0), (-1, 0), (-1, -1), (-1, -1)]),
    ] {
        let p = build_crossing(&algs, m, i, sign).unwrap();
        let names = [
            format!("S{}", i - 1),
            format!("_{i}W{}", i - 1),
            format!("_{i}E{}", i + 1),
            format!("_{i}N{i}"),
        ];
        for (name, (hom, eps)) in names.iter().zip(expect) {
            let g = &p.generators[p.gen_id(name).unwrap()];
            assert_eq!(g.hom_degree, hom, "{name}");
            assert_eq!(epsilon(m, &g.grading).unwrap(), eps, "{name}");
        }
        // the Alexander image plus the recorded shift lands on quarter
        // values at the four corner generators
        let shift = p.alexander_shift.clone().unwrap();
        let w = &p.generators[p.gen_id(&names[1]).unwrap()];
        let alex = eta(m, &w.grading).unwrap().add(&shift).unwrap();
        let mut expect_w = vec![0i64; m];
        match sign {
            Sign::Positive => {
                expect_w[i - 1] = 1;
                expect_w[i] = -1;
            }
            Sign::Negative => {
                expect_w[i - 1] = -1;
                expect_w[i] = 1;
            }
        }
        assert_eq!(alex, GradingVec::from_scaled(expect_w));
    }
}

#[test]
fn reduced_model_satisfies_structure_equation() {
    for m in 2..=4usize {
        let algs = build_osz_algebras(m).unwrap();
        for i in 1..m {
            for sign in [Sign::Positive, Sign::Negative] {
                let z = build_reduced_model(&algs, m, i, sign).unwrap();
                let rep = verify_structure(&z, &bounds());
                assert!(rep.passed(), "m={m} i={i} {sign:?}: {:?}", rep.failure);
            }
        }
    }
}

#[test]
fn lemma_witnesses_certify_the_reduction() {
    for m in 2..=4usize {
        let algs = build_osz_algebras(m).unwrap();
        for i in 1..m {
            for sign in [Sign::Positive, Sign::Negative] {
                let w = lemma_witnesses(&algs, m, i, sign).unwrap();
                // differential-level certificate with one homotopy
                let z0 = zero_morphism(&w.model, &w.model, 1).unwrap();
                let rep = verify_homotopy_equivalence(&w.f, &w.g, &z0, &w.t).unwrap();
                assert!(rep.passed(), "m={m} i={i} {sign:?}: {:?}", rep.checks);
                // g∘f is the identity on the nose
                let gf = compose(&w.g, &w.f).unwrap();
                assert!(gf.table_eq(&identity_morphism(&w.model)), "m={m} i={i} {sign:?}");
            }
        }
    }
}

#[test]
fn machine_reduction_matches_the_reduced_model() {
    for m in 2..=4usize {
        let algs = build_osz_algebras(m).unwrap();
        for i in 1..m {
            for sign in [Sign::Positive, Sign::Negative] {
                let w = lemma_witnesses(&algs, m, i, sign).unwrap();
                let red = reduce(&w.rest, &bounds()).unwrap();
                assert_eq!(red.steps.len(), 1, "one cancellable arrow");
                let iso = find_isomorphism(&red.reduced, &w.model, 100_000);
                assert!(matches!(iso, IsoResult::Found(_)), "m={m} i={i} {sign:?}: {iso:?}");
                // returned witnesses certify the equivalence
                let z0 = zero_morphism(&red.reduced, &red.reduced, 1).unwrap();
                let rep = verify_homotopy_equivalence(&red.f, &red.g, &z0, &red.t).unwrap();
                assert!(rep.passed(), "m={m} i={i} {sign:?}: {:?}", rep.checks);
                // generic transfer counts: three one-input arrows (four
                // instances) and six two-input arrows (eight instances)
                if i < m - 1 {
                    let step = &red.steps[0];
                    let d2: BTreeSet<_> = step
                        .transferred
                        .iter()
                        .filter(|(j, _, _)| *j == 2)
                        .map(|(_, s, t)| (s.clone(), t.clone()))
                        .collect();
                    let d3: BTreeSet<_> = step
                        .transferred
                        .iter()
                        .filter(|(j, _, _)| *j == 3)
                        .map(|(_, s, t)| (s.clone(), t.clone()))
                        .collect();
                    assert_eq!(d2.len(), 3, "m={m} i={i} {sign:?}");
                    assert_eq!(d3.len(), 6, "m={m} i={i} {sign:?}");
                }
            }
        }
    }
}

#[test]
fn theorem_witnesses_are_mutually_inverse_isomorphisms() {
    for m in 2..=4usize {
        let algs = build_osz_algebras(m).unwrap();
        for i in 1..m {
            for sign in [Sign::Positive, Sign::Negative] {
                let tw = build_theorem_witnesses(&algs, m, i, sign).unwrap();
                let fwd = add(&tw.iota, &tw.h).unwrap();
                let bwd = add(&tw.iota_prime, &tw.h_prime).unwrap();
                let rep = verify_homomorphism(&fwd, &bounds()).unwrap();
                assert!(rep.passed(), "m={m} i={i} {sign:?} fwd: {:?}", rep.failure);
                let rep = verify_homomorphism(&bwd, &bounds()).unwrap();
                assert!(rep.passed(), "m={m} i={i} {sign:?} bwd: {:?}", rep.failure);
                // mutual inverses
                let back = compose(&bwd, &fwd).unwrap();
                assert!(back.table_eq(&identity_morphism(&tw.model)), "m={m} i={i} {sign:?}");
                let fore = compose(&fwd, &bwd).unwrap();
                assert!(fore.table_eq(&identity_morphism(&tw.induced)), "m={m} i={i} {sign:?}");
                // the four cancellation identities hold exactly
                let hp_iota = compose(&tw.h_prime, &tw.iota).unwrap();
                let iotap_h = compose(&tw.iota_prime, &tw.h).unwrap();
                assert!(hp_iota.table_eq(&iotap_h), "m={m} i={i} {sign:?}");
                let h_iotap = compose(&tw.h, &tw.iota_prime).unwrap();
                let iota_hp = compose(&tw.iota, &tw.h_prime).unwrap();
                assert!(h_iotap.table_eq(&iota_hp), "m={m} i={i} {sign:?}");
                assert!(compose(&tw.h_prime, &tw.h).unwrap().is_zero());
                assert!(compose(&tw.h, &tw.h_prime).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn bad_witness_fails_the_homomorphism_check() {
    // dropping the correction term from the forward map breaks one of the
    // one-input relations
    let m = 4;
    let algs = build_osz_algebras(m).unwrap();
    let tw = build_theorem_witnesses(&algs, m, 2, Sign::Positive).unwrap();
    let rep = verify_homomorphism(&tw.iota, &bounds()).unwrap();
    assert!(!rep.passed());
}

#[test]
fn constructors_reject_degenerate_input() {
    assert!(build_ks_algebra(1).is_err());
    assert!(build_osz_algebras(0).is_err());
    let a = build_ks_algebra(3).unwrap();
    assert!(build_r(&a, 0, Sign::Positive).is_err());
    assert!(build_r(&a, 3, Sign::Positive).is_err());
    let algs = build_osz_algebras(3).unwrap();
    assert!(build_crossing(&algs, 3, 0, Sign::Positive).is_err());
    assert!(build_crossing(&algs, 3, 3, Sign::Positive).is_err());
}

#[test]
fn correction_maps_have_no_zero_input_component() {
    let m = 4;
    let algs = build_osz_algebras(m).unwrap();
    for sign in [Sign::Positive, Sign::Negative] {
        let tw = build_theorem_witnesses(&algs, m, 2, sign).unwrap();
        assert!(tw.h.arrows.iter().all(|a| a.inputs.len() == 1));
        assert!(tw.h_prime.arrows.iter().all(|a| a.inputs.len() == 1));
    }
}

#[test]
fn inclusion_extra_term_sits_on_the_loop_generator() {
    let m = 4;
    let algs = build_osz_algebras(m).unwrap();
    // positive: the inclusion has exactly one extra entry; negative: the
    // projection does
    let w = lemma_witnesses(&algs, m, 2, Sign::Positive).unwrap();
    assert_eq!(w.f.arrows.len(), w.model.generators.len() + 1);
    assert_eq!(w.g.arrows.len(), w.model.generators.len());
    let w = lemma_witnesses(&algs, m, 2, Sign::Negative).unwrap();
    assert_eq!(w.f.arrows.len(), w.model.generators.len());
    assert_eq!(w.g.arrows.len(), w.model.generators.len() + 1);
}
