//! Acceptance suite: every top-level claim the library is built to verify,
//! run at the documented default bounds, one pass/fail line per criterion.
//! All checks are exact GF(2) computations; the bounded ones state their
//! bounds in the line.

use std::collections::BTreeSet;

use quiver_da::constructions::{
    build_crossing, build_ks_algebra, build_osz_algebras, build_r, build_theorem_witnesses,
    collapsed_crossing, identity_bimodule_ks, lemma_witnesses, sum_of_u, u_element, Sign,
};
use quiver_da::dastruct::{
    add, box_tensor_alg, box_tensor_da, compose, find_isomorphism, identity_morphism, reduce,
    restrict_scalars, induct_scalars, verify_homomorphism, verify_homotopy_equivalence,
    verify_structure, zero_morphism, Bounds, IsoResult,
};
use quiver_da::grading::{e_swap_hom, epsilon_hom, eta_hom, swap_hom, GradingVec};
use quiver_da::pathalg::{ideal_membership, ideal_span, kernel_of_hom_bounded, AlgebraElement};

struct Criteria {
    lines: Vec<(String, bool)>,
}

impl Criteria {
    fn record(&mut self, name: &str, passed: bool) {
        println!("{}: {name}", if passed { "PASS" } else { "FAIL" });
        self.lines.push((name.to_string(), passed));
    }
}

fn bounds() -> Bounds {
    Bounds::default()
}

/// Criterion 1: the bounded kernel of the quotient map equals the two-sided
/// ideal of the total central element, for m in 2..=5 at length bound 8,
/// including the corner decomposition and the squares.
fn criterion_1(c: &mut Criteria) {
    let maxlen = 8usize;
    let mut ok = true;
    for m in 2..=5usize {
        let algs = build_osz_algebras(m).unwrap();
        let cl = &algs.cl_bot;
        let total = sum_of_u(cl, m);
        // ideal inside the kernel
        for x in cl.basis(maxlen - 2) {
            let prod = AlgebraElement::from_path(cl, x)
                .multiply(&total)
                .unwrap();
            ok &= algs.phi.apply(&prod).unwrap().is_zero();
        }
        // kernel inside the ideal, degreewise to the full bound, with the
        // spanning bound doubled to absorb the loop-generator replacement
        let span = ideal_span(cl, &[total.clone()], 2 * maxlen);
        for v in kernel_of_hom_bounded(&algs.phi, maxlen) {
            ok &= span.contains(&v);
        }
        ok &= algs.phi.is_surjective_bounded(4, 4);
        // corner decomposition into m generators, both inclusions
        let e = |w: &str| {
            AlgebraElement::from_path(
                cl,
                quiver_da::pathalg::parse_path(&cl.quiver, w).unwrap(),
            )
        };
        let mut gens = vec![e("R1 L1")];
        for i in 1..=m - 2 {
            gens.push(
                e(&format!("L{i} R{i}"))
                    .plus(&e(&format!("R{} L{}", i + 1, i + 1)))
                    .unwrap(),
            );
        }
        gens.push(e(&format!("L{} R{}", m - 1, m - 1)).plus(&u_element(cl, m)).unwrap());
        let mut back = AlgebraElement::zero(cl);
        for g in &gens {
            ok &= ideal_membership(&[total.clone()], g, maxlen).unwrap();
            back = back.plus(g).unwrap();
        }
        ok &= back == total;
        ok &= ideal_membership(&gens, &total, maxlen).unwrap();
        for i in 1..=m {
            ok &= ideal_membership(&[total.clone()], &u_element(cl, i).pow(2).unwrap(), maxlen)
                .unwrap();
        }
    }
    c.record(
        "criterion 1: kernel of the quotient map is the central ideal (m = 2..5, maxlen 8)",
        ok,
    );
}

/// Criterion 2: structure equations for all eight bimodule families, m in
/// 2..=5, every valid index, both signs, at default bounds.
fn criterion_2(c: &mut Criteria) {
    let mut ok = true;
    for m in 2..=5usize {
        let algs = build_osz_algebras(m).unwrap();
        for i in 1..m {
            for sign in [Sign::Positive, Sign::Negative] {
                let r = build_r(&algs.a, i, sign).unwrap();
                ok &= verify_structure(&r, &bounds()).passed();
                let p = build_crossing(&algs, m, i, sign).unwrap();
                ok &= verify_structure(&p, &bounds()).passed();
                let rest = restrict_scalars(&algs.phi, &r).unwrap();
                ok &= verify_structure(&rest, &bounds()).passed();
                let ind =
                    induct_scalars(&algs.phi, &collapsed_crossing(&algs, m, i, sign).unwrap())
                        .unwrap();
                ok &= verify_structure(&ind, &bounds()).passed();
            }
        }
    }
    c.record(
        "criterion 2: structure equations for all eight families (m = 2..5, all i, both signs)",
        ok,
    );
}

/// Criterion 3: the explicit reduction data of both lemmas, plus agreement
/// of machine reduction with the reduced model including the transferred
/// arrow counts (3 one-input, 6 two-input) at generic indices.
fn criterion_3(c: &mut Criteria) {
    let mut ok = true;
    for m in 2..=5usize {
        let algs = build_osz_algebras(m).unwrap();
        for i in 1..m {
            for sign in [Sign::Positive, Sign::Negative] {
                let w = lemma_witnesses(&algs, m, i, sign).unwrap();
                let z0 = zero_morphism(&w.model, &w.model, 1).unwrap();
                ok &= verify_homotopy_equivalence(&w.f, &w.g, &z0, &w.t)
                    .unwrap()
                    .passed();
                ok &= compose(&w.g, &w.f)
                    .unwrap()
                    .table_eq(&identity_morphism(&w.model));
                let red = reduce(&w.rest, &bounds()).unwrap();
                ok &= matches!(
                    find_isomorphism(&red.reduced, &w.model, 500_000),
                    IsoResult::Found(_)
                );
                let zr = zero_morphism(&red.reduced, &red.reduced, 1).unwrap();
                ok &= verify_homotopy_equivalence(&red.f, &red.g, &zr, &red.t)
                    .unwrap()
                    .passed();
                if i < m - 1 {
                    let step = &red.steps[0];
                    let count = |arity: usize| {
                        step.transferred
                            .iter()
                            .filter(|(j, _, _)| *j == arity)
                            .map(|(_, s, t)| (s.clone(), t.clone()))
                            .collect::<BTreeSet<_>>()
                            .len()
                    };
                    ok &= count(2) == 3 && count(3) == 6;
                }
            }
        }
    }
    c.record(
        "criterion 3: reduction certificates and reduced-model agreement with 3+6 transfers",
        ok,
    );
}

/// Criterion 4: the two witness maps are homomorphisms, mutually inverse,
/// grading-preserving, and their corrections satisfy the four cancellation
/// identities, for m in 3..=5 and every i including the boundary.
fn criterion_4(c: &mut Criteria) {
    let mut ok = true;
    for m in 3..=5usize {
        let algs = build_osz_algebras(m).unwrap();
        for i in 1..m {
            for sign in [Sign::Positive, Sign::Negative] {
                let tw = build_theorem_witnesses(&algs, m, i, sign).unwrap();
                let fwd = add(&tw.iota, &tw.h).unwrap();
                let bwd = add(&tw.iota_prime, &tw.h_prime).unwrap();
                ok &= verify_homomorphism(&fwd, &bounds()).unwrap().passed();
                ok &= verify_homomorphism(&bwd, &bounds()).unwrap().passed();
                ok &= compose(&bwd, &fwd)
                    .unwrap()
                    .table_eq(&identity_morphism(&tw.model));
                ok &= compose(&fwd, &bwd)
                    .unwrap()
                    .table_eq(&identity_morphism(&tw.induced));
                ok &= compose(&tw.h_prime, &tw.iota)
                    .unwrap()
                    .table_eq(&compose(&tw.iota_prime, &tw.h).unwrap());
                ok &= compose(&tw.h, &tw.iota_prime)
                    .unwrap()
                    .table_eq(&compose(&tw.iota, &tw.h_prime).unwrap());
                ok &= compose(&tw.h_prime, &tw.h).unwrap().is_zero();
                ok &= compose(&tw.h, &tw.h_prime).unwrap().is_zero();
                // grading preservation is enforced by morphism validation;
                // double-check the matched generators agree in both degrees
                for a in &tw.iota.arrows {
                    let s = &tw.model.generators[a.source];
                    let t = &tw.induced.generators[a.target];
                    ok &= s.hom_degree == t.hom_degree && s.grading == t.grading;
                }
            }
        }
    }
    c.record(
        "criterion 4: witness maps are mutually inverse graded isomorphisms (m = 3..5, all i)",
        ok,
    );
}

/// Criterion 5: grading coherence — the collapse/swap squares on all basis
/// vectors, refined-grading preservation of every arrow of every built-in
/// bimodule, and the differential of the associated dg bimodule squaring to
/// zero while dropping degree by one.
fn criterion_5(c: &mut Criteria) {
    let mut ok = true;
    for m in 2..=5usize {
        for i in 1..m {
            let lhs = eta_hom(m).compose(&swap_hom(m, i)).unwrap();
            let rhs = e_swap_hom(m, i).compose(&eta_hom(m)).unwrap();
            for s in 0..2 * m {
                let v = GradingVec::scaled_basis(2 * m, s, 4);
                ok &= lhs.apply(&v).unwrap() == rhs.apply(&v).unwrap();
                ok &= epsilon_hom(m).apply(&swap_hom(m, i).apply(&v).unwrap()).unwrap()
                    == epsilon_hom(m).apply(&v).unwrap();
            }
        }
        // per-arrow grading preservation is a construction invariant for
        // every built-in table; instantiating them all exercises it
        let algs = build_osz_algebras(m).unwrap();
        for i in 1..m {
            for sign in [Sign::Positive, Sign::Negative] {
                ok &= build_crossing(&algs, m, i, sign).is_ok();
                let r = build_r(&algs.a, i, sign).unwrap();
                ok &= !r.arrows.is_empty();
                let dg = box_tensor_alg(&r).unwrap();
                let max = algs.a.finite_basis_max_len(8).unwrap();
                ok &= dg.d_squared_zero(max);
                ok &= dg.differential_drops_degree(max);
                ok &= dg.leibniz_right(max, max);
            }
        }
    }
    c.record(
        "criterion 5: grading coherence (collapse squares, arrow-wise preservation, d^2 = 0)",
        ok,
    );
}

/// Criterion 6: graded dimensions of the dg bimodule associated to the
/// positive zigzag-side crossing match the two-term module description
/// computed independently from the module bases, with homological degrees
/// negated relative to the complex convention.
fn criterion_6(c: &mut Criteria) {
    let mut ok = true;
    for m in 2..=5usize {
        let a = build_ks_algebra(m).unwrap();
        let max = a.finite_basis_max_len(8).unwrap();
        let basis = a.basis(max);
        for i in 1..m {
            let r = build_r(&a, i, Sign::Positive).unwrap();
            let dg = box_tensor_alg(&r).unwrap();
            let dims = dg.graded_dimensions(max);
            // independent table: the algebra itself in homological degree 0,
            // and pairs (ending at i) x (starting at i) in degree +1 with
            // added internal degrees
            let mut expect: std::collections::BTreeMap<(i64, GradingVec), usize> =
                std::collections::BTreeMap::new();
            for p in &basis {
                *expect
                    .entry((0, p.grading(&a.quiver)))
                    .or_default() += 1;
            }
            for p in basis.iter().filter(|p| p.end(&a.quiver) == i) {
                for q in basis.iter().filter(|q| q.start() == i) {
                    let g = p.grading(&a.quiver).add(&q.grading(&a.quiver)).unwrap();
                    *expect.entry((1, g)).or_default() += 1;
                }
            }
            ok &= dims == expect;
        }
    }
    c.record(
        "criterion 6: dg-bimodule graded dimensions match the module description (hom degrees negated)",
        ok,
    );
}

/// Criterion 7 (property-based extensions, not named claims): opposite
/// crossings cancel to the identity after reduction, and the braid relation
/// holds up to isomorphism after reduction, in both flavors. The
/// strands-side families are expanded to a bounded window first, so that
/// side is a bounded verification.
fn criterion_7(c: &mut Criteria) {
    let m = 3usize;
    let mut ok = true;
    let algs = build_osz_algebras(m).unwrap();
    let id_ks = identity_bimodule_ks(&algs.a).unwrap();
    for i in 1..m {
        let rp = build_r(&algs.a, i, Sign::Positive).unwrap();
        let rn = build_r(&algs.a, i, Sign::Negative).unwrap();
        for (x, y) in [(&rp, &rn), (&rn, &rp)] {
            let prod = box_tensor_da(x, y, 16).unwrap();
            let red = reduce(&prod, &bounds()).unwrap();
            ok &= matches!(find_isomorphism(&red.reduced, &id_ks, 100_000), IsoResult::Found(_));
        }
    }
    let window = 16usize;
    let conc = |i: usize, sign: Sign| {
        std::sync::Arc::new(
            collapsed_crossing(&algs, m, i, sign)
                .unwrap()
                .concretize(window, window as i64)
                .unwrap(),
        )
    };
    // braid relation, both flavors
    let braid = |letters: &[(usize, Sign)], osz: bool| {
        let factors: Vec<_> = letters
            .iter()
            .map(|&(i, s)| {
                if osz {
                    conc(i, s)
                } else {
                    build_r(&algs.a, i, s).unwrap()
                }
            })
            .collect();
        let mut acc = factors[0].clone();
        for f in &factors[1..] {
            acc = box_tensor_da(&acc, f, 16).unwrap();
        }
        reduce(&acc, &bounds()).unwrap().reduced
    };
    let w121 = [(1, Sign::Positive), (2, Sign::Positive), (1, Sign::Positive)];
    let w212 = [(2, Sign::Positive), (1, Sign::Positive), (2, Sign::Positive)];
    for osz in [false, true] {
        let lhs = braid(&w121, osz);
        let rhs = braid(&w212, osz);
        ok &= matches!(find_isomorphism(&lhs, &rhs, 500_000), IsoResult::Found(_));
    }
    c.record(
        "criterion 7: crossings invert and the braid relation holds after reduction (m = 3; strands side bounded)",
        ok,
    );
}

#[test]
fn acceptance() {
    let mut c = Criteria { lines: Vec::new() };
    criterion_1(&mut c);
    criterion_2(&mut c);
    criterion_3(&mut c);
    criterion_4(&mut c);
    criterion_5(&mut c);
    criterion_6(&mut c);
    criterion_7(&mut c);
    let failed: Vec<_> = c.lines.iter().filter(|(_, p)| !p).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
