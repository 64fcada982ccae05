//! Property-based invariants over randomized inputs.

use proptest::prelude::*;

use quiver_da::constructions::{build_osz_algebras, build_r, Sign};
use quiver_da::grading::{epsilon_hom, eta_hom, swap_hom, GradingHom, GradingVec};
use quiver_da::pathalg::AlgebraElement;

fn half_integer_vec(dim: usize, raw: Vec<i64>) -> GradingVec {
    let mut v = raw;
    v.resize(dim, 0);
    // scaled by 4, halves only
    GradingVec::from_scaled(v.into_iter().map(|c| 2 * c).collect())
}

proptest! {
    #[test]
    fn epsilon_is_additive(
        m in 2usize..=5,
        ga in prop::collection::vec(-12i64..=12, 10),
        gb in prop::collection::vec(-12i64..=12, 10),
    ) {
        let dim = 2 * m;
        let g = half_integer_vec(dim, ga);
        let h = half_integer_vec(dim, gb);
        let eps = epsilon_hom(m);
        let lhs = eps.apply(&g.add(&h).unwrap()).unwrap().as_int().unwrap();
        let rhs = eps.apply(&g).unwrap().as_int().unwrap() + eps.apply(&h).unwrap().as_int().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn hom_composition_agrees_with_sequential_application(
        m in 2usize..=5,
        i in 1usize..=4,
        coords in prop::collection::vec(-20i64..=20, 10),
    ) {
        prop_assume!(i < m);
        let dim = 2 * m;
        let mut c = coords;
        c.resize(dim, 0);
        let g = GradingVec::from_scaled(c);
        let f1 = swap_hom(m, i);
        let f2 = eta_hom(m);
        let comp = f2.compose(&f1).unwrap();
        prop_assert_eq!(
            comp.apply(&g).unwrap(),
            f2.apply(&f1.apply(&g).unwrap()).unwrap()
        );
        let id = GradingHom::identity(dim);
        prop_assert_eq!(id.apply(&g).unwrap(), g);
    }

    #[test]
    fn multiplication_is_associative_and_distributive(
        xs in prop::collection::vec(0usize..40, 2),
        ys in prop::collection::vec(0usize..40, 2),
        zs in prop::collection::vec(0usize..40, 2),
    ) {
        let algs = build_osz_algebras(3).unwrap();
        let b = &algs.b;
        let basis = b.basis(4);
        let pick = |ns: &[usize]| {
            let mut e = AlgebraElement::zero(b);
            for &n in ns {
                e = e.plus(&AlgebraElement::from_path(b, basis[n % basis.len()].clone())).unwrap();
            }
            e
        };
        let (x, y, z) = (pick(&xs), pick(&ys), pick(&zs));
        let assoc_l = x.multiply(&y).unwrap().multiply(&z).unwrap();
        let assoc_r = x.multiply(&y.multiply(&z).unwrap()).unwrap();
        prop_assert_eq!(assoc_l, assoc_r);
        let dist_l = x.plus(&y).unwrap().multiply(&z).unwrap();
        let dist_r = x.multiply(&z).unwrap().plus(&y.multiply(&z).unwrap()).unwrap();
        prop_assert_eq!(dist_l, dist_r);
    }

    #[test]
    fn delta_evaluation_is_multilinear(
        ns in prop::collection::vec(0usize..60, 3),
        gen in 0usize..7,
    ) {
        let algs = build_osz_algebras(3).unwrap();
        let a = &algs.a;
        let r = build_r(a, 1, Sign::Positive).unwrap();
        let basis = a.basis(2);
        let x = gen % r.generators.len();
        let e1 = AlgebraElement::from_path(a, basis[ns[0] % basis.len()].clone());
        let e2 = AlgebraElement::from_path(a, basis[ns[1] % basis.len()].clone());
        let sum = e1.plus(&e2).unwrap();
        let lhs = r.eval_delta(x, std::slice::from_ref(&sum)).unwrap();
        let mut rhs = r.eval_delta(x, std::slice::from_ref(&e1)).unwrap();
        for (g, v) in r.eval_delta(x, std::slice::from_ref(&e2)).unwrap() {
            let entry = rhs.entry(g).or_insert_with(|| AlgebraElement::zero(a));
            *entry = entry.plus(&v).unwrap();
            if entry.is_zero() {
                rhs.remove(&g);
            }
        }
        prop_assert_eq!(lhs, rhs);
    }
}
