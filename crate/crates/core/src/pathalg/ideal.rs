//! GF(2) linear algebra over path bases: echelon spans, bounded two-sided
//! ideal membership, and bounded kernels of algebra homomorphisms.

use std::collections::BTreeMap;

use super::algebra::{Alg, AlgebraElement};
use super::hom::AlgebraHom;
use super::quiver::Path;
use super::PathAlgError;

/// An echelonized GF(2) span of algebra elements, with paths as coordinates.
/// Pivots are the term-order-maximal paths of the stored rows.
pub struct Gf2Span {
    rows: BTreeMap<Path, AlgebraElement>,
}

impl Default for Gf2Span {
    fn default() -> Self {
        Self::new()
    }
}

impl Gf2Span {
    pub fn new() -> Self {
        Gf2Span { rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn lead(e: &AlgebraElement) -> Option<Path> {
        e.terms().max_by(|a, b| a.term_cmp(b)).cloned()
    }

    /// Reduces `e` against the span; the remainder is zero iff `e` is in it.
    pub fn reduce(&self, mut e: AlgebraElement) -> AlgebraElement {
        while let Some(lead) = Self::lead(&e) {
            match self.rows.get(&lead) {
                Some(row) => e = e.plus(row).expect("span rows share the algebra"),
                None => break,
            }
        }
        e
    }

    /// Inserts `e`, returning true when it enlarged the span.
    pub fn insert(&mut self, e: AlgebraElement) -> bool {
        let r = self.reduce(e);
        match Self::lead(&r) {
            None => false,
            Some(lead) => {
                self.rows.insert(lead, r);
                true
            }
        }
    }

    pub fn contains(&self, e: &AlgebraElement) -> bool {
        self.reduce(e.clone()).is_zero()
    }
}

/// Echelon span of the two-sided ideal generated by `gens`, restricted to
/// products `x·g·y` over basis paths with total length at most `max_len`.
pub fn ideal_span(algebra: &Alg, gens: &[AlgebraElement], max_len: usize) -> Gf2Span {
    let mut span = Gf2Span::new();
    let basis = algebra.basis(max_len);
    for g in gens {
        let glen = g.terms().map(Path::len).max().unwrap_or(0);
        for x in &basis {
            if x.len() + glen > max_len {
                continue;
            }
            let xg = AlgebraElement::from_path(algebra, x.clone())
                .multiply(g)
                .expect("same algebra");
            if xg.is_zero() {
                continue;
            }
            for y in &basis {
                if x.len() + glen + y.len() > max_len {
                    continue;
                }
                let xgy = xg
                    .multiply(&AlgebraElement::from_path(algebra, y.clone()))
                    .expect("same algebra");
                if !xgy.is_zero() {
                    span.insert(xgy);
                }
            }
        }
    }
    span
}

/// Bounded two-sided ideal membership. Inconclusive when `a` has a term too
/// long for the spanning bound to be meaningful.
pub fn ideal_membership(
    gens: &[AlgebraElement],
    a: &AlgebraElement,
    max_len: usize,
) -> Result<bool, PathAlgError> {
    let algebra = a.algebra().clone();
    for g in gens {
        if !g.same_algebra(a) {
            return Err(PathAlgError::CrossAlgebra);
        }
    }
    let max_gen = gens
        .iter()
        .flat_map(|g| g.terms().map(Path::len))
        .max()
        .unwrap_or(0);
    let a_len = a.terms().map(Path::len).max().unwrap_or(0);
    if a_len + max_gen > max_len {
        return Err(PathAlgError::Inconclusive(format!(
            "element length {a_len} exceeds max_len {max_len} minus generator length {max_gen}"
        )));
    }
    Ok(ideal_span(&algebra, gens, max_len).contains(a))
}

/// Basis of `ker(hom)` restricted to the span of source basis paths of length
/// at most `max_len`, found by GF(2) elimination with source tracking.
pub fn kernel_of_hom_bounded(hom: &AlgebraHom, max_len: usize) -> Vec<AlgebraElement> {
    // rows: image lead -> (image remainder, source combination)
    let mut rows: BTreeMap<Path, (AlgebraElement, AlgebraElement)> = BTreeMap::new();
    let mut kernel = Vec::new();
    for p in hom.source.basis(max_len) {
        let mut img = hom.apply_path(&p).expect("basis path lies in the source");
        let mut src = AlgebraElement::from_path(&hom.source, p);
        loop {
            let lead = match img.terms().max_by(|a, b| a.term_cmp(b)).cloned() {
                None => {
                    kernel.push(src);
                    break;
                }
                Some(l) => l,
            };
            match rows.get(&lead) {
                Some((ri, rs)) => {
                    img = img.plus(ri).expect("same algebra");
                    src = src.plus(rs).expect("same algebra");
                }
                None => {
                    rows.insert(lead, (img, src));
                    break;
                }
            }
        }
    }
    kernel
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_osz_algebras, sum_of_u, u_element};
    use crate::pathalg::parse_path;

    #[test]
    fn ideal_membership_examples() {
        let m = 4;
        let algs = build_osz_algebras(m).unwrap();
        let cl = &algs.cl_bot;
        let gens = vec![sum_of_u(cl, m)];
        let e = |s: &str| AlgebraElement::from_path(cl, parse_path(&cl.quiver, s).unwrap());
        assert!(ideal_membership(&gens, &e("R1 L1"), 8).unwrap());
        for i in 1..=m {
            let sq = u_element(cl, i).pow(2).unwrap();
            assert!(ideal_membership(&gens, &sq, 8).unwrap(), "U_{i}^2");
        }
        assert!(!ideal_membership(&gens, &AlgebraElement::idempotent(cl, 0), 8).unwrap());
        // too long to decide at this bound
        let long = u_element(cl, 1).pow(4).unwrap();
        assert!(ideal_membership(&gens, &long, 8).is_err());
    }

    #[test]
    fn kernel_is_the_u_ideal_boundedly() {
        for m in 2..=3usize {
            let algs = build_osz_algebras(m).unwrap();
            let cl = &algs.cl_bot;
            let max_len = 6;
            let kernel = kernel_of_hom_bounded(&algs.phi, max_len);
            assert!(!kernel.is_empty());
            let span = ideal_span(cl, &[sum_of_u(cl, m)], 2 * max_len);
            for v in &kernel {
                assert!(span.contains(v), "m = {m}: kernel vector {:?} outside the ideal", v);
            }
            // and conversely the ideal maps to zero
            for x in cl.basis(max_len) {
                let xe = AlgebraElement::from_path(cl, x);
                let prod = xe.multiply(&sum_of_u(cl, m)).unwrap();
                assert!(algs.phi.apply(&prod).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn decomposition_of_the_u_ideal() {
        let m = 4;
        let algs = build_osz_algebras(m).unwrap();
        let cl = &algs.cl_bot;
        let e = |s: &str| AlgebraElement::from_path(cl, parse_path(&cl.quiver, s).unwrap());
        // the m corner generators of the same ideal
        let mut gens = vec![e("R1 L1")];
        for i in 1..=m - 2 {
            gens.push(
                e(&format!("L{i} R{i}"))
                    .plus(&e(&format!("R{} L{}", i + 1, i + 1)))
                    .unwrap(),
            );
        }
        gens.push(
            e(&format!("L{} R{}", m - 1, m - 1))
                .plus(&u_element(cl, m))
                .unwrap(),
        );
        assert_eq!(gens.len(), m);
        // idempotent slices of the total sum reproduce them
        let total = sum_of_u(cl, m);
        let mut back = AlgebraElement::zero(cl);
        for g in &gens {
            back = back.plus(g).unwrap();
        }
        assert_eq!(back, total);
        // two-sided spans agree in both directions
        for g in &gens {
            assert!(ideal_membership(&[total.clone()], g, 8).unwrap());
        }
        assert!(ideal_membership(&gens, &total, 8).unwrap());
    }
}
