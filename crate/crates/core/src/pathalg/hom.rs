use crate::grading::GradingHom;

use super::algebra::{Alg, AlgebraElement};
use super::quiver::{Path, VertexId};
use super::PathAlgError;

/// A graded algebra homomorphism given on vertices and arrows. Construction
/// verifies that every rewrite rule of the source maps to a valid identity in
/// the target and that arrow gradings are compatible through the attached
/// grading-group map.
#[derive(Clone, Debug)]
pub struct AlgebraHom {
    pub name: String,
    pub source: Alg,
    pub target: Alg,
    pub vertex_map: Vec<VertexId>,
    pub arrow_images: Vec<AlgebraElement>,
    pub grading_hom: GradingHom,
}

impl AlgebraHom {
    pub fn new(
        name: impl Into<String>,
        source: Alg,
        target: Alg,
        vertex_map: Vec<VertexId>,
        arrow_images: Vec<AlgebraElement>,
        grading_hom: GradingHom,
    ) -> Result<Self, PathAlgError> {
        let hom = AlgebraHom {
            name: name.into(),
            source,
            target,
            vertex_map,
            arrow_images,
            grading_hom,
        };
        hom.validate()?;
        Ok(hom)
    }

    pub fn identity(alg: &Alg) -> Self {
        let vertex_map = (0..alg.vertex_count()).collect();
        let arrow_images = (0..alg.quiver.arrows.len())
            .map(|id| {
                AlgebraElement::from_path(
                    alg,
                    Path::from_arrows(&alg.quiver, vec![id]).expect("arrow is a path"),
                )
            })
            .collect();
        AlgebraHom {
            name: "id".into(),
            source: alg.clone(),
            target: alg.clone(),
            vertex_map,
            arrow_images,
            grading_hom: GradingHom::identity(alg.grading_dim()),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self.vertex_map.iter().enumerate().all(|(v, &w)| v == w)
            && self.arrow_images.iter().enumerate().all(|(id, img)| {
                img.single_path().is_some_and(|p| p.arrows() == [id])
            })
    }

    fn validate(&self) -> Result<(), PathAlgError> {
        if self.vertex_map.len() != self.source.vertex_count() {
            return Err(PathAlgError::BadHom("vertex map has wrong length".into()));
        }
        if self.arrow_images.len() != self.source.quiver.arrows.len() {
            return Err(PathAlgError::BadHom("arrow image list has wrong length".into()));
        }
        for &w in &self.vertex_map {
            if w >= self.target.vertex_count() {
                return Err(PathAlgError::BadHom("vertex image out of range".into()));
            }
        }
        for (id, img) in self.arrow_images.iter().enumerate() {
            let a = self.source.quiver.arrow(id);
            if img.is_zero() {
                continue;
            }
            let (s, e, g) = img.homogeneous_data().ok_or_else(|| {
                PathAlgError::BadHom(format!("image of {} is not homogeneous", a.name))
            })?;
            if s != self.vertex_map[a.source] || e != self.vertex_map[a.target] {
                return Err(PathAlgError::BadHom(format!(
                    "image of {} has endpoints ({s},{e}), expected ({},{})",
                    a.name, self.vertex_map[a.source], self.vertex_map[a.target]
                )));
            }
            if g != self.grading_hom.apply(&a.grading)? {
                return Err(PathAlgError::BadHom(format!(
                    "image of {} breaks the grading",
                    a.name
                )));
            }
        }
        for rule in &self.source.rules {
            let lhs = self.apply_path(&rule.lhs)?;
            let rhs = match &rule.rhs {
                None => AlgebraElement::zero(&self.target),
                Some(r) => self.apply_path(r)?,
            };
            if lhs != rhs {
                return Err(PathAlgError::BadHom(format!(
                    "relation {} -> {} is not respected",
                    rule.lhs.display(&self.source.quiver),
                    rule.rhs
                        .as_ref()
                        .map_or("0".into(), |r| r.display(&self.source.quiver)),
                )));
            }
        }
        Ok(())
    }

    pub fn apply_path(&self, p: &Path) -> Result<AlgebraElement, PathAlgError> {
        let mut out = AlgebraElement::idempotent(&self.target, self.vertex_map[p.start()]);
        for &id in p.arrows() {
            out = out.multiply(&self.arrow_images[id])?;
        }
        Ok(out)
    }

    pub fn apply(&self, a: &AlgebraElement) -> Result<AlgebraElement, PathAlgError> {
        if !std::sync::Arc::ptr_eq(a.algebra(), &self.source) && *a.algebra() != self.source {
            return Err(PathAlgError::CrossAlgebra);
        }
        let mut out = AlgebraElement::zero(&self.target);
        for p in a.terms() {
            out = out.plus(&self.apply_path(p)?)?;
        }
        Ok(out)
    }

    /// Surjectivity onto a finite-dimensional target, checked by membership
    /// of every bounded target basis path in the image of the bounded source
    /// basis.
    pub fn is_surjective_bounded(&self, source_len: usize, target_len: usize) -> bool {
        let mut span = super::ideal::Gf2Span::new();
        for p in self.source.basis(source_len) {
            if let Ok(img) = self.apply_path(&p) {
                span.insert(img);
            }
        }
        self.target
            .basis(target_len)
            .into_iter()
            .all(|p| span.contains(&AlgebraElement::from_path(&self.target, p)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_ks_algebra, build_osz_algebras, u_element};
    use crate::grading::GradingHom;
    use crate::pathalg::parse_path;

    #[test]
    fn quotient_map_validates_for_small_m() {
        for m in 2..=6 {
            let algs = build_osz_algebras(m).unwrap();
            assert_eq!(algs.phi.name, "phi");
            assert!(algs.phi.is_surjective_bounded(4, 4), "m = {m}");
        }
    }

    #[test]
    fn quotient_map_images() {
        let m = 4;
        let algs = build_osz_algebras(m).unwrap();
        let phi = &algs.phi;
        let cl = &algs.cl_bot;
        let a = &algs.a;
        let ap = |s: &str| AlgebraElement::from_path(a, parse_path(&a.quiver, s).unwrap());
        let cp = |s: &str| AlgebraElement::from_path(cl, parse_path(&cl.quiver, s).unwrap());
        assert_eq!(phi.apply(&cp("R2")).unwrap(), ap("(1|2)"));
        assert_eq!(phi.apply(&cp("L2")).unwrap(), ap("(2|1)"));
        assert_eq!(phi.apply(&cp("U4")).unwrap(), ap("(3|2|3)"));
        assert_eq!(
            phi.apply(&AlgebraElement::idempotent(cl, 2)).unwrap(),
            AlgebraElement::idempotent(a, 2)
        );
        // U_i maps to the sum of the two loops at vertices i-1 and i
        let img = phi.apply(&u_element(cl, 2)).unwrap();
        let expect = ap("(1|0|1)").plus(&ap("(2|1|2)")).unwrap();
        assert_eq!(img, expect);
        // the bottom loop dies
        assert!(phi.apply(&u_element(cl, 1)).unwrap().term_count() == 1);
        assert_eq!(phi.apply(&cp("R1 L1")).unwrap(), AlgebraElement::zero(a));
    }

    #[test]
    fn identity_hom_detected() {
        let a = build_ks_algebra(3).unwrap();
        let id = AlgebraHom::identity(&a);
        assert!(id.is_identity());
        let x = AlgebraElement::from_path(&a, parse_path(&a.quiver, "(1|0|1)").unwrap());
        assert_eq!(id.apply(&x).unwrap(), x);
    }

    #[test]
    fn invalid_hom_rejected() {
        let m = 3;
        let algs = build_osz_algebras(m).unwrap();
        let a = &algs.a;
        let cl = &algs.cl_bot;
        // sending the loop generator to an idempotent breaks the grading
        let mut images = Vec::new();
        for arrow in &cl.quiver.arrows {
            let img = if arrow.name == format!("U{m}") {
                AlgebraElement::idempotent(a, m - 1)
            } else if let Some(idx) = arrow.name.strip_prefix('R') {
                let j: usize = idx.parse().unwrap();
                AlgebraElement::from_path(a, crate::constructions::ks_arrow(a, j - 1, j))
            } else {
                let j: usize = arrow.name[1..].parse().unwrap();
                AlgebraElement::from_path(a, crate::constructions::ks_arrow(a, j, j - 1))
            };
            images.push(img);
        }
        let bad = AlgebraHom::new(
            "bad",
            cl.clone(),
            a.clone(),
            (0..m).collect(),
            images,
            GradingHom::identity(1),
        );
        assert!(bad.is_err());
    }
}
