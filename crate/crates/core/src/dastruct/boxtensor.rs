//! Box tensor products: the dg bimodule associated to a DA bimodule with no
//! higher actions, and the pairing of two composable DA bimodules.

use std::collections::BTreeMap;

use crate::grading::GradingVec;
use crate::pathalg::Path;

use super::bimodule::{DABimodule, DAGenerator, DeltaArrow, GenId, ParamElem};
use super::{Bimod, DaError};

/// The dg bimodule `A ⊠ X` of a DA bimodule `X` with `delta^1_j = 0` for
/// `j >= 3`: free left module on (algebra basis path, generator) pairs, with
/// the differential induced by `delta^1_1`, the right action by
/// `delta^1_2`, and the left action by multiplication.
pub struct DgBimodule {
    pub m: Bimod,
}

impl DgBimodule {
    /// Bounded module basis: pairs `(b, x)` with `b` ending at the left
    /// idempotent of `x`.
    pub fn basis(&self, max_len: usize) -> Vec<(Path, GenId)> {
        let mut out = Vec::new();
        for b in self.m.out_alg.basis(max_len) {
            for (x, g) in self.m.generators.iter().enumerate() {
                if b.end(&self.m.out_alg.quiver) == g.left_idem {
                    out.push((b.clone(), x));
                }
            }
        }
        out
    }

    pub fn differential(&self, b: &Path, x: GenId) -> Vec<(Path, GenId)> {
        let mut out = Vec::new();
        for (a, y) in self.m.eval_delta_paths(x, &[]) {
            if let Some(ba) = b.compose(&self.m.out_alg.quiver, &a) {
                if let Some(nf) = self.m.out_alg.normal_form(&ba) {
                    out.push((nf, y));
                }
            }
        }
        normalize(out)
    }

    pub fn right_action(&self, b: &Path, x: GenId, c: &Path) -> Vec<(Path, GenId)> {
        let mut out = Vec::new();
        for (a, y) in self.m.eval_delta_paths(x, std::slice::from_ref(c)) {
            if let Some(ba) = b.compose(&self.m.out_alg.quiver, &a) {
                if let Some(nf) = self.m.out_alg.normal_form(&ba) {
                    out.push((nf, y));
                }
            }
        }
        normalize(out)
    }

    pub fn left_action(&self, a: &Path, b: &Path, x: GenId) -> Option<(Path, GenId)> {
        let ab = a.compose(&self.m.out_alg.quiver, b)?;
        let nf = self.m.out_alg.normal_form(&ab)?;
        Some((nf, x))
    }

    pub fn hom_degree(&self, x: GenId) -> i64 {
        self.m.generators[x].hom_degree
    }

    pub fn grading(&self, b: &Path, x: GenId) -> GradingVec {
        self.m
            .out_hom
            .apply(&b.grading(&self.m.out_alg.quiver))
            .expect("grading dims agree")
            .add(&self.m.generators[x].grading)
            .expect("grading dims agree")
    }

    /// `d^2 = 0` on the bounded basis.
    pub fn d_squared_zero(&self, max_len: usize) -> bool {
        self.basis(max_len).into_iter().all(|(b, x)| {
            let mut acc: BTreeMap<(Path, GenId), bool> = BTreeMap::new();
            for (b1, y) in self.differential(&b, x) {
                for t in self.differential(&b1, y) {
                    *acc.entry(t).or_default() ^= true;
                }
            }
            acc.values().all(|v| !v)
        })
    }

    /// The differential strictly drops homological degree by one on every
    /// bounded basis element with nonzero differential.
    pub fn differential_drops_degree(&self, max_len: usize) -> bool {
        self.basis(max_len).into_iter().all(|(b, x)| {
            self.differential(&b, x)
                .into_iter()
                .all(|(_, y)| self.hom_degree(y) == self.hom_degree(x) - 1)
        })
    }

    /// Right Leibniz compatibility `d(m·c) = d(m)·c` (the algebras carry no
    /// differential) on the bounded basis.
    pub fn leibniz_right(&self, max_len: usize, input_len: usize) -> bool {
        let inputs = self.m.in_alg.basis(input_len);
        self.basis(max_len).into_iter().all(|(b, x)| {
            inputs.iter().filter(|c| !c.is_empty()).all(|c| {
                let mut acc: BTreeMap<(Path, GenId), bool> = BTreeMap::new();
                for (b1, y) in self.right_action(&b, x, c) {
                    for t in self.differential(&b1, y) {
                        *acc.entry(t).or_default() ^= true;
                    }
                }
                for (b1, y) in self.differential(&b, x) {
                    for t in self.right_action(&b1, y, c) {
                        *acc.entry(t).or_default() ^= true;
                    }
                }
                acc.values().all(|v| !v)
            })
        })
    }

    /// Dimension counts keyed by (homological degree, grading), over basis
    /// elements whose algebra part has length <= `max_len`.
    pub fn graded_dimensions(&self, max_len: usize) -> BTreeMap<(i64, GradingVec), usize> {
        let mut out: BTreeMap<(i64, GradingVec), usize> = BTreeMap::new();
        for (b, x) in self.basis(max_len) {
            *out.entry((self.hom_degree(x), self.grading(&b, x))).or_default() += 1;
        }
        out
    }
}

fn normalize(mut v: Vec<(Path, GenId)>) -> Vec<(Path, GenId)> {
    v.sort();
    let mut out: Vec<(Path, GenId)> = Vec::with_capacity(v.len());
    for t in v {
        if out.last() == Some(&t) {
            out.pop();
        } else {
            out.push(t);
        }
    }
    out
}

/// The associated dg bimodule; rejects tables with higher actions.
pub fn box_tensor_alg(m: &Bimod) -> Result<DgBimodule, DaError> {
    if m.has_higher_actions() {
        return Err(DaError::Unsupported(format!(
            "{} has delta^1_j actions with j >= 3",
            m.name
        )));
    }
    Ok(DgBimodule { m: m.clone() })
}

/// The DA bimodule `X ⊠ Y` of two composable DA bimodules: generators are
/// idempotent-matched pairs, and operations feed chains of Y-operations into
/// X. Requires concrete tables and an identity output grading hom on Y; the
/// chain length is bounded by the arity of X and by `depth_limit`.
pub fn box_tensor_da(x: &Bimod, y: &Bimod, depth_limit: usize) -> Result<Bimod, DaError> {
    if x.in_alg != y.out_alg {
        return Err(DaError::AlgebraMismatch(format!(
            "{} has input algebra {}, {} has output algebra {}",
            x.name, x.in_alg.name, y.name, y.out_alg.name
        )));
    }
    if !x.is_concrete() || !y.is_concrete() {
        return Err(DaError::NotConcrete("box_tensor_da".into()));
    }
    if !y.out_hom.is_identity() {
        return Err(DaError::Unsupported(
            "box_tensor_da needs an identity output grading hom on the right factor".into(),
        ));
    }
    let max_chain = x.max_arity().saturating_sub(1);
    if max_chain > depth_limit {
        return Err(DaError::DepthLimit(depth_limit));
    }

    let mut gens = Vec::new();
    let mut pair_id: BTreeMap<(GenId, GenId), GenId> = BTreeMap::new();
    for (xi, xg) in x.generators.iter().enumerate() {
        for (yi, yg) in y.generators.iter().enumerate() {
            if xg.right_idem != yg.left_idem {
                continue;
            }
            pair_id.insert((xi, yi), gens.len());
            gens.push(DAGenerator {
                name: format!("({}|{})", xg.name, yg.name),
                left_idem: xg.left_idem,
                right_idem: yg.right_idem,
                hom_degree: xg.hom_degree + yg.hom_degree,
                grading: xg.grading.add(&x.in_hom.apply(&yg.grading)?)?,
            });
        }
    }

    let mut arrows: Vec<DeltaArrow> = Vec::new();
    for (&(xi, yi), &src) in &pair_id {
        // chains of 0..=max_chain arrows of Y starting at yi
        #[derive(Clone)]
        struct Chain {
            at: GenId,
            outputs: Vec<Path>,
            inputs: Vec<Path>,
        }
        let mut chains = vec![Chain { at: yi, outputs: vec![], inputs: vec![] }];
        let mut frontier = chains.clone();
        for _ in 0..max_chain {
            let mut next = Vec::new();
            for ch in &frontier {
                for a in y.arrows_from(ch.at) {
                    let mut c2 = ch.clone();
                    c2.at = a.target;
                    c2.outputs.push(a.output.base.clone());
                    c2.inputs.extend(a.inputs.iter().map(|p| p.base.clone()));
                    next.push(c2);
                }
            }
            if next.is_empty() {
                break;
            }
            chains.extend(next.iter().cloned());
            frontier = next;
        }
        for ch in &chains {
            for (out, x2) in x.eval_delta_paths(xi, &ch.outputs) {
                let Some(&tgt) = pair_id.get(&(x2, ch.at)) else { continue };
                arrows.push(DeltaArrow::concrete(
                    src,
                    tgt,
                    ParamElem::fixed(out),
                    ch.inputs.iter().cloned().map(ParamElem::fixed).collect(),
                ));
            }
        }
    }

    Ok(std::sync::Arc::new(DABimodule::new(
        format!("({}⊠{})", x.name, y.name),
        x.out_alg.clone(),
        y.in_alg.clone(),
        gens,
        arrows,
        x.out_hom.clone(),
        x.in_hom.compose(&y.in_hom)?,
    )?))
}
