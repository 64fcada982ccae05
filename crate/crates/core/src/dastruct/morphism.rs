//! Morphisms of DA bimodules: graded component maps `f_j`, their
//! differential, composition, and the homomorphism check `d(f) = 0`.
//!
//! On concrete tables the differential is computed exactly as a finite table;
//! with parametric bimodules the homomorphism check falls back to a bounded
//! instance sweep of the same relation.

use std::collections::BTreeMap;

use crate::pathalg::Path;

use super::bimodule::{DABimodule, GenId, ParamElem};
use super::{Bimod, Bounds, DaError};

/// One component entry `source -> output (x) target` on the given inputs.
/// Unlike operation arrows, outputs may be idempotents (the identity
/// morphism is the table of unit outputs).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MorphArrow {
    pub source: GenId,
    pub target: GenId,
    pub output: ParamElem,
    pub inputs: Vec<ParamElem>,
    pub k_min: i64,
}

#[derive(Clone, Debug)]
pub struct DAMorphism {
    pub name: String,
    pub source: Bimod,
    pub target: Bimod,
    pub hom_degree: i64,
    pub arrows: Vec<MorphArrow>,
}

fn same_algebra_pair(a: &DABimodule, b: &DABimodule) -> bool {
    a.out_alg == b.out_alg && a.in_alg == b.in_alg
}

impl DAMorphism {
    pub fn new(
        name: impl Into<String>,
        source: Bimod,
        target: Bimod,
        hom_degree: i64,
        arrows: Vec<MorphArrow>,
    ) -> Result<DAMorphism, DaError> {
        if !same_algebra_pair(&source, &target) {
            return Err(DaError::AlgebraMismatch(
                "morphism endpoints live over different algebra pairs".into(),
            ));
        }
        let arrows = normalize_morph_arrows(arrows);
        let f = DAMorphism { name: name.into(), source, target, hom_degree, arrows };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<(), DaError> {
        let out_alg = &self.source.out_alg;
        let in_alg = &self.source.in_alg;
        for a in &self.arrows {
            let src = self
                .source
                .generators
                .get(a.source)
                .ok_or_else(|| DaError::BadMorphism("source generator out of range".into()))?;
            let tgt = self
                .target
                .generators
                .get(a.target)
                .ok_or_else(|| DaError::BadMorphism("target generator out of range".into()))?;
            if tgt.hom_degree != src.hom_degree + a.inputs.len() as i64 + self.hom_degree {
                return Err(DaError::BadMorphism(format!(
                    "component {} -> {} breaks the homological grading",
                    src.name, tgt.name
                )));
            }
            let samples = if a.output.is_powered() || a.inputs.iter().any(ParamElem::is_powered) {
                vec![a.k_min, a.k_min + 1]
            } else {
                vec![a.k_min]
            };
            for k in samples {
                let out = a
                    .output
                    .value(out_alg, k)
                    .ok_or_else(|| DaError::BadMorphism("bad output power".into()))?;
                if out.start() != src.left_idem || out.end(&out_alg.quiver) != tgt.left_idem {
                    return Err(DaError::BadMorphism(format!(
                        "component {} -> {}: output does not chain the left idempotents",
                        src.name, tgt.name
                    )));
                }
                let mut at = src.right_idem;
                let mut in_grading = crate::grading::GradingVec::zero(in_alg.grading_dim());
                for pat in &a.inputs {
                    let p = pat
                        .value(in_alg, k)
                        .ok_or_else(|| DaError::BadMorphism("bad input power".into()))?;
                    if p.is_empty() || p.start() != at {
                        return Err(DaError::BadMorphism(format!(
                            "component {} -> {}: inputs do not chain",
                            src.name, tgt.name
                        )));
                    }
                    at = p.end(&in_alg.quiver);
                    in_grading = in_grading.add(&p.grading(&in_alg.quiver))?;
                }
                if at != tgt.right_idem {
                    return Err(DaError::BadMorphism(format!(
                        "component {} -> {}: inputs end at the wrong idempotent",
                        src.name, tgt.name
                    )));
                }
                let lhs = src.grading.add(&self.source.in_hom.apply(&in_grading)?)?;
                let rhs = tgt
                    .grading
                    .add(&self.source.out_hom.apply(&out.grading(&out_alg.quiver))?)?;
                if lhs != rhs {
                    return Err(DaError::BadMorphism(format!(
                        "component {} -> {} breaks the intrinsic grading",
                        src.name, tgt.name
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_concrete(&self) -> bool {
        !self
            .arrows
            .iter()
            .any(|a| a.output.is_powered() || a.inputs.iter().any(ParamElem::is_powered))
    }

    pub fn is_zero(&self) -> bool {
        self.arrows.is_empty()
    }

    /// Component evaluation on concrete input paths.
    pub fn eval_paths(&self, x: GenId, inputs: &[Path]) -> Vec<(Path, GenId)> {
        let in_alg = &self.source.in_alg;
        let out_alg = &self.source.out_alg;
        let mut out = Vec::new();
        'arrows: for a in &self.arrows {
            if a.source != x || a.inputs.len() != inputs.len() {
                continue;
            }
            let mut k: Option<i64> = None;
            for (pat, p) in a.inputs.iter().zip(inputs) {
                match pat_match(pat, in_alg, p) {
                    None => continue 'arrows,
                    Some(None) => {}
                    Some(Some(k2)) => match k {
                        None => k = Some(k2),
                        Some(k1) if k1 == k2 => {}
                        _ => continue 'arrows,
                    },
                }
            }
            let k = k.unwrap_or(a.k_min);
            if k < a.k_min {
                continue;
            }
            let Some(raw) = a.output.value(out_alg, k) else { continue };
            if let Some(nf) = out_alg.normal_form(&raw) {
                out.push((nf, a.target));
            }
        }
        out
    }

    /// Structural equality of normalized tables.
    pub fn table_eq(&self, other: &DAMorphism) -> bool {
        self.hom_degree == other.hom_degree
            && self.source.table_eq(&other.source)
            && self.target.table_eq(&other.target)
            && self.arrows == other.arrows
    }

    pub fn describe(&self) -> String {
        format!("{}: {} -> {} ({} entries)", self.name, self.source.name, self.target.name, self.arrows.len())
    }
}

fn pat_match(pat: &ParamElem, alg: &crate::pathalg::Alg, p: &Path) -> Option<Option<i64>> {
    match &pat.power {
        None => (pat.base == *p).then_some(None),
        Some((lp, shift)) => {
            let extra = p.len().checked_sub(pat.base.len())?;
            if lp.len() == 0 || extra % lp.len() != 0 {
                return None;
            }
            let k = (extra / lp.len()) as i64 - shift;
            (pat.value(alg, k).as_ref() == Some(p)).then_some(Some(k))
        }
    }
}

fn normalize_morph_arrows(mut arrows: Vec<MorphArrow>) -> Vec<MorphArrow> {
    arrows.sort();
    let mut out: Vec<MorphArrow> = Vec::with_capacity(arrows.len());
    for a in arrows {
        if out.last() == Some(&a) {
            out.pop();
        } else {
            out.push(a);
        }
    }
    out
}

/// The identity morphism: unit output on every generator.
pub fn identity_morphism(m: &Bimod) -> DAMorphism {
    let arrows = (0..m.generators.len())
        .map(|x| MorphArrow {
            source: x,
            target: x,
            output: ParamElem::fixed(Path::idempotent(m.generators[x].left_idem)),
            inputs: vec![],
            k_min: 0,
        })
        .collect();
    DAMorphism::new(format!("id[{}]", m.name), m.clone(), m.clone(), 0, arrows)
        .expect("identity morphism is valid")
}

pub fn zero_morphism(source: &Bimod, target: &Bimod, hom_degree: i64) -> Result<DAMorphism, DaError> {
    DAMorphism::new("0", source.clone(), target.clone(), hom_degree, vec![])
}

fn require_concrete(f: &DAMorphism, what: &str) -> Result<(), DaError> {
    if !f.is_concrete() {
        return Err(DaError::NotConcrete(format!("{what}: morphism {}", f.name)));
    }
    Ok(())
}

/// Composition `f` after `g` on concrete tables: output algebra elements
/// multiply in application order, input sequences concatenate.
pub fn compose(f: &DAMorphism, g: &DAMorphism) -> Result<DAMorphism, DaError> {
    if !g.target.table_eq(&f.source) {
        return Err(DaError::AlgebraMismatch(format!(
            "compose: {} ends at {}, {} starts at {}",
            g.name, g.target.name, f.name, f.source.name
        )));
    }
    require_concrete(f, "compose")?;
    require_concrete(g, "compose")?;
    let out_alg = &g.source.out_alg;
    let mut arrows = Vec::new();
    for ga in &g.arrows {
        for fa in &f.arrows {
            if fa.source != ga.target {
                continue;
            }
            let Some(prod) = ga.output.base.compose(&out_alg.quiver, &fa.output.base) else {
                continue;
            };
            let Some(nf) = out_alg.normal_form(&prod) else { continue };
            let mut inputs = ga.inputs.clone();
            inputs.extend(fa.inputs.iter().cloned());
            arrows.push(MorphArrow {
                source: ga.source,
                target: fa.target,
                output: ParamElem::fixed(nf),
                inputs,
                k_min: 0,
            });
        }
    }
    DAMorphism::new(
        format!("{}*{}", f.name, g.name),
        g.source.clone(),
        f.target.clone(),
        f.hom_degree + g.hom_degree,
        arrows,
    )
}

/// GF(2) sum of two parallel morphisms.
pub fn add(f: &DAMorphism, g: &DAMorphism) -> Result<DAMorphism, DaError> {
    if !f.source.table_eq(&g.source) || !f.target.table_eq(&g.target) || f.hom_degree != g.hom_degree
    {
        return Err(DaError::BadMorphism("sum of non-parallel morphisms".into()));
    }
    let mut arrows = f.arrows.clone();
    arrows.extend(g.arrows.iter().cloned());
    DAMorphism::new(
        format!("{}+{}", f.name, g.name),
        f.source.clone(),
        f.target.clone(),
        f.hom_degree,
        arrows,
    )
}

/// The differential of a morphism between concrete bimodules, as an exact
/// finite table: compositions with the operation tables on both sides plus
/// the terms where one input factors through the algebra multiplication.
pub fn morphism_differential(f: &DAMorphism) -> Result<DAMorphism, DaError> {
    require_concrete(f, "differential")?;
    if !f.source.is_concrete() || !f.target.is_concrete() {
        return Err(DaError::NotConcrete(format!(
            "differential of {} needs concrete endpoint tables",
            f.name
        )));
    }
    let out_alg = &f.source.out_alg;
    let in_alg = &f.source.in_alg;
    let mut arrows: Vec<MorphArrow> = Vec::new();
    // f then delta^Y
    for fa in &f.arrows {
        for ya in f.target.arrows_from(fa.target) {
            if let Some(nf) = mul_out(out_alg, &fa.output.base, &ya.output.base) {
                let mut inputs = fa.inputs.clone();
                inputs.extend(ya.inputs.iter().cloned());
                arrows.push(MorphArrow {
                    source: fa.source,
                    target: ya.target,
                    output: ParamElem::fixed(nf),
                    inputs,
                    k_min: 0,
                });
            }
        }
    }
    // delta^X then f
    for fa in &f.arrows {
        for (xi, xa) in f.source.arrows.iter().enumerate() {
            let _ = xi;
            if xa.target != fa.source {
                continue;
            }
            if let Some(nf) = mul_out(out_alg, &xa.output.base, &fa.output.base) {
                let mut inputs = xa.inputs.clone();
                inputs.extend(fa.inputs.iter().cloned());
                arrows.push(MorphArrow {
                    source: xa.source,
                    target: fa.target,
                    output: ParamElem::fixed(nf),
                    inputs,
                    k_min: 0,
                });
            }
        }
    }
    // one input factored through the multiplication
    for fa in &f.arrows {
        for s in 0..fa.inputs.len() {
            let p = &fa.inputs[s].base;
            for (u, v) in factorizations(in_alg, p) {
                let mut inputs = fa.inputs.clone();
                inputs.splice(s..=s, [ParamElem::fixed(u), ParamElem::fixed(v)]);
                arrows.push(MorphArrow {
                    source: fa.source,
                    target: fa.target,
                    output: fa.output.clone(),
                    inputs,
                    k_min: 0,
                });
            }
        }
    }
    DAMorphism::new(
        format!("d({})", f.name),
        f.source.clone(),
        f.target.clone(),
        f.hom_degree - 1,
        arrows,
    )
}

fn mul_out(alg: &crate::pathalg::Alg, a: &Path, b: &Path) -> Option<Path> {
    let ab = a.compose(&alg.quiver, b)?;
    alg.normal_form(&ab)
}

/// All pairs of positive-length basis paths whose product is `p`. Rules
/// preserve length, so factors have complementary lengths.
fn factorizations(alg: &crate::pathalg::Alg, p: &Path) -> Vec<(Path, Path)> {
    let mut out = Vec::new();
    if p.len() < 2 {
        return out;
    }
    let by_start = alg.basis_by_start(p.len() - 1);
    for u in &by_start[p.start()] {
        if u.is_empty() || u.len() >= p.len() {
            continue;
        }
        for v in &by_start[u.end(&alg.quiver)] {
            if v.len() + u.len() != p.len() {
                continue;
            }
            if mul_out(alg, u, v).as_ref() == Some(p) {
                out.push((u.clone(), v.clone()));
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct MorphismReport {
    pub exact: bool,
    pub instances_checked: usize,
    pub failure: Option<String>,
}

impl MorphismReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks `d(f) = 0`. Exact (finite-table) when everything is concrete,
/// otherwise a bounded residual sweep over chained basis-input sequences.
pub fn verify_homomorphism(f: &DAMorphism, bounds: &Bounds) -> Result<MorphismReport, DaError> {
    if f.is_concrete() && f.source.is_concrete() && f.target.is_concrete() {
        let d = morphism_differential(f)?;
        let failure = if d.is_zero() {
            None
        } else {
            let a = &d.arrows[0];
            Some(format!(
                "d({}) has {} residual entries, first {} -> {}",
                f.name,
                d.arrows.len(),
                f.source.generators[a.source].name,
                f.target.generators[a.target].name
            ))
        };
        return Ok(MorphismReport { exact: true, instances_checked: d.arrows.len(), failure });
    }
    // bounded sweep
    let m = &f.source;
    let by_start = m.in_alg.basis_by_start(bounds.basis_len);
    let mut checked = 0usize;
    for x in 0..m.generators.len() {
        let mut stack: Vec<Vec<Path>> = vec![vec![]];
        while let Some(inputs) = stack.pop() {
            checked += 1;
            let residual = differential_residual(f, x, &inputs);
            if !residual.is_empty() {
                return Ok(MorphismReport {
                    exact: false,
                    instances_checked: checked,
                    failure: Some(format!(
                        "d({}) nonzero at {} on ({})",
                        f.name,
                        m.generators[x].name,
                        inputs
                            .iter()
                            .map(|p| p.display(&m.in_alg.quiver))
                            .collect::<Vec<_>>()
                            .join(", ")
                    )),
                });
            }
            if inputs.len() < bounds.max_inputs {
                let at = inputs
                    .last()
                    .map(|p| p.end(&m.in_alg.quiver))
                    .unwrap_or(m.generators[x].right_idem);
                for p in &by_start[at] {
                    if !p.is_empty() {
                        let mut next = inputs.clone();
                        next.push(p.clone());
                        stack.push(next);
                    }
                }
            }
        }
    }
    Ok(MorphismReport { exact: false, instances_checked: checked, failure: None })
}

/// Instance-level residual of `d(f)` at `(x, inputs)`.
fn differential_residual(
    f: &DAMorphism,
    x: GenId,
    inputs: &[Path],
) -> BTreeMap<(GenId, Path), ()> {
    let out_alg = &f.source.out_alg;
    let in_alg = &f.source.in_alg;
    let mut residual: BTreeMap<(GenId, Path), ()> = BTreeMap::new();
    let mut toggle = |g: GenId, p: Path| {
        if residual.remove(&(g, p.clone())).is_none() {
            residual.insert((g, p), ());
        }
    };
    let n = inputs.len();
    for r in 0..=n {
        // f on the prefix, then the target operation
        for (b, y) in f.eval_paths(x, &inputs[..r]) {
            for (c, y2) in f.target.eval_delta_paths(y, &inputs[r..]) {
                if let Some(nf) = mul_out(out_alg, &b, &c) {
                    toggle(y2, nf);
                }
            }
        }
        // the source operation on the prefix, then f
        for (b, x2) in f.source.eval_delta_paths(x, &inputs[..r]) {
            for (c, y) in f.eval_paths(x2, &inputs[r..]) {
                if let Some(nf) = mul_out(out_alg, &b, &c) {
                    toggle(y, nf);
                }
            }
        }
    }
    for s in 0..n.saturating_sub(1) {
        let Some(prod) = inputs[s].compose(&in_alg.quiver, &inputs[s + 1]) else { continue };
        let Some(prod) = in_alg.normal_form(&prod) else { continue };
        let mut merged: Vec<Path> = Vec::with_capacity(n - 1);
        merged.extend_from_slice(&inputs[..s]);
        merged.push(prod);
        merged.extend_from_slice(&inputs[s + 2..]);
        for (b, y) in f.eval_paths(x, &merged) {
            toggle(y, b);
        }
    }
    residual
}
