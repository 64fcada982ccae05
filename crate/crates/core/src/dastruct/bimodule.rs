use std::collections::BTreeMap;

use crate::grading::{GradingHom, GradingVec};
use crate::pathalg::{Alg, AlgebraElement, Path, VertexId};

use super::DaError;

pub type GenId = usize;

/// A bimodule generator: idempotent decorations, a homological degree, and a
/// grading in the bimodule's grading group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DAGenerator {
    pub name: String,
    pub left_idem: VertexId,
    pub right_idem: VertexId,
    pub hom_degree: i64,
    pub grading: GradingVec,
}

/// An algebra label that may carry a power slot:
/// `value(k) = base · loop^(k + k_shift)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ParamElem {
    pub base: Path,
    pub power: Option<(Path, i64)>,
}

impl ParamElem {
    pub fn fixed(base: Path) -> Self {
        ParamElem { base, power: None }
    }

    pub fn powered(base: Path, loop_path: Path, k_shift: i64) -> Self {
        ParamElem { base, power: Some((loop_path, k_shift)) }
    }

    pub fn is_powered(&self) -> bool {
        self.power.is_some()
    }

    pub fn value(&self, alg: &Alg, k: i64) -> Option<Path> {
        match &self.power {
            None => Some(self.base.clone()),
            Some((lp, shift)) => {
                let e = k + shift;
                if e < 0 {
                    return None;
                }
                let mut p = self.base.clone();
                for _ in 0..e {
                    p = p.compose(&alg.quiver, lp)?;
                }
                Some(p)
            }
        }
    }

    /// Solves `value(k) == p`. `Ok(None)` means a k-independent match.
    fn match_path(&self, alg: &Alg, p: &Path) -> Option<Option<i64>> {
        match &self.power {
            None => (self.base == *p).then_some(None),
            Some((lp, shift)) => {
                let extra = p.len().checked_sub(self.base.len())?;
                if lp.len() == 0 || extra % lp.len() != 0 {
                    return None;
                }
                let k = (extra / lp.len()) as i64 - shift;
                (self.value(alg, k).as_ref() == Some(p)).then_some(Some(k))
            }
        }
    }

    fn display(&self, alg: &Alg) -> String {
        match &self.power {
            None => self.base.display(&alg.quiver),
            Some((lp, shift)) => {
                let exp = match shift {
                    0 => "k".to_string(),
                    s if *s > 0 => format!("k+{s}"),
                    s => format!("k-{}", -s),
                };
                if self.base.is_empty() {
                    format!("[{}]^{exp}", lp.display(&alg.quiver))
                } else {
                    format!("{} [{}]^{exp}", self.base.display(&alg.quiver), lp.display(&alg.quiver))
                }
            }
        }
    }
}

/// One arrow family of the operation table: a `delta^1_{1+inputs.len()}`
/// contribution `source -> output (x) target` on the given inputs, for every
/// `k >= k_min`. Arrows without power slots are single instances.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct DeltaArrow {
    pub source: GenId,
    pub target: GenId,
    pub output: ParamElem,
    pub inputs: Vec<ParamElem>,
    pub k_min: i64,
}

impl DeltaArrow {
    pub fn concrete(source: GenId, target: GenId, output: ParamElem, inputs: Vec<ParamElem>) -> Self {
        DeltaArrow { source, target, output, inputs, k_min: 0 }
    }

    pub fn family(
        source: GenId,
        target: GenId,
        output: ParamElem,
        inputs: Vec<ParamElem>,
        k_min: i64,
    ) -> Self {
        DeltaArrow { source, target, output, inputs, k_min }
    }

    pub fn is_parametric(&self) -> bool {
        self.output.is_powered() || self.inputs.iter().any(ParamElem::is_powered)
    }
}

/// A fully instantiated arrow (one `k`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConcreteArrow {
    pub source: GenId,
    pub target: GenId,
    pub output: Path,
    pub inputs: Vec<Path>,
}

/// GF(2) formal sum of `algebra (x) generator` terms, keyed by generator.
pub type DeltaValue = BTreeMap<GenId, AlgebraElement>;

pub(crate) fn value_toggle(val: &mut DeltaValue, alg: &Alg, path: Path, gen: GenId) {
    let entry = val.entry(gen).or_insert_with(|| AlgebraElement::zero(alg));
    *entry = entry
        .plus(&AlgebraElement::from_path(alg, path))
        .expect("same algebra");
    if entry.is_zero() {
        val.remove(&gen);
    }
}

/// A DA bimodule: generators, an operation table, and grading-group
/// homomorphisms for the two algebras. Construction validates idempotent
/// chaining and exact grading preservation of every arrow family (affine in
/// the family parameter, so two sample values suffice).
#[derive(Clone, Debug)]
pub struct DABimodule {
    pub name: String,
    pub out_alg: Alg,
    pub in_alg: Alg,
    pub generators: Vec<DAGenerator>,
    pub arrows: Vec<DeltaArrow>,
    pub out_hom: GradingHom,
    pub in_hom: GradingHom,
    /// For crossing bimodules: the quarter Alexander shift attached to the
    /// crossing, applied after the collapse to the m-dimensional grading.
    pub alexander_shift: Option<GradingVec>,
    by_source: Vec<Vec<usize>>,
}

impl DABimodule {
    pub fn new(
        name: impl Into<String>,
        out_alg: Alg,
        in_alg: Alg,
        generators: Vec<DAGenerator>,
        arrows: Vec<DeltaArrow>,
        out_hom: GradingHom,
        in_hom: GradingHom,
    ) -> Result<DABimodule, DaError> {
        let arrows = normalize_arrows(arrows);
        let mut m = DABimodule {
            name: name.into(),
            out_alg,
            in_alg,
            generators,
            arrows,
            out_hom,
            in_hom,
            alexander_shift: None,
            by_source: Vec::new(),
        };
        m.reindex();
        m.validate()?;
        Ok(m)
    }

    fn reindex(&mut self) {
        self.by_source = vec![Vec::new(); self.generators.len()];
        for (n, a) in self.arrows.iter().enumerate() {
            self.by_source[a.source].push(n);
        }
    }

    fn validate(&self) -> Result<(), DaError> {
        let mut names = std::collections::BTreeSet::new();
        let gdim = self.out_hom.target_dim();
        if self.in_hom.target_dim() != gdim {
            return Err(DaError::BadBimodule(
                "grading homs target different groups".into(),
            ));
        }
        if self.out_hom.source_dim() != self.out_alg.grading_dim()
            || self.in_hom.source_dim() != self.in_alg.grading_dim()
        {
            return Err(DaError::BadBimodule(
                "grading homs do not match the algebra grading groups".into(),
            ));
        }
        for g in &self.generators {
            if !names.insert(&g.name) {
                return Err(DaError::BadBimodule(format!("duplicate generator {}", g.name)));
            }
            if g.left_idem >= self.out_alg.vertex_count()
                || g.right_idem >= self.in_alg.vertex_count()
            {
                return Err(DaError::BadBimodule(format!("generator {} idempotent out of range", g.name)));
            }
            if g.grading.dim() != gdim {
                return Err(DaError::BadBimodule(format!("generator {} grading dimension", g.name)));
            }
        }
        for a in &self.arrows {
            self.validate_arrow(a)?;
        }
        Ok(())
    }

    fn validate_arrow(&self, a: &DeltaArrow) -> Result<(), DaError> {
        let src = self
            .generators
            .get(a.source)
            .ok_or_else(|| DaError::BadBimodule("arrow source out of range".into()))?;
        let tgt = self
            .generators
            .get(a.target)
            .ok_or_else(|| DaError::BadBimodule("arrow target out of range".into()))?;
        if a.output.is_powered() && !a.inputs.iter().any(ParamElem::is_powered) {
            return Err(DaError::BadBimodule(format!(
                "arrow {} -> {} has a powered output but no powered input",
                src.name, tgt.name
            )));
        }
        if tgt.hom_degree != src.hom_degree + a.inputs.len() as i64 - 1 {
            return Err(DaError::BadBimodule(format!(
                "arrow {} -> {} breaks the homological grading",
                src.name, tgt.name
            )));
        }
        let samples = if a.is_parametric() { vec![a.k_min, a.k_min + 1] } else { vec![a.k_min] };
        for k in samples {
            let out = a.output.value(&self.out_alg, k).ok_or_else(|| {
                DaError::BadBimodule(format!("arrow {} -> {}: bad output power", src.name, tgt.name))
            })?;
            out.validate(&self.out_alg.quiver)?;
            if out.start() != src.left_idem || out.end(&self.out_alg.quiver) != tgt.left_idem {
                return Err(DaError::BadBimodule(format!(
                    "arrow {} -> {}: output does not chain the left idempotents",
                    src.name, tgt.name
                )));
            }
            let mut at = src.right_idem;
            let mut in_grading = GradingVec::zero(self.in_alg.grading_dim());
            for pat in &a.inputs {
                let p = pat.value(&self.in_alg, k).ok_or_else(|| {
                    DaError::BadBimodule(format!("arrow {} -> {}: bad input power", src.name, tgt.name))
                })?;
                p.validate(&self.in_alg.quiver)?;
                if p.is_empty() {
                    return Err(DaError::BadBimodule(format!(
                        "arrow {} -> {}: input outside the augmentation ideal",
                        src.name, tgt.name
                    )));
                }
                if p.start() != at {
                    return Err(DaError::BadBimodule(format!(
                        "arrow {} -> {}: inputs do not chain the right idempotents",
                        src.name, tgt.name
                    )));
                }
                at = p.end(&self.in_alg.quiver);
                in_grading = in_grading.add(&p.grading(&self.in_alg.quiver))?;
            }
            if at != tgt.right_idem {
                return Err(DaError::BadBimodule(format!(
                    "arrow {} -> {}: inputs end at the wrong idempotent",
                    src.name, tgt.name
                )));
            }
            // refined-grading preservation through the two grading homs
            let lhs = src.grading.add(&self.in_hom.apply(&in_grading)?)?;
            let rhs = tgt
                .grading
                .add(&self.out_hom.apply(&out.grading(&self.out_alg.quiver))?)?;
            if lhs != rhs {
                return Err(DaError::BadBimodule(format!(
                    "arrow {} -> {} breaks the grading: {:?} vs {:?}",
                    src.name, tgt.name, lhs, rhs
                )));
            }
        }
        Ok(())
    }

    pub fn gen_id(&self, name: &str) -> Option<GenId> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn generator(&self, id: GenId) -> &DAGenerator {
        &self.generators[id]
    }

    pub fn arrows_from(&self, src: GenId) -> impl Iterator<Item = &DeltaArrow> {
        self.by_source[src].iter().map(|&n| &self.arrows[n])
    }

    pub fn is_concrete(&self) -> bool {
        !self.arrows.iter().any(DeltaArrow::is_parametric)
    }

    pub fn max_arity(&self) -> usize {
        self.arrows.iter().map(|a| a.inputs.len() + 1).max().unwrap_or(1)
    }

    /// True when some family has two or more inputs.
    pub fn has_higher_actions(&self) -> bool {
        self.arrows.iter().any(|a| a.inputs.len() >= 2)
    }

    /// `delta^1` on concrete input paths. The implicit unit action
    /// `delta^1_2(x, idempotent) = idempotent (x) x` is handled here; stored
    /// arrows only carry augmentation-ideal inputs.
    pub fn eval_delta_paths(&self, x: GenId, inputs: &[Path]) -> Vec<(Path, GenId)> {
        if inputs.len() == 1 && inputs[0].is_empty() {
            return if inputs[0].start() == self.generators[x].right_idem {
                vec![(Path::idempotent(self.generators[x].left_idem), x)]
            } else {
                vec![]
            };
        }
        if inputs.iter().any(Path::is_empty) {
            return vec![];
        }
        let mut out = Vec::new();
        'arrows: for a in self.arrows_from(x) {
            if a.inputs.len() != inputs.len() {
                continue;
            }
            let mut k: Option<i64> = None;
            for (pat, p) in a.inputs.iter().zip(inputs) {
                match pat.match_path(&self.in_alg, p) {
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
            let Some(raw) = a.output.value(&self.out_alg, k) else { continue };
            if let Some(nf) = self.out_alg.normal_form(&raw) {
                out.push((nf, a.target));
            }
        }
        out
    }

    /// `delta^1` on algebra elements, expanded multilinearly over monomials.
    /// Idempotent mismatches contribute zero.
    pub fn eval_delta(
        &self,
        x: GenId,
        inputs: &[AlgebraElement],
    ) -> Result<DeltaValue, DaError> {
        for e in inputs {
            if !std::sync::Arc::ptr_eq(e.algebra(), &self.in_alg) && *e.algebra() != self.in_alg {
                return Err(DaError::AlgebraMismatch("input not in the input algebra".into()));
            }
        }
        let mut val = DeltaValue::new();
        let mut tuple: Vec<Path> = Vec::with_capacity(inputs.len());
        self.eval_expand(x, inputs, &mut tuple, &mut val);
        Ok(val)
    }

    fn eval_expand(
        &self,
        x: GenId,
        rest: &[AlgebraElement],
        tuple: &mut Vec<Path>,
        val: &mut DeltaValue,
    ) {
        match rest.split_first() {
            None => {
                for (p, g) in self.eval_delta_paths(x, tuple) {
                    value_toggle(val, &self.out_alg, p, g);
                }
            }
            Some((e, tail)) => {
                for t in e.terms() {
                    tuple.push(t.clone());
                    self.eval_expand(x, tail, tuple, val);
                    tuple.pop();
                }
            }
        }
    }

    /// Expands families into concrete arrows: every instance whose inputs all
    /// have length <= `max_input_len` and whose parameter is <= k_min + k_cap.
    pub fn instances(&self, max_input_len: usize, k_cap: i64) -> Vec<ConcreteArrow> {
        let mut out = Vec::new();
        for a in &self.arrows {
            let ks: Vec<i64> = if a.is_parametric() {
                (a.k_min..=a.k_min + k_cap).collect()
            } else {
                vec![a.k_min]
            };
            for k in ks {
                let Some(output) = a.output.value(&self.out_alg, k) else { continue };
                let inputs: Option<Vec<Path>> =
                    a.inputs.iter().map(|pat| pat.value(&self.in_alg, k)).collect();
                let Some(inputs) = inputs else { continue };
                if inputs.iter().any(|p| p.len() > max_input_len) {
                    continue;
                }
                let Some(output) = self.out_alg.normal_form(&output) else { continue };
                out.push(ConcreteArrow { source: a.source, target: a.target, output, inputs });
            }
        }
        out.sort();
        out
    }

    /// Table equality after normalization (same generator data, same
    /// families up to GF(2) cancellation).
    pub fn table_eq(&self, other: &DABimodule) -> bool {
        self.out_alg == other.out_alg
            && self.in_alg == other.in_alg
            && self.generators == other.generators
            && self.arrows == other.arrows
    }

    /// Rebuilds the bimodule over algebras with the same quiver shape but
    /// different gradings, pushing generator gradings through `gen_map`.
    pub fn transport(
        &self,
        name: impl Into<String>,
        out_alg: Alg,
        in_alg: Alg,
        gen_map: &GradingHom,
        out_hom: GradingHom,
        in_hom: GradingHom,
    ) -> Result<DABimodule, DaError> {
        if out_alg.quiver.arrows.len() != self.out_alg.quiver.arrows.len()
            || in_alg.quiver.arrows.len() != self.in_alg.quiver.arrows.len()
        {
            return Err(DaError::AlgebraMismatch("quiver shapes differ".into()));
        }
        let generators = self
            .generators
            .iter()
            .map(|g| {
                Ok(DAGenerator { grading: gen_map.apply(&g.grading)?, ..g.clone() })
            })
            .collect::<Result<Vec<_>, DaError>>()?;
        DABimodule::new(name, out_alg, in_alg, generators, self.arrows.clone(), out_hom, in_hom)
    }

    /// Concrete copy with families expanded to the given bounds. The result
    /// is only a bounded model of a parametric bimodule; callers must label
    /// downstream results accordingly.
    pub fn concretize(&self, max_input_len: usize, k_cap: i64) -> Result<DABimodule, DaError> {
        let arrows = self
            .instances(max_input_len, k_cap)
            .into_iter()
            .map(|c| DeltaArrow::concrete(
                c.source,
                c.target,
                ParamElem::fixed(c.output),
                c.inputs.into_iter().map(ParamElem::fixed).collect(),
            ))
            .collect();
        DABimodule::new(
            format!("{}|k<={k_cap}", self.name),
            self.out_alg.clone(),
            self.in_alg.clone(),
            self.generators.clone(),
            arrows,
            self.out_hom.clone(),
            self.in_hom.clone(),
        )
    }

    pub fn describe_arrow(&self, a: &DeltaArrow) -> String {
        format!(
            "{} -[{} (x) ({})]-> {}",
            self.generators[a.source].name,
            a.output.display(&self.out_alg),
            a.inputs
                .iter()
                .map(|p| p.display(&self.in_alg))
                .collect::<Vec<_>>()
                .join(", "),
            self.generators[a.target].name
        )
    }
}

/// GF(2) normalization: identical family entries cancel in pairs.
fn normalize_arrows(mut arrows: Vec<DeltaArrow>) -> Vec<DeltaArrow> {
    arrows.sort();
    let mut out: Vec<DeltaArrow> = Vec::with_capacity(arrows.len());
    for a in arrows {
        if out.last() == Some(&a) {
            out.pop();
        } else {
            out.push(a);
        }
    }
    out
}
